"""Squares of units and the connection sets V_n = Q_n u -Q_n."""

from qucwalk.znarith import connection_set, factorize, minus_one_in_Q, quadratic_units

for n in (5, 8, 10, 13, 20, 24, 25):
    Q = quadratic_units(n)
    V = connection_set(n)
    split = [minus_one_in_Q(p, t) for p, t in factorize(n)]
    print(f"n={n:>3}  Q_n={list(Q)}  V_n={list(V)}  -1 square per prime power: {split}")

# when -1 is a square at every prime power, Q_n is already symmetric and |V_n| = |Q_n|
print(len(quadratic_units(65)), len(connection_set(65)))   # 65 = 5 * 13: both split
print(len(quadratic_units(21)), len(connection_set(21)))   # 21 = 3 * 7: neither splits
