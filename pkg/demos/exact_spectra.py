"""Exact adjacency eigenvalues, two ways, and the cosines they turn into."""

from qucwalk.cyclotomic import CycNumber, recognize_cos_angle
from qucwalk.spectra import gauss_sum_scaled, graph_spec, lambda_charsum, lambda_closed, spectrum_of

# the Gauss sum, kept exact in Q(zeta_p)
for p in (3, 5, 7, 13):
    print(p, complex(gauss_sum_scaled(p)))

spec = graph_spec(20)
for a in range(6):
    s, c = lambda_charsum(spec, a), lambda_closed(spec, a)
    print(f"a={a}  lambda={float(s):+.6f}  closed form agrees: {s == c}")

# mu = lambda / k, recognized as cos(p pi / q)
table = spectrum_of(20)
for row in table.distinct():
    print(f"{row.mu_float:+.6f}  cos({row.angle})")

# 2 cos(2 pi / 5) = zeta_5 + zeta_5^-1 is found without floating point guesswork
mu = (CycNumber.zeta(5) + CycNumber.zeta(5, -1)) / 2
print(recognize_cos_angle(mu))

# n = 7 gives K_7 and mu = -1/6, which is no such cosine
print([(r.mu_float, r.angle) for r in spectrum_of(7).distinct()])
