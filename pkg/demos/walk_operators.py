"""The Grover walk operators, their structure, and the spectrum of U."""

import numpy as np

from qucwalk.cyclotomic import unit_order
from qucwalk.grover import build_operators, direct_u_spectrum, distinct_unit_values, mapped_u_spectrum
from qucwalk.spectra import graph_spec, spectrum_of

n = 16
ops = build_operators(graph_spec(n).adjacency_lists())
U, C, R = ops.dense("U"), ops.dense("C"), ops.dense("R")
I = np.eye(len(ops.arcs))
k = graph_spec(n).degree

print("arcs:", len(ops.arcs), " b1:", ops.b1, " bipartite:", ops.bipartite)
print("|U*U - I| =", np.abs(U.conj().T @ U - I).max())
print("|C^2 - I| =", np.abs(C @ C - I).max(), " |R^2 - I| =", np.abs(R @ R - I).max())
print("|P - A/k| =", np.abs(ops.dense("P") - ops.dense("A") / k).max())

# the eigenvalues of U sit at e^{+-i arccos mu}, plus +-1 from the cycle space
mapped = mapped_u_spectrum(spectrum_of(n), ops.b1, ops.bipartite)
direct = distinct_unit_values(direct_u_spectrum(ops))
for e in mapped:
    print(f"{e.value:.6f}   angle {e.angle}  order {unit_order(e.angle)}")
print("numeric eigenvalues:", len(direct), " predicted:", len(mapped))

# the period is the lcm of these orders
print(np.lcm.reduce([unit_order(e.angle) for e in mapped]))
print(np.abs(np.linalg.matrix_power(U, 8) - I).max())
