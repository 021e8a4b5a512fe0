"""Perfect state transfer between antipodal vertices."""

import numpy as np

from qucwalk.classify import classify_report
from qucwalk.grover import build_operators, evolve, vertex_state
from qucwalk.spectra import graph_spec

ops = build_operators(graph_spec(20).adjacency_lists())
start, target = vertex_state(ops, 0), vertex_state(ops, 10)

for t in range(0, 21):
    overlap = abs(np.vdot(target, evolve(ops, start, t))) ** 2
    print(f"t={t:>2}  |<10|U^t|0>|^2 = {overlap:.6f}" + ("  perfect" if overlap > 1 - 1e-8 else ""))

rep = classify_report(20)
print(rep.pst)

# odd n never transfers perfectly, even when periodic
print(classify_report(9).pst, classify_report(27).pst)
print("PST for n <= 60:", [n for n in range(2, 61) if classify_report(n, simulate=False).pst])
