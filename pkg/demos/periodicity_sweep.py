"""Which graphs are periodic, with what period, compared to the published table."""

from qucwalk.classify import classify_report

rows = [classify_report(n, simulate=False) for n in range(2, 101)]
periodic = [r for r in rows if r.periodic]
print("periodic n <= 100:", [r.n for r in periodic])

for r in periodic:
    note = "" if r.flags["period_matches_paper"] else "   <- table says %s" % r.paper_period
    print(f"n={r.n:>3}  period={r.period:>3}{note}")

# small cases are plain cycles (3, 5, 6, 10): U just rotates arcs, so the period is n
rep = classify_report(6)
print(rep.period, rep.paper_period, rep.flags)
