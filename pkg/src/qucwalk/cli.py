"""Command-line front end.

Verbs: ``classify``, ``sweep``, ``spectrum``, ``simulate``, ``operators``.
Exit codes: 0 success, 2 usage error, 3 internal-consistency failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from .classify import SIM_CUTOFF, ClassificationReport, classify_report
from .errors import ConsistencyError
from .grover import (
    PST_TOL,
    build_operators,
    dump_operator_csv,
    vertex_state,
)
from .spectra import discriminant_spectrum, graph_spec

EXIT_USAGE = 2
EXIT_CONSISTENCY = 3

SWEEP_CSV_HEADER = (
    "n",
    "degree",
    "bipartite",
    "b1",
    "periodic",
    "period",
    "paper_periodic",
    "paper_period",
    "pst",
    "pst_tau",
    "pst_partner",
    "paper_pst",
    "periodic_matches_paper",
    "period_matches_paper",
    "pst_matches_paper",
    "simulation_confirms",
)


class UsageError(Exception):
    pass


def _modulus(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if n < 2:
        raise argparse.ArgumentTypeError(f"n must be >= 2, got {n}")
    return n


def _add_format(p: argparse.ArgumentParser, choices=("text", "json", "csv")) -> None:
    p.add_argument("--format", choices=choices, default="text")
    for c in choices[1:]:
        p.add_argument(f"--{c}", dest="format", action="store_const", const=c, help=f"same as --format {c}")


def _add_sim(p: argparse.ArgumentParser) -> None:
    p.add_argument("--sim-cutoff", type=int, default=SIM_CUTOFF, help="largest n simulated with matrices (default %(default)s)")
    p.add_argument("--no-simulate", action="store_true", help="skip the matrix cross-checks")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qucwalk", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("classify", help="periodicity, period and PST for one n")
    p.add_argument("n", type=_modulus)
    _add_format(p, ("text", "json"))
    _add_sim(p)

    p = sub.add_parser("sweep", help="classify every n in lo..hi")
    p.add_argument("lo", type=_modulus)
    p.add_argument("hi", type=_modulus)
    _add_format(p)
    _add_sim(p)

    p = sub.add_parser("spectrum", help="per-index eigenvalue table")
    p.add_argument("n", type=_modulus)
    _add_format(p)

    p = sub.add_parser("simulate", help="run the Grover walk from a vertex-type state")
    p.add_argument("n", type=_modulus)
    p.add_argument("--source", type=int, default=0)
    p.add_argument("--target", type=int, default=None)
    p.add_argument("--steps", type=int, required=True)
    _add_format(p, ("text", "json"))

    p = sub.add_parser("operators", help="dump U and P as CSV")
    p.add_argument("n", type=_modulus)
    p.add_argument("--dump", type=Path, required=True, help="output directory")
    return parser


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def render_text(report: ClassificationReport) -> str:
    lines = [
        f"n = {report.n}: degree {report.degree}, connection set {list(report.connection_set)}",
        f"b1 = {report.b1}, bipartite = {report.bipartite}",
        "distinct discriminant eigenvalues:",
    ]
    for mu, ang in report.mu:
        lines.append(f"  {_fmt(mu):>16}  " + (f"cos({ang.p}pi/{ang.q})" if ang else "not a rational-angle cosine"))
    if report.periodic:
        head = f"periodic, period {report.period}"
    else:
        head = "aperiodic"
    tail = f"PST at tau={report.pst.tau} to vertex {report.pst.partner}" if report.pst else "no PST"
    lines.append(f"{head}; {tail}")
    pp = "inf" if report.paper_period is None else report.paper_period
    lines.append(f"published: periodic={report.paper_periodic}, period={pp}, PST={report.paper_pst}")
    disagreements = [k for k, v in report.flags.items() if v is False]
    if disagreements:
        lines.append("DISAGREES with published values: " + ", ".join(disagreements))
    if report.flags.get("simulation_confirms") is True:
        lines.append("simulation confirms U^period = I and the PST verdict")
    return "\n".join(lines)


def sweep_row(report: ClassificationReport) -> list:
    d = report.to_dict()
    pst = d["pst"] or {}
    f = d["flags"]
    return [
        d["n"],
        d["degree"],
        d["bipartite"],
        d["b1"],
        d["periodic"],
        d["period"] if d["period"] is not None else "",
        d["paper_periodic"],
        d["paper_period"] if d["paper_period"] is not None else "",
        d["pst"] is not None,
        pst.get("tau", ""),
        pst.get("partner", ""),
        d["paper_pst"],
        f["periodic_matches_paper"],
        f["period_matches_paper"],
        f["pst_matches_paper"],
        "" if f["simulation_confirms"] is None else f["simulation_confirms"],
    ]


def _sweep(args, out) -> None:
    if args.lo > args.hi:
        raise UsageError(f"empty range {args.lo}..{args.hi}")
    n_periodic = n_pst = n_disagree = 0
    writer = csv.writer(out, lineterminator="\n") if args.format == "csv" else None
    if writer:
        writer.writerow(SWEEP_CSV_HEADER)
    for n in range(args.lo, args.hi + 1):
        rep = classify_report(n, simulate=not args.no_simulate, sim_cutoff=args.sim_cutoff)
        n_periodic += rep.periodic
        n_pst += rep.pst is not None
        n_disagree += any(v is False for v in rep.flags.values())
        if writer:
            writer.writerow(sweep_row(rep))
        elif args.format == "json":
            out.write(rep.to_json() + "\n")
        else:
            period = rep.period if rep.period is not None else "-"
            pst = f"tau={rep.pst.tau}" if rep.pst else "-"
            mark = "  *" if any(v is False for v in rep.flags.values()) else ""
            out.write(f"{n:>5}  periodic={str(rep.periodic):<5}  period={str(period):<4}  pst={pst}{mark}\n")
    summary = (
        f"summary: {args.hi - args.lo + 1} graphs, {n_periodic} periodic, "
        f"{n_pst} with PST, {n_disagree} disagreeing with published values"
    )
    # machine-readable formats keep stdout clean
    print(summary, file=out if args.format == "text" else sys.stderr)


def _spectrum(args, out) -> None:
    table = discriminant_spectrum(graph_spec(args.n))
    if args.format == "csv":
        out.write(table.to_csv())
    elif args.format == "json":
        rows = [
            {
                "a": r.a,
                "lambda_float_re": float(_fmt(r.lambda_float)),
                "mu_float": float(_fmt(r.mu_float)),
                "angle_p": r.angle.p if r.angle else None,
                "angle_q": r.angle.q if r.angle else None,
            }
            for r in table
        ]
        out.write(json.dumps({"n": table.n, "degree": table.degree, "rows": rows}) + "\n")
    else:
        out.write(f"n = {table.n}, degree {table.degree}\n")
        for r in table:
            ang = f"cos({r.angle.p}pi/{r.angle.q})" if r.angle else "-"
            out.write(f"{r.a:>5}  lambda={_fmt(r.lambda_float):>16}  mu={_fmt(r.mu_float):>16}  {ang}\n")


def _simulate(args, out) -> None:
    n = args.n
    for name in ("source", "target"):
        v = getattr(args, name)
        if v is not None and not 0 <= v < n:
            raise UsageError(f"{name} vertex {v} out of range for n={n}")
    if args.steps < 0:
        raise UsageError("steps must be >= 0")
    if args.target is not None and args.target == args.source:
        raise UsageError("target must differ from source")
    ops = build_operators(graph_spec(n).adjacency_lists())
    state = vertex_state(ops, args.source)
    target = None if args.target is None else vertex_state(ops, args.target)
    termini = ops.arcs.termini
    records = []
    for t in range(args.steps + 1):
        if t:
            state = ops.U @ state
        if target is not None:
            overlap = abs(np.vdot(target, state)) ** 2
            records.append({"t": t, "overlap": overlap, "perfect": bool(t > 0 and overlap >= 1 - PST_TOL)})
        else:
            probs = np.bincount(termini, weights=np.abs(state) ** 2, minlength=n)
            records.append({"t": t, "distribution": probs.tolist()})
    hits = [r["t"] for r in records if r.get("perfect")]
    if args.format == "json":
        payload = {"n": n, "source": args.source, "target": args.target, "steps": records, "perfect_at": hits}
        out.write(json.dumps(payload) + "\n")
        return
    for r in records:
        if target is not None:
            flag = "  <- perfect" if r["perfect"] else ""
            out.write(f"t={r['t']:>4}  overlap={_fmt(r['overlap'])}{flag}\n")
        else:
            out.write(f"t={r['t']:>4}  " + " ".join(_fmt(p) for p in r["distribution"]) + "\n")
    if target is not None:
        out.write(f"perfect transfer at t = {hits}\n" if hits else "no step reaches overlap 1\n")


def _operators(args, out) -> None:
    ops = build_operators(graph_spec(args.n).adjacency_lists())
    args.dump.mkdir(parents=True, exist_ok=True)
    dump_operator_csv(ops.U, args.dump / "U.csv")
    dump_operator_csv(ops.P, args.dump / "P.csv")
    with open(args.dump / "arcs.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(("index", "origin", "terminus"))
        for i, (o, t) in enumerate(ops.arcs.arcs):
            w.writerow((i, o, t))
    out.write(f"wrote U.csv, P.csv, arcs.csv ({len(ops.arcs)} arcs) to {args.dump}\n")


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.verb == "classify":
            rep = classify_report(args.n, simulate=not args.no_simulate, sim_cutoff=args.sim_cutoff)
            out.write((rep.to_json() if args.format == "json" else render_text(rep)) + "\n")
        elif args.verb == "sweep":
            _sweep(args, out)
        elif args.verb == "spectrum":
            _spectrum(args, out)
        elif args.verb == "simulate":
            _simulate(args, out)
        elif args.verb == "operators":
            _operators(args, out)
    except UsageError as exc:
        print(f"qucwalk {args.verb}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConsistencyError as exc:
        print(f"qucwalk: internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    return 0


if __name__ == "__main__":
    sys.exit(main())
