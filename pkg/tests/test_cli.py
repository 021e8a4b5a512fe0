import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from qucwalk.cli import SWEEP_CSV_HEADER, main
from qucwalk.errors import ConsistencyError

PST_SET = {2, 4, 6, 8, 10, 12, 20, 24}


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_classify_json():
    code, text = run("classify", "20", "--json")
    assert code == 0
    d = json.loads(text)
    assert d["period"] == 20
    assert (d["pst"]["tau"], d["pst"]["partner"]) == (10, 10)
    assert json.dumps(json.loads(text)) == text.strip()


def test_classify_text():
    code, text = run("classify", "7")
    assert code == 0 and "aperiodic; no PST" in text


def test_classify_text_flags_disagreement():
    code, text = run("classify", "10")
    assert code == 0 and "period_matches_paper" in text


@pytest.mark.parametrize("argv", [("classify", "1"), ("classify", "x"), ("sweep", "9", "3"), ("bogus",), ()])
def test_usage_errors(argv, capsys):
    code, _ = run(*argv)
    assert code == 2


def test_sweep_csv():
    code, text = run("sweep", "2", "30", "--csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(text)))
    assert tuple(rows[0].keys()) == SWEEP_CSV_HEADER
    assert len(rows) == 29
    assert {int(r["n"]) for r in rows if r["pst"] == "True"} == PST_SET & set(range(2, 31))


def test_sweep_single():
    code, text = run("sweep", "5", "5", "--json")
    recs = [json.loads(line) for line in text.splitlines()]
    assert len(recs) == 1
    assert recs[0]["period"] == 5 and recs[0]["paper_period"] == 20
    assert recs[0]["flags"]["period_matches_paper"] is False


def test_sweep_summary_counts(capsys):
    code, text = run("sweep", "2", "60", "--no-simulate")
    summary = text.strip().splitlines()[-1]
    assert summary.startswith("summary: 59 graphs, 20 periodic, 8 with PST")


def test_sweep_equals_single_runs():
    _, swept = run("sweep", "10", "16", "--json")
    singles = [run("classify", str(n), "--json")[1] for n in range(10, 17)]
    assert swept == "".join(singles)


def test_spectrum_formats():
    code, text = run("spectrum", "9", "--csv")
    rows = list(csv.reader(io.StringIO(text)))
    assert code == 0 and len(rows) == 10
    assert rows[4][:3] == ["3", "-3", "-0.5"]
    d = json.loads(run("spectrum", "9", "--json")[1])
    assert d["degree"] == 6 and d["rows"][3]["angle_q"] == 3
    assert "cos(2pi/3)" in run("spectrum", "9")[1]


@pytest.mark.parametrize("n, target, steps, hit", [(20, 10, 20, [10]), (6, 3, 6, [3]), (9, 4, 24, [])])
def test_simulate_overlap(n, target, steps, hit):
    code, text = run("simulate", str(n), "--source", "0", "--target", str(target), "--steps", str(steps), "--json")
    d = json.loads(text)
    assert code == 0
    assert d["perfect_at"][: len(hit)] == hit
    if not hit:
        assert max(s["overlap"] for s in d["steps"][1:]) < 1 - 1e-8


def test_simulate_text():
    _, text = run("simulate", "6", "--source", "0", "--target", "3", "--steps", "6")
    assert "t=   3  overlap=1  <- perfect" in text


def test_simulate_distribution():
    _, text = run("simulate", "8", "--steps", "3", "--json")
    d = json.loads(text)
    for step in d["steps"]:
        assert sum(step["distribution"]) == pytest.approx(1)
    assert d["steps"][0]["distribution"][0] == pytest.approx(1)


@pytest.mark.parametrize(
    "argv",
    [("simulate", "6", "--source", "6", "--steps", "2"), ("simulate", "6", "--target", "0", "--steps", "2"), ("simulate", "6", "--steps", "-1")],
)
def test_simulate_usage_errors(argv):
    assert run(*argv)[0] == 2


def test_operators_dump(tmp_path):
    code, text = run("operators", "5", "--dump", str(tmp_path / "out"))
    assert code == 0
    with open(tmp_path / "out" / "U.csv") as fh:
        U = np.array([[complex(*map(float, c.split(","))) for c in row] for row in csv.reader(fh)])
    assert U.shape == (10, 10)
    assert np.allclose(U.conj().T @ U, np.eye(10))
    with open(tmp_path / "out" / "arcs.csv") as fh:
        arcs = list(csv.reader(fh))
    assert arcs[0] == ["index", "origin", "terminus"] and arcs[1] == ["0", "0", "1"]
    assert (tmp_path / "out" / "P.csv").exists()


def test_consistency_failure_exit_code(monkeypatch):
    import qucwalk.cli as cli

    def broken(*a, **k):
        raise ConsistencyError("forced")

    monkeypatch.setattr(cli, "classify_report", broken)
    assert run("classify", "12")[0] == 3


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qucwalk", "classify", "4", "--json"], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["period"] == 4
    proc = subprocess.run([sys.executable, "-m", "qucwalk", "classify", "1"], capture_output=True, text=True)
    assert proc.returncode == 2
