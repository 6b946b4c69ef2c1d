import csv
import io
import json
from pathlib import Path

import pytest

from soag.cli import main, parse_grid, parse_range
from soag.errors import ParseError
from soag.report import JobSpec, ResultCache, load_curve, paper_suite, run_job

CURVES = Path(__file__).resolve().parents[1] / "demos" / "curves"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_fa_family_A(capsys):
    code, out, _ = run(capsys, "fa", "--family", "A", "--q", "9", "--n", "2", "--l", "8", "--no-cache")
    d = json.loads(out)
    assert code == 0
    assert d["N"] == 153 and d["fA"] == "2*z + z^17" and d["fA_closed_form"] == "z^17 - z"
    assert d["degM"] == 144 and d["type"] == "TypeII"


def test_so_check_tightness_file(capsys):
    code, out, _ = run(capsys, "so-check", "--curve", str(CURVES / "tightness.json"), "--m", "26", "--no-cache")
    assert code == 0 and json.loads(out)["so_euclidean"] is False
    code, out, _ = run(capsys, "so-check", "--curve", str(CURVES / "tightness.json"), "--m", "25", "--no-cache")
    assert json.loads(out)["so_euclidean"] is True


def test_quantum_B_3_4_formula(capsys):
    code, out, _ = run(capsys, "quantum", "--family", "BHk", "--q", "3", "--k", "4", "--m", "538",
                       "--formula-only", "--no-cache")
    d = json.loads(out)
    assert code == 0
    assert (d["N"], d["k"], d["d_lb"]) == (6642, 5726, 378)
    assert d["params"] == "[[6642,5726,>=378]]_6561" and d["pure"] is True
    assert d["so_status"] == "bounds-only"


def test_quantum_hermitian_certified(capsys):
    code, out, _ = run(capsys, "quantum", "--family", "A", "--q", "9", "--n", "2", "--l", "8", "--m", "9",
                       "--flavor", "hermitian", "--wmax", "3", "--no-cache")
    d = json.loads(out)
    assert d["params"] == "[[153,147,3]]_9" and d["so_status"] == "matrix"


def test_info_and_points_csv(capsys, tmp_path):
    code, out, _ = run(capsys, "info", "--family", "C", "--q", "9", "--l", "5", "--no-cache")
    d = json.loads(out)
    assert d["N"] == 369 and d["predicted_check"]["all_pass"]["pass"]
    target = tmp_path / "pts.csv"
    code, _, _ = run(capsys, "points", "--family", "B_Hk", "--q", "3", "--k", "1", "--out", str(target))
    rows = target.read_text().splitlines()
    assert code == 0 and rows[0] == "x;y" and len(rows) == 13


def test_code_dump_roundtrip(capsys, tmp_path):
    from soag.linalg import load_matrix

    dump = tmp_path / "g.txt"
    code, out, _ = run(capsys, "code", "--family", "A", "--q", "3", "--n", "2", "--l", "4", "--m", "6",
                       "--dump-genmat", str(dump), "--no-cache")
    d = json.loads(out)
    M = load_matrix(dump.read_text())
    assert M.shape == (d["basis_size"], d["N"])


def test_exit_codes(capsys):
    assert run(capsys, "info", "--family", "A", "--q", "9", "--n", "2", "--l", "3")[0] == 2  # 3 | l
    assert run(capsys, "info", "--family", "A", "--q", "6", "--n", "2", "--l", "5")[0] == 2
    assert run(capsys, "info", "--no-cache")[0] == 1
    assert run(capsys, "so-check", "--family", "A", "--q", "3", "--n", "2", "--l", "4", "--no-cache")[0] == 1
    assert run(capsys, "info", "--curve", "/nonexistent.json")[0] == 1
    assert run(capsys, "quantum", "--family", "A", "--q", "3", "--n", "2", "--l", "4", "--m", "3",
               "--wmax", "9", "--no-cache")[0] == 1
    with pytest.raises(SystemExit) as exc:
        main(["bogus-task"])
    assert exc.value.code == 1


def test_parse_helpers():
    assert parse_range("3..5") == (3, 5) and parse_range("7") == (7, 7)
    assert parse_grid(["q=3,9", "l=2..4"]) == {"q": [3, 9], "l": [2, 3, 4]}
    with pytest.raises(ParseError):
        parse_range("a..b")
    with pytest.raises(ParseError):
        parse_grid(["q"])
    with pytest.raises(ParseError):
        JobSpec(task="so-check", m=1, m_range=(1, 2))


def test_determinism(capsys):
    argv = ["info", "--family", "A", "--q", "4", "--n", "2", "--l", "3", "--no-cache"]
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]
    j1 = JobSpec(task="fa", curve={"family": "A", "q": 9, "n": 2, "l": 8})
    j2 = JobSpec(task="fa", curve={"l": 8, "n": 2, "q": 9, "family": "A"})
    assert j1.digest() == j2.digest()


def test_cache_hit_and_recompute(tmp_path):
    cache = ResultCache(tmp_path / "c.jsonl")
    job = JobSpec(task="so-check", curve={"family": "C", "q": 5, "l": 3}, m_range=(0, 6))
    first = run_job(job, cache)
    hit = run_job(job, cache)
    fresh = run_job(job, None)
    assert not first.cached and hit.cached
    assert hit.output == first.output == fresh.output
    assert len((tmp_path / "c.jsonl").read_text().splitlines()) == 1


def test_cache_env(capsys, tmp_path, monkeypatch):
    path = tmp_path / "env.jsonl"
    monkeypatch.setenv("SOAG_CACHE", str(path))
    argv = ["fa", "--family", "A", "--q", "3", "--n", "2", "--l", "2"]
    out1 = run(capsys, *argv)[1]
    out2 = run(capsys, *argv)[1]
    assert out1 == out2 and len(path.read_text().splitlines()) == 1


def _csv_rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_sweep_includes_A_2_9_8(capsys):
    code, out, _ = run(capsys, "sweep", "--family", "A", "--grid", "q=3,9", "--grid", "n=2",
                       "--grid", "l=2..13", "--no-cache")
    rows = _csv_rows(out)
    assert code == 0
    hit = [r for r in rows if r["source_curve"] == "A(q=9,n=2,l=8)" and r["m"] == "31"]
    assert hit and hit[0]["so_status"] == "matrix"
    errs = [r for r in rows if r["error"]]
    assert all(r["error"] == "ERROR:HypothesisViolated" for r in errs)
    good = [r for r in rows if not r["error"]]
    keys = [(int(r["N"]), -int(r["k"])) for r in good]
    assert keys == sorted(keys)


def test_sweep_parallel_is_identical(capsys):
    argv = ["sweep", "--family", "C", "--grid", "q=3,5,7", "--grid", "l=1..4", "--no-cache"]
    serial = run(capsys, *argv)[1]
    parallel = run(capsys, *argv, "--jobs", "3")[1]
    assert serial == parallel


def test_sweep_C_27_7_row(capsys):
    code, out, _ = run(capsys, "sweep", "--family", "C", "--q", "27", "--l", "7", "--m-range", "313..315",
                       "--formula-only", "--no-cache")
    rows = _csv_rows(out)
    r = [r for r in rows if r["m"] == "313"][0]
    assert (r["N"], r["k"], r["d_lb"]) == ("4941", "4469", "159")


def test_sweep_empty_grid_has_header(capsys):
    code, out, _ = run(capsys, "sweep", "--family", "A", "--grid", "q=3", "--grid", "n=2", "--grid", "l=5..4",
                       "--no-cache")
    assert code == 0
    assert out.splitlines() == ["source_curve,flavor,m,N,k,d_lb,d_certified,pure,gv,jx_bound,so_status,error"]


def test_load_curve_errors():
    with pytest.raises(ParseError):
        load_curve({"field": {"p": 3}, "F": [0, 1]})
    with pytest.raises(ParseError):
        load_curve({"family": "A", "q": 3, "n": 2, "l": 4, "zz": 1})
    with pytest.raises(ParseError):
        load_curve({"field": {"p": 3}, "F": {"x": 1}, "H": [1]})


def test_reproduction_suite_rows():
    rows = {r["id"]: r for r in paper_suite()}
    for rid in ("exam:max", "A1", "tight-26", "table1-64-136"):
        assert rows[rid]["verdict"] == "PASS", rows[rid]


def test_reproduction_suite_exit_code_follows_verdicts(capsys, tmp_path):
    ok = tmp_path / "ok.json"
    ok.write_text(json.dumps({"version": 1, "rows": [
        {"id": "t", "check": "quantum", "curve": {"family": "A", "q": 9, "n": 2, "l": 10},
         "m": 193, "formula_only": True, "expected": {"params": "[[729,413,>=123]]_81"}}]}))
    assert run(capsys, "paper-suite", "--manifest", str(ok))[0] == 0
    bad = tmp_path / "bad.json"
    bad.write_text(ok.read_text().replace("413", "414"))
    code, out, _ = run(capsys, "paper-suite", "--manifest", str(bad))
    assert code == 3 and out.startswith("FAIL")


def test_malformed_manifest_row_fails_cleanly():
    rows = paper_suite({"version": 1, "rows": [{"id": "x", "check": "curve", "expected": {"N": 1}}]})
    assert rows[0]["verdict"] == "FAIL" and "curve" in rows[0]["computed"]["error"]
