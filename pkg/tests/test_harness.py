import json

import pytest

from tournkit.core import DELTA_PLUS, format_tk, make_tournament, parse_tk, write_tk
from tournkit.errors import TournamentError
from tournkit.families import enumerate_canonical, write_catalog
from tournkit.harness.cli import main
from tournkit.harness.report import VIOLATION_CAP, Report, map_checks, violation
from tournkit.harness.suites import SUITE_ORDER, SUITES, run_suite

SCHEMA = ["suite", "params", "instances_checked", "violations", "runtime_ms", "deterministic"]


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen_prints_hex(capsys):
    code, out, _ = run_cli(capsys, "gen", "delta_plus", "--n", "4")
    assert code == 0 and out == "n=4 bits=bc\n"


def test_gen_writes_file(capsys, tmp_path):
    path = tmp_path / "o5.tk"
    assert run_cli(capsys, "gen", "O_n", "--n", "5", "--out", str(path))[0] == 0
    assert parse_tk(path.read_text()).bits == "1" * 10


def test_gen_inconsistent_n_is_usage_error(capsys):
    code, _, err = run_cli(capsys, "gen", "C3", "--n", "5")
    assert code == 2 and "error" in err


def test_analyze_almost_transitive(capsys, tmp_path):
    path = tmp_path / "almost4.tk"
    write_tk(path, make_tournament(4, "110111"))
    code, out, _ = run_cli(capsys, "analyze", "--in", str(path))
    assert code == 0
    lines = out.splitlines()
    assert "P(T): 0|1,2|3" in lines
    assert any(ln.startswith("quotient: C3") for ln in lines)
    assert "shape: almost_transitive" in lines


def test_analyze_missing_file(capsys, tmp_path):
    assert run_cli(capsys, "analyze", "--in", str(tmp_path / "nope.tk"))[0] == 2


def test_usage_errors(capsys):
    assert run_cli(capsys)[0] == 2
    assert run_cli(capsys, "verify")[0] == 2
    assert run_cli(capsys, "verify", "no-such-suite")[0] == 2
    assert run_cli(capsys, "verify", "remark7", "--trials", "5")[0] == 2
    assert run_cli(capsys, "enumerate", "--n", "3")[0] == 2


def test_verify_list_covers_every_suite(capsys):
    code, out, _ = run_cli(capsys, "verify", "--list")
    assert code == 0
    names = [ln.split()[0] for ln in out.splitlines()]
    assert names == SUITE_ORDER
    assert len(set(names)) == len(SUITES) == 24


def test_verify_gallai_json(capsys):
    code, out, _ = run_cli(capsys, "verify", "gallai", "--n", "7", "--mode", "exhaustive",
                           "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert list(d) == SCHEMA
    assert d["instances_checked"] == 456 and d["violations"] == []
    assert d["deterministic"] is True and isinstance(d["runtime_ms"], int)


def test_verify_with_catalog_file(capsys, tmp_path):
    cat = tmp_path / "cat6.tkc"
    write_catalog(cat, enumerate_canonical(6))
    code, out, _ = run_cli(capsys, "verify", "prop-degre", "--n", "6", "--catalog", str(cat),
                           "--format", "json", "--omit-timing")
    assert code == 0
    assert json.loads(out)["runtime_ms"] is None


def test_enumerate_and_omega_cli(capsys, tmp_path):
    for k in (7, 8):
        code, out, _ = run_cli(capsys, "enumerate", "--n", str(k), "--out",
                               str(tmp_path / f"cat{k}.tkc"))
        assert code == 0
    assert "count=6880" in out
    code, out, _ = run_cli(capsys, "omega", "--m", "9", "--catalog-dir", str(tmp_path))
    assert code == 0
    d = json.loads(out)
    assert d["members"] == [] and "note" in d


def test_omega_missing_catalog(capsys, tmp_path):
    code, _, err = run_cli(capsys, "omega", "--m", "9", "--catalog-dir", str(tmp_path))
    assert code == 2 and "enumerate" in err


def test_exit_code_one_on_violations(capsys, monkeypatch):
    import tournkit.harness.cli as cli

    def fake(*args, **kwargs):
        return Report("gallai", {}, 1, [violation(DELTA_PLUS, "x", "y")])

    monkeypatch.setattr(cli, "run_suite", fake)
    code, out, _ = run_cli(capsys, "verify", "gallai")
    assert code == 1 and "FAIL" in out and format_tk(DELTA_PLUS) in out


def test_report_caps_violations():
    vs = [violation(f"n=2 bits={i:x}", "a", "b") for i in range(VIOLATION_CAP + 5)]
    r = Report("s", {"n": 2}, 200, vs)
    assert len(r.to_dict()["violations"]) == VIOLATION_CAP
    assert "... 5 more" in r.to_text()
    assert not r.passed
    assert Report("s", {}, 1, []).passed


def test_violation_instances_round_trip():
    v = violation(DELTA_PLUS, "e", "o")
    assert parse_tk(v.instance) == DELTA_PLUS


def _square(x):
    return 1, ([violation("n=1 bits=", x, x * x)] if x % 3 == 0 else [])


def test_map_checks_independent_of_jobs():
    one = map_checks(_square, range(40), jobs=1)
    two = map_checks(_square, range(40), jobs=2)
    assert one == two and one[0] == 40 and len(one[1]) == 14


def test_run_suite_errors():
    with pytest.raises(TournamentError):
        run_suite("nope")
    with pytest.raises(TournamentError):
        run_suite("gallai", {"bogus": 1})


def test_run_suite_examples():
    r = run_suite("inversion", {"n": 5})
    assert r.passed and r.instances_checked > 0
    r = run_suite("gallai", {"n": 7, "mode": "exhaustive"})
    assert r.instances_checked == 456 and r.passed


def test_random_suite_reports_are_reproducible():
    a = run_suite("moon", {"trials": 50, "seed": 3}, timing=False)
    b = run_suite("moon", {"trials": 50, "seed": 3}, timing=False)
    assert a.to_json() == b.to_json()
    c = run_suite("moon", {"trials": 50, "seed": 4}, timing=False)
    assert c.params["seed"] == 4


def test_eight_vertex_reports_its_coverage():
    r = run_suite("eight-vertex", {"trials": 20, "seed": 1})
    assert r.passed
    assert "not exhaustive" in r.params["coverage"]
