import json
import subprocess
import sys

import pytest

from lienil.checks import CATALOG, CheckRequest, CheckResult, emit_report, run_check
from lienil.cli import main
from lienil.scalars import FieldError


def _strip(obj):
    for o in obj:
        o.pop("elapsed_ms")
    return obj


def test_catalog_covers_every_statement():
    expected = {"identities", "theorem1", "latyshev", "lemma1_2", "lemma1_3", "eq1_3", "corollary1",
                "theorem2", "corollary2", "lemma2_1", "frobenius", "eq3_1", "theorem3", "theorem4",
                "corollary3", "sec4_1", "lemma4_1", "lemma4_2", "theorem5", "corollary4", "lemma5_1",
                "theorem6_arith", "theorem6_factor", "remark5", "kernel", "rank4_counterexample"}
    assert set(CATALOG) == expected


def test_documented_examples():
    assert run_check(CheckRequest("theorem1", {"m": 2, "n": 2, "max_total_degree": 6, "char": 0})).passed
    assert run_check("rank4_counterexample").status == "PASS"
    assert run_check("theorem6_arith", p=5, s_max=1000).passed


@pytest.mark.parametrize("name", ["corollary1", "lemma2_1", "eq3_1", "corollary4", "kernel"])
def test_other_checks_pass(name):
    assert run_check(name).passed


def test_report_schema():
    assert json.loads(emit_report([])) == []
    (obj,) = json.loads(emit_report([run_check("eq1_3")]))
    assert set(obj) >= {"check", "params", "status", "dims", "elapsed_ms"}
    assert obj["status"] == "PASS" and "counterexample" not in obj
    for row in obj["dims"]:
        assert set(row) >= {"multidegree", "lhs_dim", "rhs_dim"}
    fail = CheckResult("eq1_3", {}, "FAIL", [], "x*y - y*x")
    (obj,) = json.loads(emit_report([fail]))
    assert obj["counterexample"] == "x*y - y*x"
    assert "checks passed" in emit_report([fail], "text")


def test_failures_carry_counterexamples():
    r = run_check("frobenius", char=5, n=6)
    assert r.status == "FAIL" and r.counterexample
    from lienil.polytext import parse_poly
    assert not parse_poly(r.counterexample, 2).is_zero()


def test_deterministic_json():
    a = _strip(json.loads(emit_report([run_check("theorem2", n=3, max_deg=5), run_check("eq1_3")])))
    b = _strip(json.loads(emit_report([run_check("eq1_3"), run_check("theorem2", n=3, max_deg=5)])))
    assert a == b


def test_cap_exceeded_is_not_pass():
    r = run_check("theorem1", m=2, n=2, max_deg=7, degree_cap=5)
    assert r.status == "CAP_EXCEEDED"
    assert not r.passed


def test_parameter_errors():
    with pytest.raises(KeyError):
        run_check("no_such_check")
    with pytest.raises(FieldError):
        run_check("identities", char=3)
    with pytest.raises(ValueError):
        run_check("frobenius", char=5, q=5, n=8)
    with pytest.raises(ValueError):
        run_check("theorem2", rank=4, max_deg=3)
    with pytest.raises(ValueError):
        run_check("theorem1", max_deg=0)


def test_cli_exit_codes(capsys):
    assert main(["eq1_3"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out[0]["status"] == "PASS"
    assert main(["frobenius", "--char", "5", "--n", "6", "--format", "text"]) == 1
    assert "FAIL" in capsys.readouterr().out
    assert main(["identities", "--char", "3"]) == 2
    assert main(["--list"]) == 0
    assert "theorem6_factor" in capsys.readouterr().out
    with pytest.raises(SystemExit):
        main(["nonsense"])


def test_cli_param_extension(capsys):
    assert main(["theorem6_arith", "--param", "p=[5, 7]", "--param", "s_max=50"]) == 0
    (obj,) = json.loads(capsys.readouterr().out)
    assert obj["params"] == {"p": [5, 7], "s_max": 50}


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "lienil.cli", "eq3_1"], capture_output=True, text=True)
    assert p.returncode == 0
    assert json.loads(p.stdout)[0]["check"] == "eq3_1"


def test_all_with_worker_pool(monkeypatch, capsys):
    import lienil.cli as cli
    small = {k: CATALOG[k] for k in ("eq3_1", "identities", "theorem6_arith")}
    monkeypatch.setattr(cli, "CATALOG", small)
    monkeypatch.setenv(cli.THREADS_ENV, "2")
    assert cli.main(["--all"]) == 0
    out = json.loads(capsys.readouterr().out)
    # merged back in catalog order whatever the completion order
    assert [o["check"] for o in out] == ["identities", "eq3_1", "theorem6_arith"]
    monkeypatch.setenv(cli.THREADS_ENV, "many")
    with pytest.raises(SystemExit):
        cli._threads()
