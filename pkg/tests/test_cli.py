import io
import json
import subprocess
import sys

import pytest

from bunmotive.cli import main
from bunmotive.motive_ring import canonical_json, from_json
from bunmotive.report import VerificationReport


def run(*argv, stdin=None):
    out, err = io.StringIO(), io.StringIO()
    if stdin is not None:
        old, sys.stdin = sys.stdin, io.StringIO(stdin)
    try:
        code = main(list(argv), out, err)
    finally:
        if stdin is not None:
            sys.stdin = old
    return code, out.getvalue(), err.getvalue()


def test_bun_text_example():
    code, out, _ = run("bun", "--group", "A1-sc", "--curve", "genus=0", "--floor", "-9", "--format", "text")
    assert code == 0
    assert out.strip() == "L^-3 + L^-4 + 2 L^-5 + 2 L^-6 + 3 L^-7 + 3 L^-8 + 4 L^-9 + O(dim<-9)"


def test_verify_json_example():
    code, out, _ = run("verify", "--suite", "p1", "--group", "G2-sc", "--floor", "-12", "--format", "json")
    assert code == 0
    reports = json.loads(out)
    assert reports and all(r["equal"] for r in reports)
    assert reports[0]["inputs"]["group"] == "G2-sc"


def test_zeta_count_example():
    code, out, _ = run("zeta", "--curve", "fq:q=2,counts=[3]", "--special", "2", "--realization", "count:q=2")
    assert (code, out.strip()) == (0, "3")


@pytest.mark.parametrize(
    "argv",
    [
        ("bun", "--group", "A2", "--curve", "genus=1", "--floor", "-12", "--format", "json"),
        ("bun", "--group", "A1-adjoint", "--curve", "genus=2", "--format", "json"),
        ("zeta", "--curve", "genus=1", "--special", "3", "--format", "json"),
        ("group", "--group", "B3", "--floor", "-12", "--format", "json"),
        ("verify", "--suite", "weyl", "--group", "A2,G2", "--format", "json"),
        ("bun", "--group", "A1", "--curve", "genus=1", "--realization", "poincare", "--format", "json"),
    ],
)
def test_json_output_round_trips(argv):
    code, out, _ = run(*argv)
    assert code == 0
    text = out.strip()
    assert canonical_json(json.loads(text)) == text
    data = json.loads(text)
    if isinstance(data, dict) and data.get("kind") in ("series", "closed"):
        assert from_json(text).to_json() == text
    if isinstance(data, list) and data and "check" in data[0]:
        for rep in data:
            blob = canonical_json(rep)
            assert VerificationReport.from_json(blob).to_json() == blob


def test_realize_from_stdin():
    _, series, _ = run("bun", "--group", "A1", "--curve", "genus=0", "--floor", "-20", "--format", "json")
    code, out, _ = run("realize", "--realization", "count:q=2", stdin=series)
    # sum_{n <= 17} (floor(n/2) + 1) 2^(-3-n)
    assert code == 0 and out.startswith("349515/1048576 (+/- ")
    _, closed, _ = run("bun", "--group", "A1", "--curve", "genus=0", "--format", "json")
    code, out, _ = run("realize", "--realization", "count:q=2", stdin=closed)
    assert (code, out.strip()) == (0, "1/3")
    code, out, _ = run("realize", "--realization", "poincare", stdin=closed)
    assert out.strip() == "(t^-6) / (1 - t^-2 - t^-4 + t^-6)"


def test_bun_realizations():
    code, out, _ = run("bun", "--group", "A1", "--curve", "fq:q=2,counts=[3]", "--realization", "count:q=2")
    assert (code, out.strip()) == (0, "3")
    code, out, _ = run("bun", "--group", "A1", "--curve", "P1", "--floor", "-12", "--stratification")
    assert out.startswith("L^-3 + L^-4 + 2 L^-5")
    code, out, _ = run("bun", "--group", "A1", "--curve", "genus=1", "--stratification", "--floor", "-4")
    assert code == 2


def test_group_text():
    code, out, _ = run("group", "--group", "G2")
    assert code == 0
    assert "dim: 14" in out and "degrees: 2, 6" in out


def test_verify_with_config_file(tmp_path):
    code, _, err = run("verify", "--suite", "sln", "--n", "2")
    assert code == 2 and "curve" in err
    cfg = tmp_path / "suite.cfg"
    cfg.write_text("suite = count\ngroups = A1;A1-adjoint\ncurves = fq:q=2,counts=[3]\n")
    code, out, _ = run("verify", "--config", str(cfg))
    assert code == 0 and "2/2 checks passed" in out


@pytest.mark.parametrize(
    "argv",
    [
        ("bun",),
        ("bun", "--group", "Z9"),
        ("bun", "--group", "A1", "--curve", "nonsense"),
        ("bun", "--group", "A1", "--bogus"),
        ("zeta", "--curve", "P1", "--special", "1"),
        ("verify", "--suite", "nope", "--group", "A1"),
        ("verify",),
        ("verify", "--config", "/nonexistent/file.cfg"),
        ("bun", "--group", "A1", "--realization", "etale"),
        ("frobnicate",),
    ],
)
def test_usage_errors_exit_two(argv):
    code, out, err = run(*argv)
    assert code == 2
    assert out == ""
    assert err


def test_non_convergent_count_exits_one():
    code, _, err = run("realize", "--realization", "count:q=2", stdin='{"kind":"closed","scalar":"1/1","l_power":0,"numerator_factors":[],"denominator_factors":[[{"coefficient":"1/1","curve_exponents":{},"l_exponent":0},{"coefficient":"-2/1","curve_exponents":{},"l_exponent":-1}]],"uses_torsor_relation":false}')
    assert code == 1 and "converge" in err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "bunmotive", "zeta", "--curve", "fq:q=2,counts=[3]", "--special", "3", "--realization", "count:q=2"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "11/7"
