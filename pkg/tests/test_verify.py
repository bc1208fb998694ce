import pytest

from bunmotive.errors import ConfigError
from bunmotive.report import Mutation, VerificationReport
from bunmotive.verify import (
    CaseSpec,
    SuiteConfig,
    all_passed,
    config_from_mapping,
    group_inverse_check,
    oracle_qfactorial,
    parse_config_text,
    run_suite,
    weyl_check,
)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_qfactorial_oracle(n):
    rep = oracle_qfactorial(n)
    assert rep.equal
    assert rep.lhs == rep.rhs


def test_qfactorial_examples():
    two = oracle_qfactorial(2).lhs["monomials"]
    assert [(m["l_exponent"], m["coefficient"]) for m in two] == [(4, "1/1"), (3, "-1/1"), (2, "-1/1"), (1, "1/1")]
    assert oracle_qfactorial(3).lhs["monomials"][0]["l_exponent"] == 9


def test_weyl_suite_example():
    cfg = config_from_mapping({"suite": "weyl", "groups": "A1;A2;A3;A4;B2;B3;G2;F4"})
    reports = run_suite(cfg)
    assert len(reports) == 8
    assert all_passed(reports)


def test_p1_suite_example():
    cfg = config_from_mapping({"suite": "p1", "groups": "A1;A2;B2;G2", "floor": "-12"})
    reports = run_suite(cfg)
    assert [r.check for r in reports[:2]] == ["p1_stratification", "kaiser_identity"]
    assert all_passed(reports)


def test_count_suite_example():
    [rep] = run_suite(config_from_mapping({"suite": "count", "group": "A1", "curve": "fq:q=2,counts=[3]"}))
    assert rep.equal and rep.lhs == "3/1"


def test_ring_suite():
    reports = run_suite(config_from_mapping({"suite": "ring", "n": "1;3", "groups": "E6;B3-adjoint"}))
    assert len(reports) == 8
    assert all_passed(reports)
    assert group_inverse_check("F4").equal


@pytest.mark.parametrize(
    "values",
    [
        {"suite": "nope", "group": "A1"},
        {"suite": "p1", "group": "A1", "floor": "3"},
        {"suite": "p1", "group": "Q7", "floor": "-4"},
        {"suite": "affine", "group": "A1", "maxdeg": "-1"},
        {"suite": "count", "group": "A1", "curve": "genus=1"},
        {"suite": "gauge", "group": "A1-adjoint", "curve": "genus=1"},
        {"suite": "sln", "curve": "genus=0"},
        {"suite": "weyl", "group": "A1", "colour": "blue"},
        {"suite": "p1", "group": "A1", "floor": "minus four"},
        {"group": "A1"},
    ],
)
def test_config_errors(values):
    with pytest.raises(ConfigError):
        config_from_mapping(values)


def test_defaults_fill_floors():
    cfg = config_from_mapping({"suite": "p1", "group": "A1"})
    assert cfg.cases[0].floor == -12
    cfg = config_from_mapping({"suite": "affine", "group": "A1"})
    assert cfg.cases[0].maxdeg == 14


def test_cases_are_a_product():
    cfg = config_from_mapping({"suite": "sln", "n": "2;3", "curves": "genus=0;genus=1", "floor": "-6"})
    assert len(cfg.cases) == 4
    assert cfg.cases[1] == CaseSpec(None, "genus=0", -6, None, None, 3, None)


def test_config_text():
    text = """
    # a comment
    suite = count
    curves = fq:q=2,counts=[3]   # trailing comment
    groups = A1;A1-adjoint
    """
    values = parse_config_text(text)
    assert values == {"suite": "count", "curves": "fq:q=2,counts=[3]", "groups": "A1;A1-adjoint"}
    with pytest.raises(ConfigError):
        parse_config_text("suite count")


def test_reports_are_deterministic_and_round_trip():
    cfg = config_from_mapping({"suite": "p1", "groups": "A2;B2", "floor": "-10"})
    first = [r.to_json(include_timing=False) for r in run_suite(cfg)]
    second = [r.to_json(include_timing=False) for r in run_suite(cfg)]
    assert first == second
    for text in first:
        assert VerificationReport.from_json(text).to_json(include_timing=False) == text


def test_parallel_run_keeps_case_order():
    serial = config_from_mapping({"suite": "affine", "groups": "A1;A2;B2;G2", "maxdeg": "8"})
    parallel = config_from_mapping({"suite": "affine", "groups": "A1;A2;B2;G2", "maxdeg": "8", "parallelism": "3"})
    a = [r.to_json(include_timing=False) for r in run_suite(serial)]
    b = [r.to_json(include_timing=False) for r in run_suite(parallel)]
    assert a == b


@pytest.mark.parametrize(
    "suite, values, mutation",
    [
        ("weyl", {"group": "B3"}, Mutation((4,))),
        ("affine", {"group": "A2", "maxdeg": "10"}, Mutation((9,))),
        ("gauge", {"group": "G2", "curve": "genus=2", "maxdeg": "20"}, Mutation((17,), -1)),
        ("p1", {"group": "C3", "floor": "-12"}, Mutation.at_l_power(-12)),
        ("sln", {"n": "3", "curve": "genus=1", "floor": "-8"}, Mutation.at_l_power(-4, curve_exponents={1: 1})),
        ("sln", {"n": "2", "curve": "genus=0", "degD": "6"}, Mutation.at_l_power(-14)),
        ("ring", {"n": "5"}, Mutation.at_l_power(7, 3)),
        ("count", {"group": "A2", "curve": "fq:q=2"}, Mutation((), 1)),
    ],
)
def test_mutations_make_every_suite_fail(suite, values, mutation):
    cfg = config_from_mapping({"suite": suite, **values})
    assert all_passed(run_suite(cfg))
    mutated = SuiteConfig(cfg.suite, cfg.cases, cfg.parallelism, mutation)
    reports = run_suite(mutated)
    assert not all_passed(reports)
    assert all(r.first_discrepancy for r in reports if not r.equal)


def test_summary_line():
    rep = weyl_check("A2")
    assert rep.summary_line().startswith("PASS weyl_poincare [group=A2-sc weyl_order=6] @ None")
