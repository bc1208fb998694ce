from fractions import Fraction

import pytest

from bunmotive import bundles
from bunmotive.curve_zeta import CurveData, parse_curve
from bunmotive.errors import DegTooSmall, NotDominant
from bunmotive.motive_ring import L, ClosedMotive, classifying_motive, expand, group_motive, realize
from bunmotive.poly import Poly
from bunmotive.report import Mutation
from bunmotive.root_data import Cocharacter, build_root_datum, parse_group

A1, A2 = build_root_datum("A", 1), build_root_datum("A", 2)
PGL2 = build_root_datum("A", 1, "adjoint")
P1 = CurveData.universal(0)
E_F2 = parse_curve("fq:q=2,counts=[3]")
P1_F2 = parse_curve("fq:q=2")


def Lp(k):
    return Poly.monomial((k,))


BSL2_P1 = ClosedMotive.build([], [1 - Lp(-2), 1 - Lp(-1)], l_power=-3)


# -- conjecture and Tamagawa number -------------------------------------------


def test_conjecture_examples():
    assert bundles.conjecture_motive(A1, P1) == BSL2_P1
    assert bundles.conjecture_motive(PGL2, P1) == 2 * BSL2_P1
    assert realize(bundles.conjecture_motive(A1, E_F2), E_F2.count_realization()) == 3


@pytest.mark.parametrize("group", ["A1", "A1-adjoint", "A2", "A2-adjoint", "G2", "B3-adjoint"])
@pytest.mark.parametrize("genus", [0, 1, 2])
def test_tamagawa_is_pi1(group, genus):
    rd = parse_group(group)
    curve = CurveData.universal(genus)
    tau = bundles.tamagawa_motive(rd, curve, bundles.conjecture_motive(rd, curve))
    assert tau.is_scalar()
    assert tau.as_scalar() == rd.pi1_order


def test_tamagawa_detects_a_wrong_motive():
    wrong = 2 * bundles.conjecture_motive(A1, E_F2)
    assert bundles.tamagawa_motive(A1, E_F2, wrong).as_scalar() == 2


@pytest.mark.parametrize("group", ["A1", "A2-adjoint", "C2", "G2"])
@pytest.mark.parametrize("genus", [1, 2, 3])
def test_leading_coefficient_is_pi1(group, genus):
    rd = parse_group(group)
    series = expand(bundles.conjecture_motive(rd, CurveData.universal(genus)), bundles.bun_dimension(rd, genus) - 2)
    assert series.top_dimension() == (genus - 1) * rd.dim_G
    assert series.coefficient((genus - 1) * rd.dim_G) == rd.pi1_order


def test_instability_bound_examples():
    assert bundles.instability_dim_bound(A1, 0, 5) == -8
    assert bundles.instability_dim_bound(A1, 2, 0) == 3
    assert bundles.instability_dim_bound(build_root_datum("G", 2), 1, 7) == -7


def test_bundle_report():
    rep = bundles.bundle_report(A1, E_F2)
    assert rep.realized_values["count"] == 3
    assert rep.tamagawa.as_scalar() == 1


# -- P^1 stratification --------------------------------------------------------


def test_aut_motives_on_p1():
    assert bundles.aut_motive_p1(A1, Cocharacter((0,))) == classifying_motive(A1)
    for m in (1, 2, 5):
        lam = Cocharacter.from_coroots(A1, (m,))
        expected = ClosedMotive.build([(1 + L) * Lp(-2 * m)]) / ClosedMotive.from_poly(L**3 - L)
        assert bundles.aut_motive_p1(A1, lam) == expected
    regular = Cocharacter((1, 1))
    expected = ClosedMotive.build([(1 + 2 * L + 2 * L**2 + L**3) * Lp(-4)]) / group_motive(A2)
    assert bundles.aut_motive_p1(A2, regular) == expected
    with pytest.raises(NotDominant):
        bundles.aut_motive_p1(A2, Cocharacter((1, -1)))


def test_p1_stratification_examples():
    s = bundles.p1_stratification_motive(A1, -9)
    assert str(s) == "L^-3 + L^-4 + 2 L^-5 + 2 L^-6 + 3 L^-7 + 3 L^-8 + 4 L^-9 + O(dim<-9)"
    for group in ("A2", "B2", "G2"):
        rd = parse_group(group)
        series = bundles.p1_stratification_motive(rd, -rd.dim_G - 1)
        assert series.top_dimension() == -rd.dim_G
        assert series.coefficient(-rd.dim_G) == 1


def test_adjoint_stratification_doubles():
    sc = expand(bundles.conjecture_motive(A1, P1), -6)
    assert bundles.p1_stratification_motive(PGL2, -6) == 2 * sc


def test_kaiser_identity_examples():
    rep = bundles.kaiser_identity_check(A1, -10)
    assert rep.equal
    assert [m["coefficient"] for m in rep.rhs["monomials"]] == ["1/1"] * 11
    assert bundles.kaiser_identity_check(A2, -8).equal
    assert rep.lhs["monomials"][0] == {"coefficient": "1/1", "curve_exponents": {}, "l_exponent": 0}


# -- SL_n ------------------------------------------------------------------------


def test_sln_generating_identity_examples():
    assert bundles.sln_generating_identity(2, P1, -6).equal
    rep = bundles.sln_generating_identity(3, CurveData.universal(1), -5)
    assert rep.equal
    assert any(m["curve_exponents"] for m in rep.lhs["monomials"])


def test_matrix_divisor_sum_examples():
    s = bundles.sln_matrix_divisor_sum(2, P1, 3)
    assert s.precision_floor == -8
    assert s.top_dimension() == -3
    assert s.coefficient(-3) == 1
    assert bundles.matrix_divisor_check(2, P1, 3).equal
    with pytest.raises(DegTooSmall):
        bundles.sln_matrix_divisor_sum(2, CurveData.universal(3), 1)


@pytest.mark.parametrize("genus, degD", [(0, 3), (0, 6), (1, 4)])
def test_matrix_divisor_error_floor_is_sharp(genus, degD):
    """The truncated sum first differs one dimension below the error floor."""
    curve = CurveData.universal(genus)
    s = bundles.sln_matrix_divisor_sum(2, curve, degD)
    deeper = s.precision_floor - 6
    exact = expand(bundles.conjecture_motive(A1, curve), deeper)
    cmp = bundles.GradedMotiveSeries(s.poly, deeper).compare(exact)
    assert not cmp.equal
    assert cmp.first_discrepancy["dimension"] == s.precision_floor - 1


# -- gauge theory ----------------------------------------------------------------


def test_gauge_examples():
    s = Poly.var(0)
    num, den = bundles.weighted_poincare_series(A1, 1)
    assert num * (1 - s**4) * (1 - s**2) == (1 + s**3) ** 2 * den
    num, den = bundles.weighted_poincare_series(A1, 0)
    series = bundles._power_series(num, den, 4, bundles._neg_total_degree)
    assert series == 1 + s**2 + 2 * s**4
    rep = bundles.gauge_poincare_check(A1, 1, maxdeg=12)
    assert rep.equal
    assert {"coefficient": "1/1", "exponent": []} in rep.lhs


def test_gauge_rejects_adjoint_groups():
    with pytest.raises(ValueError):
        bundles.gauge_poincare_check(PGL2, 1)


def test_serre_specializes_to_poincare():
    # U = V = s recovers the Poincare series
    def diag(p):
        return p.map_exponents(lambda e: (sum(e),))

    for g in (0, 1, 2):
        num, den = bundles.serre_product_formula(A2, g)
        pnum, pden = bundles.gauge_product_formula(A2, g)
        assert diag(num) * pden == pnum * diag(den)


# -- counting ----------------------------------------------------------------------


def test_count_examples():
    rep = bundles.count_check(A1, E_F2)
    assert rep.equal and rep.lhs == "3/1"
    assert rep.inputs["vol"] == "1/3" and rep.inputs["tau"] == "1"
    rep = bundles.count_check(A1, P1_F2)
    assert rep.equal and rep.rhs == "1/3"
    assert rep.inputs["stratification_count"] == "1/3"
    assert bundles.count_check(PGL2, P1_F2).rhs == "2/3"
    assert bundles.predicted_count(A1, 2, ()) == Fraction(1, 8) * Fraction(8, 3)


def test_mutations_are_detected():
    bad = Mutation.at_l_power(-7)
    assert not bundles.p1_stratification_check(A1, -12, bad).equal
    assert not bundles.kaiser_identity_check(A2, -12, bad).equal
    assert not bundles.sln_generating_identity(2, P1, -10, bad).equal
    assert not bundles.matrix_divisor_check(2, P1, 4, Mutation.at_l_power(-9)).equal
    assert not bundles.gauge_poincare_check(A1, 1, 12, mutation=Mutation((12,))).equal
    assert not bundles.count_check(A1, E_F2, Fraction(1, 1000)).equal
    rep = bundles.p1_stratification_check(A1, -12, bad)
    assert rep.first_discrepancy["l_exponent"] == -7
