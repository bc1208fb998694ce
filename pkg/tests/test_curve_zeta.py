from fractions import Fraction

import pytest

from bunmotive.curve_zeta import (
    CurveData,
    parse_curve,
    parse_motive_expression,
    poincare_sym,
    sym_class,
    sym_class_poly,
    sym_class_table,
    weil_from_counts,
    weil_zeta_value,
    zeta,
    zeta_special_value,
)
from bunmotive.errors import CurveSpecError, DivergentSpecialValue
from bunmotive.motive_ring import L, ONE, ClosedMotive, Realization, a, counting_measure, realize
from bunmotive.poly import Poly

t = Poly.var(0)
E_F2 = "fq:q=2,counts=[3]"  # y^2 + y = x^3 over F_2


def Lp(k):
    return Poly.monomial((k,))


def test_zeta_strings():
    assert str(zeta(CurveData.universal(0))) == "(1) / ((1 - u)(1 - L u))"
    assert str(zeta(CurveData.universal(1))) == "(1 + (a1) u + (a2) u^2) / ((1 - u)(1 - L u))"


def test_elliptic_curve_over_f2():
    c = parse_curve(E_F2)
    assert c.genus == 1
    assert c.weil == (0, 2)
    assert c.count_realization().apply(c.coefficients[2]) == 2
    assert weil_from_counts(2, [3]) == (0, 2)


def test_weil_numerator_from_several_counts():
    # N_1 = q + 1 + a_1 and N_2 = q^2 + 1 + 2 a_2 - a_1^2
    assert weil_from_counts(2, [3, 5]) == (0, 0, 0, 4)
    assert weil_from_counts(3, [5, 9]) == (1, 0, 3, 9)


def test_sym_class_examples():
    p1 = CurveData.universal(0)
    assert sym_class_poly(p1, 2) == 1 + L + L**2
    assert sym_class_poly(p1, 0) == ONE
    assert sym_class_poly(CurveData.universal(3), 0) == ONE
    assert sym_class_poly(CurveData.universal(1), 1) == a(1) + 1 + L


@pytest.mark.parametrize("genus", [0, 1, 2, 3])
def test_series_times_denominator_is_numerator(genus):
    curve = CurveData.universal(genus)
    n_max = 2 * genus + 6
    classes = [sym_class_poly(curve, n) for n in range(n_max + 1)]
    # (1 - u)(1 - L u) = 1 - (1 + L) u + L u^2
    for n in range(n_max + 1):
        lhs = classes[n]
        if n >= 1:
            lhs = lhs - (1 + L) * classes[n - 1]
        if n >= 2:
            lhs = lhs + L * classes[n - 2]
        expected = curve.coefficients[n] if n <= 2 * genus else Poly()
        assert lhs == expected


def test_genus_zero_classes_at_l_equals_one():
    p1 = CurveData.universal(0)
    for n in range(10):
        assert sym_class_poly(p1, n).evaluate([1]) == n + 1


def test_zeta_special_values():
    p1 = CurveData.universal(0)
    assert zeta_special_value(p1, 2) == ClosedMotive.build([], [1 - Lp(-2), 1 - Lp(-1)])
    with pytest.raises(DivergentSpecialValue):
        zeta_special_value(p1, 1)
    e = parse_curve(E_F2)
    assert counting_measure(zeta_special_value(e, 2), 2, e.weil) == 3
    assert counting_measure(zeta_special_value(e, 3), 2, e.weil) == Fraction(11, 7)


def test_weil_zeta_values():
    assert weil_zeta_value(2, (), 2) == Fraction(8, 3)
    assert weil_zeta_value(2, (0, 2), 2) == 3
    assert weil_zeta_value(2, (0, 2), 3) == Fraction(11, 7)


@pytest.mark.parametrize("curve", ["P1", E_F2, "fq:q=3,weil=[1,3]", "fq:q=2,counts=[3,5]"])
def test_special_value_commutes_with_count(curve):
    c = parse_curve(curve)
    for d in (2, 3, 4):
        assert counting_measure(zeta_special_value(c, d), c.q or 2, c.weil or ()) == weil_zeta_value(c.q or 2, c.weil or (), d)


def test_poincare_sym_examples():
    assert poincare_sym(2, 2) == 1 + 4 * t + 7 * t**2 + 4 * t**3 + t**4
    assert poincare_sym(5, 0) == ONE
    assert poincare_sym(1, 1) == 1 + 2 * t + t**2


def test_poincare_sym_matches_realization():
    for g in range(4):
        r = Realization.poincare(g)
        curve = CurveData.universal(g)
        for n in range(9):
            assert r.apply(sym_class_poly(curve, n)) == poincare_sym(g, n), (g, n)


def test_sym_class_is_closed_motive():
    c = sym_class(CurveData.universal(1), 2)
    assert isinstance(c, ClosedMotive)
    # u^2 coefficient of (1 + 2u^2) / ((1 - u)(1 - 2u)) is 7 + 2
    assert realize(c, Realization.count(2, [0, 2])) == 9


def test_parse_curve_formats():
    assert parse_curve("genus=2").genus == 2
    assert parse_curve("P1").genus == 0
    c = parse_curve("numerator=[-L-1+2, L]")
    assert c.numerator == (1 - L, L)
    with pytest.warns(UserWarning, match="degenerate"):
        parse_curve("numerator=[a1, 0]")
    p1_f2 = parse_curve("fq:q=2")
    assert (p1_f2.genus, p1_f2.q, p1_f2.weil) == (0, 2, ())
    for bad in ("genus=-1", "fq:q=2,counts=[3],weil=[0,2]", "fq:q=2,weil=[-3,1]", "numerator=[1]", "elliptic"):
        with pytest.raises(CurveSpecError):
            parse_curve(bad)


def test_parse_motive_expression():
    assert parse_motive_expression("L^2 - 3*a1*L + 1/2") == L**2 - 3 * a(1) * L + Fraction(1, 2)
    assert parse_motive_expression("(L+1)**2") == (L + 1) ** 2
    with pytest.raises(CurveSpecError):
        parse_motive_expression("__import__('os')")


def test_functional_equation_lint():
    assert parse_curve(E_F2).lint_functional_equation() == []
    assert CurveData.over_fq(2, [1, 9]).lint_functional_equation() != []


def test_sym_class_table_is_serializable():
    table = sym_class_table(CurveData.universal(1), 3)
    assert [row["n"] for row in table] == [0, 1, 2, 3]
    assert table[0]["class"] == [{"coefficient": "1/1", "curve_exponents": {}, "l_exponent": 0}]
