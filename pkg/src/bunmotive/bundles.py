"""Motives of moduli stacks of G-bundles and the checks built around them.

The conjectural value is ``|pi_1(G)| L^{(g-1) dim G} prod_i Z(C, L^{-d_i})``.
It is tested against

* the stratification of bundles on P^1 by dominant cocharacters,
* generating series of matrix divisors for SL_n,
* Poincare and Serre realizations (gauge theory),
* stacky point counts over finite fields.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .curve_zeta import CurveData, sym_class_poly, weil_zeta_value, zeta_special_value
from .errors import DegTooSmall, NotDominant
from .motive_ring import (
    ClosedMotive,
    Comparison,
    GradedMotiveSeries,
    L,
    Realization,
    classifying_motive,
    compare_polys,
    counting_measure,
    dimension,
    expand,
    format_rational,
    realize,
    resum_counting_series,
    target_to_json,
)
from .poly import NEG_INF, Poly, inverse_truncated, mul_truncated, top_weight, truncate
from .report import Mutation, VerificationReport, timed
from .root_data import (
    Cocharacter,
    RootDatum,
    affine_poincare,
    build_root_datum,
    dominant_cochars_upto,
    pairing_2rho,
    parabolic_coset_poincare,
    poincare_from_degrees,
)


@dataclass
class BundleMotiveReport:
    root_datum: RootDatum
    curve: CurveData
    conjecture_value: ClosedMotive
    realized_values: dict[str, object] = field(default_factory=dict)
    tamagawa: ClosedMotive | None = None
    notes: list[str] = field(default_factory=list)


# ---------------------------------------------------------------------------
# the conjecture and the Tamagawa number
# ---------------------------------------------------------------------------


def bun_dimension(rd: RootDatum, genus: int) -> int:
    return (genus - 1) * rd.dim_G


def conjecture_motive(rd: RootDatum, curve: CurveData) -> ClosedMotive:
    """``|pi_1| L^{(g-1) dim G} prod Z(C, L^{-d_i})``."""
    out = ClosedMotive.l_monomial(bun_dimension(rd, curve.genus), rd.pi1_order)
    for d in rd.degrees:
        out = out * zeta_special_value(curve, d)
    return out


def tamagawa_motive(rd: RootDatum, curve: CurveData, bun_motive: ClosedMotive) -> ClosedMotive:
    """``L^{(1-g) dim G} mu(Bun) prod Z(C, L^{-d_i})^{-1}``."""
    out = bun_motive * ClosedMotive.l_monomial(-bun_dimension(rd, curve.genus))
    for d in rd.degrees:
        out = out / zeta_special_value(curve, d)
    return out


def bundle_report(rd: RootDatum, curve: CurveData) -> BundleMotiveReport:
    conj = conjecture_motive(rd, curve)
    rep = BundleMotiveReport(rd, curve, conj, tamagawa=tamagawa_motive(rd, curve, conj))
    rep.realized_values["poincare"] = realize(conj, Realization.poincare(curve.genus))
    if curve.q is not None:
        rep.realized_values["count"] = counting_measure(conj, curve.q, curve.weil or ())
    return rep


def instability_dim_bound(rd: RootDatum, g: int, m: int) -> int:
    """Dimension bound ``dim G (g - 1) - m`` for bundles of instability degree m."""
    if m < 0:
        raise ValueError("m >= 0")
    return rd.dim_G * (g - 1) - m


# ---------------------------------------------------------------------------
# P^1 stratification
# ---------------------------------------------------------------------------


def aut_motive_p1(rd: RootDatum, lam: Cocharacter) -> ClosedMotive:
    """``mu(B Aut E_lambda) = P_{W/W(lambda)}(L) L^{-(lambda, 2 rho)} / mu(G)``."""
    if not lam.is_dominant():
        raise NotDominant(f"{lam.coordinates} is not dominant")
    coset = parabolic_coset_poincare(rd, lam)  # a polynomial in t = L
    return ClosedMotive.build([coset.shift((-pairing_2rho(rd, lam),))]) * classifying_motive(rd)


def stratification_bound(rd: RootDatum, floor: int) -> int:
    # each stratum has top dimension <= -(lambda, 2 rho); dim G is extra margin
    return -floor + rd.dim_G


def lambda_sum(rd: RootDatum, bound: int) -> Poly:
    """``sum_{(lambda, 2 rho) <= bound} L^{-(lambda, 2 rho)} P_{W/W(lambda)}(L)``."""
    cache: dict[tuple[int, ...], Poly] = {}
    total = Poly()
    for lam in dominant_cochars_upto(rd, bound):
        key = lam.stabilizer_nodes()
        if key not in cache:
            cache[key] = parabolic_coset_poincare(rd, lam)
        total = total + cache[key].shift((-pairing_2rho(rd, lam),))
    return total


def p1_stratification_motive(rd: RootDatum, floor: int) -> GradedMotiveSeries:
    """``sum_lambda mu(B Aut E_lambda)`` over X_*(T)_dom, modulo dimension < floor."""
    s = lambda_sum(rd, stratification_bound(rd, floor))
    bg = expand(classifying_motive(rd), floor - int(top_weight(s, dimension)))
    return GradedMotiveSeries(mul_truncated(s, bg.poly, dimension, floor), floor)


def _mutated(p: Poly, mutation: Mutation | None) -> Poly:
    return mutation.apply(p) if mutation else p


def _report(check: str, inputs: dict, bound, lhs, rhs, cmp: Comparison, ms: float) -> VerificationReport:
    return VerificationReport(check, inputs, bound, lhs, rhs, cmp.equal, cmp.first_discrepancy, ms)


def _first_failure(comparisons: Sequence[tuple[str, Comparison]]) -> Comparison:
    for name, c in comparisons:
        if not c.equal:
            disc = dict(c.first_discrepancy or {})
            disc["path"] = name
            return Comparison(False, c.floor, disc)
    return comparisons[0][1]


def p1_stratification_check(rd: RootDatum, floor: int, mutation: Mutation | None = None) -> VerificationReport:
    """Stratification sum against the expanded conjecture for ``C = P^1``."""
    with timed() as t:
        lhs = p1_stratification_motive(rd, floor)
        lhs = GradedMotiveSeries(_mutated(lhs.poly, mutation), floor)
        rhs = expand(conjecture_motive(rd, CurveData.universal(0)), floor)
        cmp = lhs.compare(rhs)
    return _report("p1_stratification", {"group": rd.label, "curve": "P1"}, floor, lhs.to_json_obj(), rhs.to_json_obj(), cmp, t.elapsed_ms)


def _series_in_inverse_l(p: Poly) -> Poly:
    """``p(t) -> p(L^{-1})``."""
    return p.map_exponents(lambda e: tuple(-x for x in e))


def kaiser_identity_check(
    rd: RootDatum, floor: int, mutation: Mutation | None = None, affine: bool = True
) -> VerificationReport:
    """Truncated lambda-sum against ``|pi_1| prod (1 - L^{-(d_i - 1)})^{-1}``.

    With ``affine`` the affine Weyl group BFS series ``P(W_aff, L^{-1}) /
    P(W, L^{-1})`` is checked against the same closed form.
    """
    with timed() as t:
        s = truncate(lambda_sum(rd, stratification_bound(rd, floor)), dimension, floor)
        lhs = GradedMotiveSeries(_mutated(s, mutation), floor)
        closed = ClosedMotive.build([], [1 - Poly.monomial((1 - d,)) for d in rd.degrees], rd.pi1_order)
        rhs = expand(closed, floor)
        checks = [("lambda_sum", lhs.compare(rhs))]
        if affine:
            aff = _series_in_inverse_l(affine_poincare(rd, "bfs", -floor))
            finite = _series_in_inverse_l(poincare_from_degrees(rd.degrees))
            ratio = mul_truncated(aff, inverse_truncated(finite, dimension, floor), dimension, floor) * rd.pi1_order
            checks.append(("affine_bfs", compare_polys(ratio, rhs.poly, floor)))
        cmp = _first_failure(checks)
    return _report("kaiser_identity", {"group": rd.label}, floor, lhs.to_json_obj(), rhs.to_json_obj(), cmp, t.elapsed_ms)


# ---------------------------------------------------------------------------
# SL_n and matrix divisors
# ---------------------------------------------------------------------------


def _curve_excess(curve: CurveData) -> int:
    """``max(0, max_j (dim a_j - j))``: how far Sym^m C can exceed dimension m."""
    return max([0] + [int(top_weight(c, dimension)) - j for j, c in enumerate(curve.numerator, start=1) if c])


def sln_generating_identity(
    n: int, curve: CurveData, floor: int, mutation: Mutation | None = None
) -> VerificationReport:
    """``sum_m prod_{i>=2} mu(Sym^{m_i} C) L^{-i m_i}`` against ``prod_{i>=2} Z(C, L^{-i})``."""
    if n < 2:
        raise ValueError("n >= 2")
    with timed() as t:
        excess = _curve_excess(curve)
        budget = -floor + excess * (n - 1)
        sym = {}
        total = Poly()
        ranges = [range(budget // (i - 1) + 1) for i in range(2, n + 1)]
        for m in itertools.product(*ranges):
            if sum((i - 1) * mi for i, mi in zip(range(2, n + 1), m)) > budget:
                continue
            term = Poly.constant(1)
            for i, mi in zip(range(2, n + 1), m):
                if mi not in sym:
                    sym[mi] = sym_class_poly(curve, mi)
                term = term * sym[mi].shift((-i * mi,))
            total = total + term
        lhs = GradedMotiveSeries(_mutated(total, mutation), floor)
        closed = ClosedMotive.constant(1)
        for i in range(2, n + 1):
            closed = closed * zeta_special_value(curve, i)
        rhs = expand(closed, floor)
        cmp = lhs.compare(rhs)
    return _report("sln_generating_identity", {"n": n, "curve": curve.label}, floor, lhs.to_json_obj(), rhs.to_json_obj(), cmp, t.elapsed_ms)


def matrix_divisor_error_floor(n: int, genus: int, degD: int) -> int:
    """``-(n deg D - 3g + 2)``: neglected strata have codimension at least this."""
    return -(n * degD - 3 * genus + 2)


def _compositions(total: int, parts: int) -> Iterable[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def sln_matrix_divisor_sum(n: int, curve: CurveData, degD: int) -> GradedMotiveSeries:
    """Normalized fixed-point sum for ``Div_det(D)``, times ``L - 1``.

    Sums ``(L^{m_1-g+1} - 1)/(L - 1) prod_{i>=2} mu(Sym^{m_i} C) L^{sum (n-i) m_i}``
    over ``m_1 + ... + m_n = n deg D`` with ``m_1 > 2g - 2``, divides by
    ``L^{n^2 (deg D + 1 - g)}`` and multiplies by ``L - 1`` so it is comparable
    with the SL_n conjecture.  The precision floor is the error floor
    :func:`matrix_divisor_error_floor`.
    """
    g = curve.genus
    if n < 2:
        raise ValueError("n >= 2")
    if degD < 1 or n * degD - 2 * g + 2 <= 0:
        raise DegTooSmall(f"n deg D - 2g + 2 must be positive (n={n}, deg D={degD}, g={g})")
    total_deg = n * degD
    sym: dict[int, Poly] = {}
    total = Poly()
    for m in _compositions(total_deg, n):
        m1 = m[0]
        if m1 <= 2 * g - 2:
            continue
        term = Poly({(k,): 1 for k in range(m1 - g + 1)})
        for mi in m[1:]:
            if mi not in sym:
                sym[mi] = sym_class_poly(curve, mi)
            term = term * sym[mi]
        rank = sum((n - i) * mi for i, mi in enumerate(m, start=1))
        total = total + term.shift((rank,))
    total = total.shift((-(n * n) * (degD + 1 - g),)) * (L - 1)
    return GradedMotiveSeries(total, matrix_divisor_error_floor(n, g, degD))


def matrix_divisor_check(
    n: int, curve: CurveData, degD: int, mutation: Mutation | None = None
) -> VerificationReport:
    with timed() as t:
        lhs = sln_matrix_divisor_sum(n, curve, degD)
        floor = lhs.precision_floor
        lhs = GradedMotiveSeries(_mutated(lhs.poly, mutation), floor)
        rhs = expand(conjecture_motive(build_root_datum("A", n - 1), curve), floor)
        cmp = lhs.compare(rhs)
    return _report(
        "sln_matrix_divisor",
        {"n": n, "curve": curve.label, "degD": degD},
        floor,
        lhs.to_json_obj(),
        rhs.to_json_obj(),
        cmp,
        t.elapsed_ms,
    )


# ---------------------------------------------------------------------------
# gauge theory: Poincare and Serre realizations
# ---------------------------------------------------------------------------


def _power_series(num: Poly, den: Poly, maxdeg: int, weight: Callable) -> Poly:
    """Expansion of ``num / den`` keeping terms with ``-weight <= maxdeg``."""
    floor = -maxdeg
    top = top_weight(num, weight)
    if top == NEG_INF:
        return Poly()
    inv = inverse_truncated(den, weight, int(floor - top))
    return mul_truncated(num, inv, weight, floor)


def _neg_total_degree(e) -> int:
    return -sum(e)


def _first_degree_discrepancy(lhs: Poly, rhs: Poly, maxdeg: int) -> Comparison:
    diff = truncate(lhs - rhs, _neg_total_degree, -maxdeg)
    if not diff:
        return Comparison(True, maxdeg)
    e = min(diff, key=lambda x: (sum(x), x))
    return Comparison(
        False,
        maxdeg,
        {"exponent": list(e), "lhs": format_rational(lhs.coefficient(e)), "rhs": format_rational(rhs.coefficient(e))},
    )


def _invert_variables(p: Poly) -> Poly:
    return p.map_exponents(lambda e: tuple(-x for x in e))


def weighted_poincare_series(rd: RootDatum, g: int) -> tuple[Poly, Poly]:
    """``P_w(Bun, s) = s^{2 dim Bun} chi_c(mu Bun)(1/s)`` as numerator, denominator."""
    rf = realize(conjecture_motive(rd, CurveData.universal(g)), Realization.poincare(g))
    shift = 2 * bun_dimension(rd, g)
    return _invert_variables(rf.numerator).shift((shift,)), _invert_variables(rf.denominator)


def gauge_product_formula(rd: RootDatum, g: int) -> tuple[Poly, Poly]:
    """``P(G)^{2g} P(BG) P(Omega G)`` as numerator, denominator."""
    s = Poly.var(0)
    num, den = Poly.constant(1), Poly.constant(1)
    for d in rd.degrees:
        num = num * (1 + s ** (2 * d - 1)) ** (2 * g)
        den = den * (1 - s ** (2 * d)) * (1 - s ** (2 * d - 2))
    return num, den


def serre_series(rd: RootDatum, g: int) -> tuple[Poly, Poly]:
    """``(UV)^{dim Bun} s_c(mu Bun)(1/U, 1/V)`` as numerator, denominator."""
    rf = realize(conjecture_motive(rd, CurveData.universal(g)), Realization.serre(g))
    d = bun_dimension(rd, g)
    return _invert_variables(rf.numerator).shift((d, d)), _invert_variables(rf.denominator)


def serre_product_formula(rd: RootDatum, g: int) -> tuple[Poly, Poly]:
    u, v = Poly.var(0), Poly.var(1)
    num, den = Poly.constant(1), Poly.constant(1)
    for d in rd.degrees:
        num = num * (1 + u ** d * v ** (d - 1)) ** g * (1 + u ** (d - 1) * v ** d) ** g
        den = den * (1 - (u * v) ** d) * (1 - (u * v) ** (d - 1))
    return num, den


def gauge_poincare_check(
    rd: RootDatum,
    g: int,
    maxdeg: int = 24,
    serre_maxdeg: int | None = None,
    mutation: Mutation | None = None,
) -> VerificationReport:
    """Poincare realization of the conjecture against the gauge-theory product.

    Compares power series through ``t^maxdeg`` and the cross-multiplied
    rational functions exactly; with ``serre_maxdeg`` also the bivariate
    Serre version through that total degree.
    """
    if rd.isogeny != "simply_connected":
        raise ValueError("the gauge-theory comparison needs a simply connected group")
    with timed() as t:
        num, den = weighted_poincare_series(rd, g)
        pnum, pden = gauge_product_formula(rd, g)
        lhs = _mutated(_power_series(num, den, maxdeg, _neg_total_degree), mutation)
        rhs = _power_series(pnum, pden, maxdeg, _neg_total_degree)
        checks = [("poincare_series", _first_degree_discrepancy(lhs, rhs, maxdeg))]
        if num * pden != pnum * den:
            checks.append(("poincare_rational", Comparison(False, maxdeg, {"reason": "cross-multiplied numerators differ"})))
        if serre_maxdeg is not None:
            snum, sden = serre_series(rd, g)
            qnum, qden = serre_product_formula(rd, g)
            sl = _power_series(snum, sden, serre_maxdeg, _neg_total_degree)
            sr = _power_series(qnum, qden, serre_maxdeg, _neg_total_degree)
            checks.append(("serre_series", _first_degree_discrepancy(sl, sr, serre_maxdeg)))
            if snum * qden != qnum * sden:
                checks.append(("serre_rational", Comparison(False, serre_maxdeg, {"reason": "cross-multiplied numerators differ"})))
        cmp = _first_failure(checks)
    inputs = {"group": rd.label, "genus": g}
    if serre_maxdeg is not None:
        inputs["serre_maxdeg"] = serre_maxdeg
    return _report("gauge_poincare", inputs, maxdeg, target_to_json(lhs), target_to_json(rhs), cmp, t.elapsed_ms)


# ---------------------------------------------------------------------------
# point counting
# ---------------------------------------------------------------------------


def predicted_count(rd: RootDatum, q: int, weil: Sequence) -> Fraction:
    """``|pi_1| q^{(g-1) dim G} prod zeta_K(d_i)``."""
    g = len(weil) // 2
    value = Fraction(rd.pi1_order) * Fraction(q) ** bun_dimension(rd, g)
    for d in rd.degrees:
        value *= weil_zeta_value(q, weil, d)
    return value


def _resummation_floor(rd: RootDatum) -> int:
    # recurrence order is at most sum(2 d_i - 1); leave room to confirm it
    order = sum(2 * d - 1 for d in rd.degrees)
    return -rd.dim_G - 2 * order - 8


def count_check(rd: RootDatum, curve: CurveData, mutation_delta: Fraction | int = 0) -> VerificationReport:
    """Counting measure of the conjecture against ``|pi_1| q^{(g-1)dim G} prod zeta_K(d_i)``.

    For ``g = 0`` the stratification series is also resummed independently.
    The report's ``inputs`` carry ``vol`` and ``tau``.
    """
    if curve.q is None:
        raise ValueError("count_check needs a curve over a finite field")
    q, weil = curve.q, curve.weil or ()
    with timed() as t:
        conj = conjecture_motive(rd, curve)
        lhs = Fraction(counting_measure(conj, q, weil)) + mutation_delta
        rhs = predicted_count(rd, q, weil)
        tau = tamagawa_motive(rd, curve, conj)
        checks = [
            ("count", Comparison(lhs == rhs, None, None if lhs == rhs else {"lhs": format_rational(lhs), "rhs": format_rational(rhs)})),
            ("tamagawa", Comparison(tau.is_scalar() and tau.scalar == rd.pi1_order, None, None if tau.is_scalar() and tau.scalar == rd.pi1_order else {"tau": str(tau)})),
        ]
        extra = {}
        if curve.genus == 0:
            floor = _resummation_floor(rd)
            strat = resum_counting_series(p1_stratification_motive(rd, floor), q)
            extra["stratification_count"] = format_rational(strat)
            checks.append(("stratification_resummed", Comparison(strat == rhs, floor, None if strat == rhs else {"lhs": format_rational(strat), "rhs": format_rational(rhs)})))
        cmp = _first_failure(checks)
    inputs = {
        "group": rd.label,
        "curve": curve.label,
        "q": q,
        "vol": format_rational(Fraction(rd.pi1_order) / rhs),
        "tau": str(tau),
        **extra,
    }
    return _report("count", inputs, None, format_rational(lhs), format_rational(rhs), cmp, t.elapsed_ms)


__all__ = [
    "BundleMotiveReport",
    "aut_motive_p1",
    "bundle_report",
    "conjecture_motive",
    "count_check",
    "gauge_poincare_check",
    "instability_dim_bound",
    "kaiser_identity_check",
    "lambda_sum",
    "matrix_divisor_check",
    "matrix_divisor_error_floor",
    "p1_stratification_check",
    "p1_stratification_motive",
    "predicted_count",
    "sln_generating_identity",
    "sln_matrix_divisor_sum",
    "tamagawa_motive",
]
