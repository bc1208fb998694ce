"""Exact arithmetic in the dimensionally completed Grothendieck ring.

Elements live in the subring generated by ``L^{+-1}``, curve symbols
``a_1 .. a_{2g}`` (zeta-numerator coefficients, ``a_j`` has dimension ``j``)
and inverses of units whose top-dimension part is a single power of ``L``.

Two representations are provided:

* :class:`GradedMotiveSeries` -- a finite sum of monomials, exact modulo
  monomials of dimension below ``precision_floor``;
* :class:`ClosedMotive` -- ``scalar * L^k * prod(num) / prod(den)`` with every
  denominator factor a unit of the completion.

Variable 0 of the underlying :class:`~bunmotive.poly.Poly` is ``L``; variable
``j >= 1`` is ``a_j``.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Iterable, Mapping, Sequence, Union

from .errors import DivisionByZero, NonConvergent
from .poly import (
    NEG_INF,
    Exponent,
    NotAUnit,
    Poly,
    Rational,
    inverse_truncated,
    mul_truncated,
    normalize_rational,
    top_weight,
    truncate,
)

Floor = Union[int, float]  # int, or NEG_INF for exact values

L = Poly.var(0)
ONE = Poly.constant(1)


def a(j: int) -> Poly:
    """The curve symbol ``a_j`` (coefficient of ``u^j`` in the zeta numerator)."""
    if j < 1:
        raise ValueError("curve symbols are indexed from 1")
    return Poly.var(j)


def dimension(exp: Exponent) -> int:
    if not exp:
        return 0
    d = exp[0]
    for j in range(1, len(exp)):
        d += j * exp[j]
    return d


def _is_l_power(exp: Exponent) -> bool:
    return len(exp) <= 1


def canonical_key(exp: Exponent) -> tuple:
    """Sort key: dimension desc, L-exponent desc, curve exponents lexicographic."""
    return (-dimension(exp), -(exp[0] if exp else 0), exp[1:])


def format_rational(c: Rational) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def parse_rational(s: str) -> Rational:
    return normalize_rational(Fraction(s))


# ---------------------------------------------------------------------------
# monomials and series
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MotiveMonomial:
    coefficient: Rational
    l_exponent: int
    curve_exponents: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if not self.coefficient:
            raise ValueError("stored monomials have nonzero coefficient")
        if any(k < 0 for _, k in self.curve_exponents):
            raise ValueError("curve exponents are non-negative")

    @property
    def dimension(self) -> int:
        return self.l_exponent + sum(j * k for j, k in self.curve_exponents)

    @property
    def exponent(self) -> Exponent:
        n = max((j for j, _ in self.curve_exponents), default=0)
        exp = [0] * (n + 1)
        exp[0] = self.l_exponent
        for j, k in self.curve_exponents:
            exp[j] += k
        return tuple(exp)

    @classmethod
    def from_exponent(cls, exp: Exponent, coefficient: Rational) -> MotiveMonomial:
        l_exp = exp[0] if exp else 0
        curve = tuple((j, k) for j, k in enumerate(exp) if j >= 1 and k)
        return cls(coefficient, l_exp, curve)


def _monomials_sorted(p: Poly) -> list[tuple[Exponent, Rational]]:
    return sorted(p.items(), key=lambda item: canonical_key(item[0]))


def format_poly(p: Poly) -> str:
    if not p:
        return "0"
    parts = []
    for i, (exp, c) in enumerate(_monomials_sorted(p)):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        factors = []
        for j in range(1, len(exp)):
            if exp[j]:
                factors.append(f"a{j}" if exp[j] == 1 else f"a{j}^{exp[j]}")
        l_exp = exp[0] if exp else 0
        if l_exp:
            factors.append("L" if l_exp == 1 else f"L^{l_exp}")
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = " ".join(factors)
        else:
            body = f"{mag} " + " ".join(factors)
        if i == 0:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


def format_target(p: Poly, names: Sequence[str]) -> str:
    """Render a realized polynomial in named variables, highest total degree first."""
    if not p:
        return "0"
    items = sorted(p.items(), key=lambda it: (-sum(it[0]), tuple(-x for x in it[0])))
    parts = []
    for i, (exp, c) in enumerate(items):
        factors = [n if k == 1 else f"{n}^{k}" for n, k in zip(names, exp) if k]
        mag = abs(c)
        body = " ".join(factors) if factors and mag == 1 else " ".join([str(mag), *factors])
        if i == 0:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f" {'+' if c > 0 else '-'} {body}")
    return "".join(parts)


def target_to_json(p: Poly) -> list[dict[str, Any]]:
    """Realized polynomial as ``[{"exponent": [..], "coefficient": "p/q"}]``."""
    items = sorted(p.items(), key=lambda it: (-sum(it[0]), tuple(-x for x in it[0])))
    return [{"exponent": list(e), "coefficient": format_rational(c)} for e, c in items]


def poly_to_json(p: Poly) -> list[dict[str, Any]]:
    out = []
    for exp, c in _monomials_sorted(p):
        m = MotiveMonomial.from_exponent(exp, c)
        out.append(
            {
                "coefficient": format_rational(c),
                "l_exponent": m.l_exponent,
                "curve_exponents": {str(j): k for j, k in m.curve_exponents},
            }
        )
    return out


def poly_from_json(data: Sequence[Mapping[str, Any]]) -> Poly:
    terms: dict[Exponent, Rational] = {}
    for item in data:
        m = MotiveMonomial(
            parse_rational(item["coefficient"]),
            int(item["l_exponent"]),
            tuple(sorted((int(j), int(k)) for j, k in item.get("curve_exponents", {}).items())),
        )
        terms[m.exponent] = m.coefficient
    return Poly(terms)


@dataclass(frozen=True)
class Comparison:
    equal: bool
    floor: Floor
    first_discrepancy: dict[str, Any] | None = None


def compare_polys(x: Poly, y: Poly, floor: Floor) -> Comparison:
    """Compare two motive polynomials on all monomials of dimension >= floor."""
    diff = truncate(x - y, dimension, floor)
    if not diff:
        return Comparison(True, floor)
    exp, _ = _monomials_sorted(diff)[0]
    m = MotiveMonomial.from_exponent(exp, 1)
    return Comparison(
        False,
        floor,
        {
            "dimension": m.dimension,
            "l_exponent": m.l_exponent,
            "curve_exponents": {str(j): k for j, k in m.curve_exponents},
            "lhs": format_rational(x.coefficient(exp)),
            "rhs": format_rational(y.coefficient(exp)),
        },
    )


@dataclass(frozen=True)
class GradedMotiveSeries:
    """Finite sum of monomials, exact modulo dimension < ``precision_floor``."""

    poly: Poly = field(default_factory=Poly)
    precision_floor: Floor = NEG_INF

    def __post_init__(self):
        if not isinstance(self.poly, Poly):
            object.__setattr__(self, "poly", Poly.constant(self.poly))
        if self.precision_floor != NEG_INF:
            object.__setattr__(self, "precision_floor", int(self.precision_floor))
            object.__setattr__(self, "poly", truncate(self.poly, dimension, self.precision_floor))

    @classmethod
    def from_monomials(cls, monomials: Iterable[MotiveMonomial], floor: Floor = NEG_INF) -> GradedMotiveSeries:
        terms: dict[Exponent, Rational] = {}
        for m in monomials:
            if m.exponent in terms:
                raise ValueError(f"duplicate monomial key {m.exponent}")
            terms[m.exponent] = m.coefficient
        return cls(Poly(terms), floor)

    @property
    def is_exact(self) -> bool:
        return self.precision_floor == NEG_INF

    def monomials(self) -> list[MotiveMonomial]:
        return [MotiveMonomial.from_exponent(e, c) for e, c in _monomials_sorted(self.poly)]

    def top_dimension(self) -> Floor:
        return top_weight(self.poly, dimension)

    def _effective_top(self) -> Floor:
        return max(self.top_dimension(), self.precision_floor)

    def coefficient(self, l_exponent: int, curve_exponents: Mapping[int, int] | None = None) -> Rational:
        exp = MotiveMonomial(1, l_exponent, tuple(sorted((curve_exponents or {}).items()))).exponent
        if dimension(exp) < self.precision_floor:
            raise ValueError("coefficient below the precision floor is unknown")
        return self.poly.coefficient(exp)

    def dimension_slices(self) -> dict[int, Poly]:
        out: dict[int, dict[Exponent, Rational]] = {}
        for e, c in self.poly.items():
            out.setdefault(dimension(e), {})[e] = c
        return {d: Poly(t) for d, t in sorted(out.items(), reverse=True)}

    def truncate(self, floor: Floor) -> GradedMotiveSeries:
        return GradedMotiveSeries(self.poly, max(floor, self.precision_floor))

    # -- ring structure -----------------------------------------------------
    @staticmethod
    def _coerce(other) -> GradedMotiveSeries:
        if isinstance(other, GradedMotiveSeries):
            return other
        if isinstance(other, Poly):
            return GradedMotiveSeries(other)
        if isinstance(other, (int, Fraction)):
            return GradedMotiveSeries(Poly.constant(other))
        return NotImplemented

    def __add__(self, other) -> GradedMotiveSeries:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ring_add(self, other)

    __radd__ = __add__

    def __neg__(self) -> GradedMotiveSeries:
        return GradedMotiveSeries(-self.poly, self.precision_floor)

    def __sub__(self, other) -> GradedMotiveSeries:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ring_add(self, -other)

    def __rsub__(self, other) -> GradedMotiveSeries:
        return (-self) + other

    def __mul__(self, other) -> GradedMotiveSeries:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ring_mul(self, other)

    __rmul__ = __mul__

    def invert(self, floor: int) -> GradedMotiveSeries:
        return invert_unit(self, floor)

    def compare(self, other) -> Comparison:
        """Coefficientwise comparison down to the weaker of the two floors."""
        other = self._coerce(other)
        floor = max(self.precision_floor, other.precision_floor)
        return compare_polys(self.poly, other.poly, floor)

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.compare(other).equal

    __hash__ = None  # equality is floor-relative

    def __str__(self) -> str:
        body = format_poly(self.poly)
        if self.is_exact:
            return body
        tail = f"O(dim<{self.precision_floor})"
        return tail if not self.poly else f"{body} + {tail}"

    def to_json_obj(self) -> dict[str, Any]:
        return {
            "kind": "series",
            "precision_floor": None if self.is_exact else self.precision_floor,
            "monomials": poly_to_json(self.poly),
        }

    def to_json(self) -> str:
        return canonical_json(self.to_json_obj())


def ring_add(x: GradedMotiveSeries, y: GradedMotiveSeries) -> GradedMotiveSeries:
    return GradedMotiveSeries(x.poly + y.poly, max(x.precision_floor, y.precision_floor))


def ring_mul(x: GradedMotiveSeries, y: GradedMotiveSeries) -> GradedMotiveSeries:
    # an empty truncated factor still carries O(L^floor); use it as the top
    floor = max(
        x.precision_floor + y._effective_top(),
        y.precision_floor + x._effective_top(),
    )
    return GradedMotiveSeries(mul_truncated(x.poly, y.poly, dimension, floor), floor)


def invert_unit(x: GradedMotiveSeries, floor: int) -> GradedMotiveSeries:
    """Inverse of ``x`` modulo dimension < ``floor``.

    Raises :class:`NotAUnit` unless ``x`` has a unique top-dimension monomial
    that is a nonzero rational multiple of a power of ``L``.
    """
    if floor == NEG_INF:
        raise ValueError("inversion needs a finite floor")
    if not x.poly:
        raise NotAUnit("zero has no inverse")
    top = x.top_dimension()
    if not x.is_exact:
        # x known to relative precision floor - top; so is its inverse
        floor = max(floor, x.precision_floor - 2 * top)
    inv = _cached_inverse(x.poly, int(floor))
    return GradedMotiveSeries(inv, floor)


@lru_cache(maxsize=4096)
def _cached_inverse(p: Poly, floor: int) -> Poly:
    return inverse_truncated(p, dimension, floor, _is_l_power)


# ---------------------------------------------------------------------------
# closed forms
# ---------------------------------------------------------------------------


def _factor_sort_key(p: Poly) -> tuple:
    return tuple((canonical_key(e), Fraction(c)) for e, c in _monomials_sorted(p))


def _normalize_factor(p: Poly) -> tuple[Rational, int, Poly]:
    """Write ``p = c * L^k * f`` with the leading monomial of ``f`` L-free and monic."""
    if not p:
        raise ZeroDivisionError("zero factor")
    exp, c = _monomials_sorted(p)[0]
    k = exp[0] if exp else 0
    f = p.shift((-k,)) * (Fraction(1) / c)
    return c, k, f


def _check_unit_factor(f: Poly) -> None:
    exp, _ = _monomials_sorted(f)[0]
    top = dimension(exp)
    if exp != () or sum(1 for e in f if dimension(e) == top) != 1:
        raise NotAUnit(f"denominator factor {format_poly(f)} is not a unit of the completion")


@dataclass(frozen=True, eq=False)
class ClosedMotive:
    """``scalar * L^l_power * prod(numerator_factors) / prod(denominator_factors)``.

    Factors are stored normalized (monic, L-free leading monomial) and sorted,
    with common numerator/denominator factors cancelled.  Use :meth:`build`
    rather than the raw constructor.
    """

    scalar: Rational = 1
    l_power: int = 0
    numerator_factors: tuple[Poly, ...] = ()
    denominator_factors: tuple[Poly, ...] = ()
    uses_torsor_relation: bool = False

    @classmethod
    def build(
        cls,
        numerators: Iterable[Poly] = (),
        denominators: Iterable[Poly] = (),
        scalar: Rational = 1,
        l_power: int = 0,
        uses_torsor_relation: bool = False,
    ) -> ClosedMotive:
        scalar = Fraction(scalar)
        nums: Counter = Counter()
        dens: Counter = Counter()
        if scalar == 0:
            return cls(0, 0, (), (), uses_torsor_relation)
        for p in numerators:
            if not isinstance(p, Poly):
                p = Poly.constant(p)
            if not p:
                return cls(0, 0, (), (), uses_torsor_relation)
            c, k, f = _normalize_factor(p)
            scalar *= c
            l_power += k
            if f != ONE:
                nums[f] += 1
        for p in denominators:
            if not isinstance(p, Poly):
                p = Poly.constant(p)
            c, k, f = _normalize_factor(p)
            scalar /= c
            l_power -= k
            if f != ONE:
                dens[f] += 1
        common = nums & dens
        nums -= common
        dens -= common
        for f in dens:
            _check_unit_factor(f)
        return cls(
            normalize_rational(scalar),
            l_power,
            tuple(sorted(nums.elements(), key=_factor_sort_key)),
            tuple(sorted(dens.elements(), key=_factor_sort_key)),
            uses_torsor_relation,
        )

    @classmethod
    def from_poly(cls, p: Poly | Rational) -> ClosedMotive:
        return cls.build([p])

    @classmethod
    def constant(cls, c: Rational) -> ClosedMotive:
        return cls.build(scalar=c)

    @classmethod
    def l_monomial(cls, k: int, c: Rational = 1) -> ClosedMotive:
        return cls.build(scalar=c, l_power=k)

    # -- accessors ----------------------------------------------------------
    def numerator(self) -> Poly:
        out = Poly.monomial((self.l_power,), self.scalar)
        for f in self.numerator_factors:
            out = out * f
        return out

    def denominator(self) -> Poly:
        out = ONE
        for f in self.denominator_factors:
            out = out * f
        return out

    def is_zero(self) -> bool:
        return self.scalar == 0

    def is_scalar(self) -> bool:
        return not self.numerator_factors and not self.denominator_factors and (self.l_power == 0 or self.scalar == 0)

    def as_scalar(self) -> Rational:
        if not self.is_scalar():
            raise ValueError(f"{self} does not simplify to a scalar")
        return self.scalar

    def top_dimension(self) -> Floor:
        return top_weight(self.numerator(), dimension)

    def _with_flag(self, other: ClosedMotive) -> bool:
        return self.uses_torsor_relation or other.uses_torsor_relation

    # -- arithmetic ---------------------------------------------------------
    @staticmethod
    def _coerce(other) -> ClosedMotive:
        if isinstance(other, ClosedMotive):
            return other
        if isinstance(other, (Poly, int, Fraction)):
            return ClosedMotive.from_poly(other)
        return NotImplemented

    def __mul__(self, other) -> ClosedMotive:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ClosedMotive.build(
            self.numerator_factors + other.numerator_factors,
            self.denominator_factors + other.denominator_factors,
            Fraction(self.scalar) * other.scalar,
            self.l_power + other.l_power,
            self._with_flag(other),
        )

    __rmul__ = __mul__

    def reciprocal(self) -> ClosedMotive:
        if self.scalar == 0:
            raise ZeroDivisionError("reciprocal of zero")
        return ClosedMotive.build(
            self.denominator_factors,
            self.numerator_factors,
            Fraction(1) / Fraction(self.scalar),
            -self.l_power,
            self.uses_torsor_relation,
        )

    def __truediv__(self, other) -> ClosedMotive:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.reciprocal()

    def __rtruediv__(self, other) -> ClosedMotive:
        return self._coerce(other) * self.reciprocal()

    def __pow__(self, n: int) -> ClosedMotive:
        base = self if n >= 0 else self.reciprocal()
        out = ClosedMotive.constant(1)
        for _ in range(abs(n)):
            out = out * base
        return out

    def __add__(self, other) -> ClosedMotive:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        da, db = Counter(self.denominator_factors), Counter(other.denominator_factors)
        common = da | db
        na = self.numerator()
        for f in (common - da).elements():
            na = na * f
        nb = other.numerator()
        for f in (common - db).elements():
            nb = nb * f
        return ClosedMotive.build([na + nb], list(common.elements()), uses_torsor_relation=self._with_flag(other))

    __radd__ = __add__

    def __neg__(self) -> ClosedMotive:
        return ClosedMotive(-self.scalar, self.l_power, self.numerator_factors, self.denominator_factors, self.uses_torsor_relation)

    def __sub__(self, other) -> ClosedMotive:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> ClosedMotive:
        return (-self) + other

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.numerator() * other.denominator() == other.numerator() * self.denominator()

    __hash__ = None

    def expand(self, floor: int) -> GradedMotiveSeries:
        return expand(self, floor)

    def __str__(self) -> str:
        num = format_poly(self.numerator())
        if not self.denominator_factors:
            return num
        dens = "".join(f"({format_poly(f)})" for f in self.denominator_factors)
        return f"({num}) / {dens}"

    def __repr__(self) -> str:
        return f"ClosedMotive({self})"

    def to_json_obj(self) -> dict[str, Any]:
        return {
            "kind": "closed",
            "scalar": format_rational(self.scalar),
            "l_power": self.l_power,
            "numerator_factors": [poly_to_json(f) for f in self.numerator_factors],
            "denominator_factors": [poly_to_json(f) for f in self.denominator_factors],
            "uses_torsor_relation": self.uses_torsor_relation,
        }

    def to_json(self) -> str:
        return canonical_json(self.to_json_obj())


def expand(x: ClosedMotive, floor: int) -> GradedMotiveSeries:
    """Series expansion of a closed form, exact modulo dimension < floor."""
    num = x.numerator()
    if not num:
        return GradedMotiveSeries(Poly(), floor)
    rel = floor - top_weight(num, dimension)
    inv = ONE
    for f in x.denominator_factors:
        inv = mul_truncated(inv, _cached_inverse(f, int(rel)), dimension, rel)
    return GradedMotiveSeries(mul_truncated(num, inv, dimension, floor), floor)


# ---------------------------------------------------------------------------
# standard motives
# ---------------------------------------------------------------------------


def gl_motive(n: int) -> ClosedMotive:
    """``(L^n - 1)(L^n - L)...(L^n - L^{n-1})``."""
    if n < 1:
        raise ValueError("n >= 1")
    return ClosedMotive.build([L ** n - L ** k for k in range(n)])


def group_motive(rd) -> ClosedMotive:
    """``L^{dim G} prod (1 - L^{-d_i})`` for a split semisimple root datum."""
    return ClosedMotive.build(
        [1 - Poly.monomial((-d,)) for d in rd.degrees],
        l_power=rd.dim_G,
    )


def classifying_motive(rd) -> ClosedMotive:
    """``mu(BG) = 1 / mu(G)``; valid only with the torsor relation for G."""
    g = group_motive(rd)
    return ClosedMotive.build(
        g.denominator_factors,
        g.numerator_factors,
        Fraction(1) / Fraction(g.scalar),
        -g.l_power,
        uses_torsor_relation=True,
    )


def quotient_stack_motive(x: ClosedMotive | Poly | Rational, n: int) -> ClosedMotive:
    """Motive of ``[X / GL_n]`` given the class of ``X``."""
    return ClosedMotive._coerce(x) / gl_motive(n)


def strata_sum(strata: Iterable[tuple[ClosedMotive | Poly | Rational, int]]) -> ClosedMotive:
    """Motive of a stack with a finite standard stratification ``[X_i / GL_{n_i}]``."""
    total = ClosedMotive.constant(0)
    for x, n in strata:
        total = total + quotient_stack_motive(x, n)
    return total


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def from_json(text: str | Mapping[str, Any]) -> GradedMotiveSeries | ClosedMotive:
    data = json.loads(text) if isinstance(text, str) else text
    kind = data.get("kind")
    if kind == "series":
        floor = data["precision_floor"]
        return GradedMotiveSeries(poly_from_json(data["monomials"]), NEG_INF if floor is None else int(floor))
    if kind == "closed":
        return ClosedMotive.build(
            [poly_from_json(f) for f in data["numerator_factors"]],
            [poly_from_json(f) for f in data["denominator_factors"]],
            parse_rational(data["scalar"]),
            int(data["l_power"]),
            bool(data["uses_torsor_relation"]),
        )
    raise ValueError(f"unknown motive kind {kind!r}")


# ---------------------------------------------------------------------------
# realizations
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class RationalFunction:
    """Quotient of Laurent polynomials in the realization's target variables."""

    numerator: Poly
    denominator: Poly = ONE

    def __post_init__(self):
        if not self.denominator:
            raise DivisionByZero("zero denominator")

    def __mul__(self, other: RationalFunction) -> RationalFunction:
        return RationalFunction(self.numerator * other.numerator, self.denominator * other.denominator)

    def __add__(self, other: RationalFunction) -> RationalFunction:
        if self.denominator == other.denominator:
            return RationalFunction(self.numerator + other.numerator, self.denominator)
        return RationalFunction(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.numerator * other.denominator == other.numerator * self.denominator

    __hash__ = None


@dataclass(frozen=True)
class RealizedSeries:
    """Image of a truncated series: exact for target degree >= ``floor``."""

    value: Poly
    floor: Floor


REALIZATION_NAMES = ("universal", "poincare", "serre", "count")


@dataclass(frozen=True)
class Realization:
    """Ring homomorphism out of the motive ring.

    ``poincare``: ``L -> t^2``, ``a_j -> C(2g, j) t^j`` (target variable 0 = t).
    ``serre``: ``L -> x y``, ``a_j ->`` coefficient of ``z^j`` in
    ``(1 + z x)^g (1 + z y)^g`` (target variables 0, 1 = x, y).
    ``count``: ``L -> q``, ``a_j ->`` j-th coefficient of the Weil numerator.
    """

    name: str
    genus: int = 0
    image_of_L: Poly | Rational | None = None
    image_of_a: tuple = ()
    q: int | None = None

    @classmethod
    def universal(cls) -> Realization:
        return cls("universal")

    @classmethod
    def poincare(cls, genus: int) -> Realization:
        t = Poly.var(0)
        return cls("poincare", genus, t ** 2, tuple(math.comb(2 * genus, j) * t ** j for j in range(1, 2 * genus + 1)))

    @classmethod
    def serre(cls, genus: int) -> Realization:
        x, y = Poly.var(0), Poly.var(1)
        images = []
        for j in range(1, 2 * genus + 1):
            images.append(
                sum(
                    (math.comb(genus, i) * math.comb(genus, j - i) * x ** i * y ** (j - i) for i in range(max(0, j - genus), min(j, genus) + 1)),
                    Poly(),
                )
            )
        return cls("serre", genus, x * y, tuple(images))

    @classmethod
    def count(cls, q: int, weil: Sequence[Rational] = ()) -> Realization:
        if len(weil) % 2:
            raise ValueError("Weil numerator has 2g coefficients")
        return cls("count", len(weil) // 2, normalize_rational(Fraction(q)), tuple(normalize_rational(Fraction(w)) for w in weil), q)

    def _check_symbols(self, p: Poly) -> None:
        n = p.nvars() - 1
        if n > 2 * self.genus:
            raise ValueError(f"symbol a_{n} has no image in a genus-{self.genus} realization")

    def apply(self, p: Poly) -> Poly | Rational:
        if self.name == "universal":
            return p
        self._check_symbols(p)
        if self.name == "count":
            return p.evaluate([self.image_of_L, *self.image_of_a])
        return p.substitute([self.image_of_L, *self.image_of_a])

    def target_weight(self, exp: Exponent) -> int:
        return sum(exp)

    def __call__(self, x):
        return realize(x, self)


def realize(x: ClosedMotive | GradedMotiveSeries | Poly, r: Realization):
    """Image of ``x`` under the realization ``r``.

    Closed forms map to a :class:`RationalFunction` (or a rational for ``count``);
    exact series map to a polynomial; truncated series to a :class:`RealizedSeries`
    (a :class:`CountEstimate` for ``count``).
    """
    if r.name == "universal":
        return x
    if isinstance(x, Poly):
        return r.apply(x)
    if isinstance(x, GradedMotiveSeries):
        value = r.apply(x.poly)
        if x.is_exact:
            return value
        if r.name == "count":
            return counting_measure(x, r.q, r.image_of_a)
        # dimension D maps to target degree <= 2D, so omitted terms have degree <= 2F - 2
        return RealizedSeries(value, 2 * x.precision_floor - 1)
    if isinstance(x, ClosedMotive):
        if r.name == "count":
            den: Rational = 1
            for f in x.denominator_factors:
                v = r.apply(f)
                if v == 0:
                    raise DivisionByZero(f"factor {format_poly(f)} vanishes at q={r.q}")
                den = den * v
            return normalize_rational(Fraction(r.apply(x.numerator())) / den)
        den_poly = ONE
        for f in x.denominator_factors:
            v = r.apply(f)
            if not v:
                raise DivisionByZero(f"factor {format_poly(f)} vanishes under {r.name}")
            den_poly = den_poly * v
        return RationalFunction(r.apply(x.numerator()), den_poly)
    raise TypeError(f"cannot realize {type(x).__name__}")


# ---------------------------------------------------------------------------
# counting measure
# ---------------------------------------------------------------------------


def frobenius_weight(exp: Exponent) -> int:
    """Weight grading: ``L`` has weight 2, ``a_j`` weight ``j``."""
    if not exp:
        return 0
    return 2 * exp[0] + sum(j * exp[j] for j in range(1, len(exp)))


def roots_inside_unit_disk(coeffs: Sequence[Rational]) -> bool:
    """Exact Schur-Cohn test: every complex root of ``sum c_k z^k`` has ``|z| < 1``.

    ``coeffs[k]`` is the coefficient of ``z^k``; the leading one must be nonzero.
    """
    p = [Fraction(c) for c in coeffs]
    while len(p) > 1:
        a0, an = p[0], p[-1]
        if abs(a0) >= abs(an):
            return False
        n = len(p) - 1
        # (a_n p(z) - a_0 z^n p(1/z)) / z
        p = [an * p[k + 1] - a0 * p[n - k - 1] for k in range(n)]
    return True


def _weighted_univariate(f: Poly, r: Realization) -> list[Fraction]:
    """Substitute the count data into a unit factor, grading by -weight."""
    coeffs: dict[int, Fraction] = {}
    for exp, c in f.items():
        deg = -frobenius_weight(exp)
        coeffs[deg] = coeffs.get(deg, 0) + Fraction(r.apply(Poly.monomial(exp, c)))
    n = max((d for d, c in coeffs.items() if c), default=0)
    return [coeffs.get(k, Fraction(0)) for k in range(n + 1)]


def factor_converges(f: Poly, r: Realization) -> bool:
    """Whether ``1/f`` expands to an absolutely convergent count under ``r``."""
    poly = _weighted_univariate(f, r)
    if len(poly) == 1:
        return poly[0] != 0
    if poly[0] == 0:
        return False
    # roots of poly outside the closed unit disk <=> reversed poly has roots inside
    return roots_inside_unit_disk(list(reversed(poly)))


def _count_slices_by_l(p: Poly, r: Realization) -> dict[int, Fraction]:
    """Count values of the curve-symbol part, grouped by the power of L."""
    slices: dict[int, Fraction] = {}
    for exp, c in p.items():
        e = exp[0] if exp else 0
        rest = Poly.monomial((0,) + tuple(exp[1:]), c)
        slices[e] = slices.get(e, 0) + Fraction(r.apply(rest))
    return slices


@dataclass(frozen=True)
class CountEstimate:
    """Partial counting measure of a truncated series with a tail bound."""

    value: Fraction
    tail_bound: float

    def contains(self, x: Rational) -> bool:
        return abs(float(Fraction(x) - self.value)) <= self.tail_bound


def counting_measure(
    x: ClosedMotive | GradedMotiveSeries,
    q: int,
    weil: Sequence[Rational] = (),
    growth_degree: int = 3,
):
    """Counting measure of a convergent element.

    For a closed form the exact rational value is returned; every denominator
    factor must pass the convergence check or :class:`NonConvergent` is raised.

    For a truncated series the partial sum is returned as a
    :class:`CountEstimate`; the tail bound assumes the normalized coefficient
    of ``L^D`` grows at most like ``(top - D + 1)^growth_degree``.
    """
    r = Realization.count(q, weil)
    if isinstance(x, ClosedMotive):
        for f in x.denominator_factors:
            if not factor_converges(f, r):
                raise NonConvergent(f"1/({format_poly(f)}) does not converge at q={q}")
        return realize(x, r)
    if x.is_exact:
        return CountEstimate(Fraction(r.apply(x.poly)), 0.0)
    slices = _count_slices_by_l(x.poly, r)
    value = sum((v * Fraction(q) ** e for e, v in slices.items()), Fraction(0))
    top = max(slices, default=x.precision_floor)
    bound_c = max(
        (abs(float(v)) / (top - e + 1) ** growth_degree for e, v in slices.items()),
        default=1.0,
    )
    floor = x.precision_floor
    tail, k = 0.0, 0
    while True:
        e = floor - 1 - k
        term = bound_c * (top - e + 1) ** growth_degree * float(q) ** e
        tail += term
        k += 1
        if term < 1e-18 * max(tail, 1e-300) or k > 10_000:
            break
    return CountEstimate(value, tail)


def berlekamp_massey(seq: Sequence[Rational]) -> list[Fraction]:
    """Shortest recurrence ``[1, c_1, .., c_n]`` with ``sum c_i s_{k-i} = 0``."""
    s = [Fraction(v) for v in seq]
    c, b = [Fraction(1)], [Fraction(1)]
    ell, m, bd = 0, 1, Fraction(1)
    for n in range(len(s)):
        d = s[n] + sum(c[i] * s[n - i] for i in range(1, ell + 1))
        if d == 0:
            m += 1
            continue
        coef = d / bd
        t = list(c)
        c = c + [Fraction(0)] * max(0, len(b) + m - len(c))
        for i, bi in enumerate(b):
            c[i + m] -= coef * bi
        if 2 * ell <= n:
            ell, b, bd, m = n + 1 - ell, t, d, 1
        else:
            m += 1
    c = c[: ell + 1] + [Fraction(0)] * max(0, ell + 1 - len(c))
    return c


def resum_rational(seq: Sequence[Rational], x: Rational, min_confirm: int = 4) -> Fraction:
    """Exact value of ``sum seq[n] x^n`` assuming a rational generating function.

    The recurrence found by Berlekamp-Massey must be confirmed by at least
    ``min_confirm`` terms beyond the ``2n`` needed to determine it, and the
    series must converge at ``x`` (all poles outside ``|z| <= |x|``).
    """
    conn = berlekamp_massey(seq)
    order = len(conn) - 1
    if len(seq) < 2 * order + min_confirm:
        raise ValueError(f"recurrence of order {order} not confirmed by {len(seq)} terms")
    x = Fraction(x)
    # poles: roots of conn(z); need |z| > |x|, i.e. conn(x w) has roots |w| > 1
    scaled = [c * x ** i for i, c in enumerate(conn)]
    while len(scaled) > 1 and scaled[-1] == 0:
        scaled.pop()
    if len(scaled) > 1 and not roots_inside_unit_disk(list(reversed(scaled))):
        raise NonConvergent("generating function has a pole inside the evaluation radius")
    s = [Fraction(v) for v in seq]
    num = [sum(conn[i] * s[k - i] for i in range(0, min(k, order) + 1)) for k in range(order)]
    numerator = sum((v * x ** k for k, v in enumerate(num)), Fraction(0))
    denominator = sum((c * x ** i for i, c in enumerate(conn)), Fraction(0))
    return numerator / denominator


def resum_counting_series(series: GradedMotiveSeries, q: int, weil: Sequence[Rational] = ()) -> Fraction:
    """Independent exact resummation of a truncated series' counting measure.

    Slices by L-exponent are complete down to the precision floor; their count
    values are fitted by a linear recurrence and summed in closed form.
    """
    if series.is_exact:
        return Fraction(Realization.count(q, weil).apply(series.poly))
    slices = _count_slices_by_l(series.poly, Realization.count(q, weil))
    top = max(slices)
    seq = [slices.get(e, Fraction(0)) for e in range(top, series.precision_floor - 1, -1)]
    return Fraction(q) ** top * resum_rational(seq, Fraction(1, q))
