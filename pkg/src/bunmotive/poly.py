"""Sparse Laurent polynomials with exact rational coefficients.

A :class:`Poly` maps exponent tuples to nonzero coefficients.  Exponent tuples
have trailing zeros stripped, so the same monomial has one key no matter how
many variables the surrounding code has in mind.  Exponents may be negative.

Truncated (power-series style) arithmetic is driven by a *weight* function on
exponent tuples; everything of weight below a floor is discarded.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import zip_longest
from typing import Callable, Iterable, Iterator, Mapping, Union

Rational = Union[int, Fraction]
Exponent = tuple[int, ...]
Weight = Callable[[Exponent], int]

NEG_INF = float("-inf")


def normalize_rational(c: Rational) -> Rational:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def strip(exp: Iterable[int]) -> Exponent:
    out = list(exp)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def add_exponents(a: Exponent, b: Exponent) -> Exponent:
    if not b:
        return a
    if not a:
        return b
    if len(a) == 1 and len(b) == 1:
        s = a[0] + b[0]
        return (s,) if s else ()
    return strip(x + y for x, y in zip_longest(a, b, fillvalue=0))


def scale_exponent(a: Exponent, k: int) -> Exponent:
    return strip(x * k for x in a)


class Poly:
    """Immutable sparse Laurent polynomial over Q."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, Rational] | None = None):
        clean: dict[Exponent, Rational] = {}
        if terms:
            for exp, c in terms.items():
                if c:
                    key = strip(exp)
                    v = clean.get(key, 0) + c
                    if v:
                        clean[key] = normalize_rational(v)
                    else:
                        clean.pop(key, None)
        self._terms = clean
        self._hash: int | None = None

    @classmethod
    def _raw(cls, terms: dict[Exponent, Rational]) -> Poly:
        # terms must already be stripped and free of zeros
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, c: Rational) -> Poly:
        return cls._raw({(): normalize_rational(c)} if c else {})

    @classmethod
    def monomial(cls, exp: Iterable[int], c: Rational = 1) -> Poly:
        return cls._raw({strip(exp): normalize_rational(c)} if c else {})

    @classmethod
    def var(cls, i: int, power: int = 1) -> Poly:
        exp = [0] * (i + 1)
        exp[i] = power
        return cls.monomial(exp)

    # -- mapping-ish access -------------------------------------------------
    @property
    def terms(self) -> dict[Exponent, Rational]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __iter__(self) -> Iterator[Exponent]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coefficient(self, exp: Iterable[int]) -> Rational:
        return self._terms.get(strip(exp), 0)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and () in self._terms)

    def constant_term(self) -> Rational:
        return self._terms.get((), 0)

    def nvars(self) -> int:
        return max((len(e) for e in self._terms), default=0)

    # -- ring operations ----------------------------------------------------
    def __add__(self, other: Poly | Rational) -> Poly:
        if not isinstance(other, Poly):
            other = Poly.constant(other)
        out = dict(self._terms)
        for exp, c in other._terms.items():
            v = out.get(exp, 0) + c
            if v:
                out[exp] = normalize_rational(v)
            else:
                del out[exp]
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: Poly | Rational) -> Poly:
        if not isinstance(other, Poly):
            other = Poly.constant(other)
        return self + (-other)

    def __rsub__(self, other: Rational) -> Poly:
        return Poly.constant(other) - self

    def __mul__(self, other: Poly | Rational) -> Poly:
        if not isinstance(other, Poly):
            if not other:
                return Poly()
            c = normalize_rational(other)
            return Poly._raw({e: normalize_rational(v * c) for e, v in self._terms.items()})
        if len(self._terms) < len(other._terms):
            a, b = other._terms, self._terms
        else:
            a, b = self._terms, other._terms
        out: dict[Exponent, Rational] = {}
        for eb, cb in b.items():
            for ea, ca in a.items():
                key = add_exponents(ea, eb)
                out[key] = out.get(key, 0) + ca * cb
        return Poly._raw({e: normalize_rational(c) for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly:
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("negative power of a non-monomial")
            (exp, c), = self._terms.items()
            return Poly.monomial(scale_exponent(exp, n), Fraction(1) / c ** (-n))
        result = Poly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ({(): other} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"Poly({self._terms!r})"

    # -- transformations ----------------------------------------------------
    def map_exponents(self, f: Callable[[Exponent], Iterable[int]]) -> Poly:
        """Apply ``f`` to every exponent; terms sent to the same exponent are added."""
        out: dict[Exponent, Rational] = {}
        for e, c in self._terms.items():
            k = strip(f(e))
            out[k] = out.get(k, 0) + c
        return Poly(out)

    def shift(self, exp: Iterable[int]) -> Poly:
        exp = strip(exp)
        return Poly._raw({add_exponents(e, exp): c for e, c in self._terms.items()})

    def filter(self, keep: Callable[[Exponent], bool]) -> Poly:
        return Poly._raw({e: c for e, c in self._terms.items() if keep(e)})

    def substitute(self, images: list[Poly]) -> Poly:
        """Ring substitution ``x_i -> images[i]``.

        Negative powers are only allowed for variables whose image is a
        monomial with nonzero coefficient.
        """
        cache: dict[tuple[int, int], Poly] = {}

        def power(i: int, k: int) -> Poly:
            key = (i, k)
            if key not in cache:
                cache[key] = images[i] ** k
            return cache[key]

        total = Poly()
        for exp, c in self._terms.items():
            term = Poly.constant(c)
            for i, k in enumerate(exp):
                if k:
                    term = term * power(i, k)
            total = total + term
        return total

    def evaluate(self, values: list[Rational]) -> Rational:
        total: Rational = 0
        for exp, c in self._terms.items():
            term: Rational = c
            for i, k in enumerate(exp):
                if k:
                    v = values[i]
                    term = term * (v ** k if k > 0 else Fraction(1) / Fraction(v) ** (-k))
            total += term
        return normalize_rational(total)


def weight_range(p: Poly, weight: Weight) -> tuple[float, float]:
    ws = [weight(e) for e in p]
    if not ws:
        return NEG_INF, NEG_INF
    return max(ws), min(ws)


def top_weight(p: Poly, weight: Weight) -> float:
    return max((weight(e) for e in p), default=NEG_INF)


def truncate(p: Poly, weight: Weight, floor: float) -> Poly:
    if floor == NEG_INF:
        return p
    return p.filter(lambda e: weight(e) >= floor)


def mul_truncated(p: Poly, q: Poly, weight: Weight, floor: float) -> Poly:
    """Product of ``p`` and ``q`` keeping only terms of weight >= floor."""
    if floor == NEG_INF:
        return p * q
    if not p or not q:
        return Poly()
    a = sorted(((weight(e), e, c) for e, c in p.items()), reverse=True)
    b = sorted(((weight(e), e, c) for e, c in q.items()), reverse=True)
    out: dict[Exponent, Rational] = {}
    for wa, ea, ca in a:
        limit = floor - wa
        for wb, eb, cb in b:
            if wb < limit:
                break
            key = add_exponents(ea, eb)
            out[key] = out.get(key, 0) + ca * cb
    return Poly._raw({e: normalize_rational(c) for e, c in out.items() if c})


class NotAUnit(ArithmeticError):
    """The leading term is missing, not unique, or not invertible."""


def unit_leading_term(p: Poly, weight: Weight, invertible: Callable[[Exponent], bool]) -> tuple[Exponent, Rational]:
    if not p:
        raise NotAUnit("zero has no inverse")
    top = top_weight(p, weight)
    leaders = [(e, c) for e, c in p.items() if weight(e) == top]
    if len(leaders) != 1:
        raise NotAUnit(f"{len(leaders)} monomials share the top weight {top}")
    exp, c = leaders[0]
    if not invertible(exp):
        raise NotAUnit(f"leading monomial {exp} is not invertible")
    return exp, c


def inverse_truncated(
    p: Poly,
    weight: Weight,
    floor: int,
    invertible: Callable[[Exponent], bool] = lambda e: True,
) -> Poly:
    """Inverse of a unit ``p`` modulo terms of weight < floor.

    ``p = c m (1 + y)`` with ``m`` the unique top-weight monomial; the inverse is
    ``c^-1 m^-1 (1 - y + y^2 - ...)``.  ``weight`` must be additive.
    """
    exp, c = unit_leading_term(p, weight, invertible)
    lead_inv = Poly.monomial(tuple(-k for k in exp), Fraction(1) / c)
    top = weight(exp)
    neg_y = -(p * lead_inv - 1)  # every term has weight < 0
    rel_floor = floor + top
    result = Poly.constant(1)
    power = Poly.constant(1)
    while True:
        power = mul_truncated(power, neg_y, weight, rel_floor)
        if not power:
            break
        result = result + power
    return mul_truncated(result, lead_inv, weight, floor)
