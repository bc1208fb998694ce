"""Motivic zeta functions of curves and their realizations.

``Z(C, u) = sum mu(Sym^n C) u^n = N(u) / ((1 - u)(1 - L u))`` where the
numerator ``N(u) = 1 + a_1 u + ... + a_{2g} u^{2g}`` is kept symbolic unless
the curve is given more concretely.
"""

from __future__ import annotations

import ast
import math
import re
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import CurveSpecError, DivergentSpecialValue
from .motive_ring import L, ClosedMotive, Realization, a, format_poly
from .poly import Poly, Rational, normalize_rational


@dataclass(frozen=True)
class CurveData:
    """A smooth projective curve as far as its zeta function is concerned.

    ``numerator`` holds ``a_1 .. a_{2g}`` as motive-ring polynomials (the
    universal curve uses the bare symbols).  ``q``/``weil`` carry an optional
    count specialization: the Weil-numerator coefficients over ``F_q``.
    """

    genus: int
    numerator: tuple[Poly, ...]
    q: int | None = None
    weil: tuple[Rational, ...] | None = None
    label: str = ""

    def __post_init__(self):
        if self.genus < 0:
            raise CurveSpecError("genus must be non-negative")
        if len(self.numerator) != 2 * self.genus:
            raise CurveSpecError(f"genus {self.genus} needs {2 * self.genus} numerator coefficients, got {len(self.numerator)}")
        if self.weil is not None:
            if self.q is None:
                raise CurveSpecError("Weil data without q")
            if len(self.weil) != 2 * self.genus:
                raise CurveSpecError("Weil numerator length must be 2g")
            if weil_numerator_value(self.weil, 1) <= 0:
                raise CurveSpecError("class number P(1) must be positive")

    @classmethod
    def universal(cls, genus: int) -> CurveData:
        return cls(genus, tuple(a(j) for j in range(1, 2 * genus + 1)), label=f"genus={genus}")

    @classmethod
    def over_fq(cls, q: int, weil: Sequence[Rational], label: str = "") -> CurveData:
        g = len(weil) // 2
        return cls(g, tuple(a(j) for j in range(1, 2 * g + 1)), q, tuple(normalize_rational(Fraction(w)) for w in weil), label)

    @property
    def coefficients(self) -> tuple[Poly, ...]:
        """``(1, a_1, ..., a_{2g})``."""
        return (Poly.constant(1),) + self.numerator

    def count_realization(self, q: int | None = None) -> Realization:
        q = self.q if q is None else q
        if q is None:
            raise CurveSpecError("curve has no finite-field data")
        if self.weil is None:
            if self.genus and any(p.nvars() > 1 for p in self.numerator):
                raise CurveSpecError("symbolic numerator needs Weil data to be counted")
            return Realization.count(q, [0] * (2 * self.genus))
        if q != self.q:
            raise CurveSpecError(f"curve is defined over F_{self.q}, not F_{q}")
        return Realization.count(q, self.weil)

    def lint_functional_equation(self) -> list[str]:
        """Problems with ``a_{2g-j} = q^{g-j} a_j`` on the Weil data, if any."""
        if self.weil is None:
            return []
        w = (1,) + self.weil
        g, q = self.genus, self.q
        return [f"a_{2 * g - j} != q^{g - j} a_{j}" for j in range(g) if w[2 * g - j] != q ** (g - j) * w[j]]


@dataclass(frozen=True)
class ZetaFunction:
    curve: CurveData

    @property
    def numerator(self) -> tuple[Poly, ...]:
        return self.curve.coefficients

    @property
    def denominator(self) -> tuple[Poly, Poly]:
        """``(1 - u)(1 - L u)`` as coefficient lists in ``u``."""
        return (Poly.constant(1), Poly.constant(-1)), (Poly.constant(1), -L)

    def coefficient(self, n: int) -> ClosedMotive:
        return sym_class(self.curve, n)

    def series(self, order: int) -> list[ClosedMotive]:
        return [sym_class(self.curve, n) for n in range(order + 1)]

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.numerator):
            if not c:
                continue
            body = format_poly(c)
            if k == 0:
                terms.append(body)
            else:
                u = "u" if k == 1 else f"u^{k}"
                terms.append(u if c == 1 else f"({body}) {u}")
        return f"({' + '.join(terms)}) / ((1 - u)(1 - L u))"


def zeta(curve: CurveData) -> ZetaFunction:
    return ZetaFunction(curve)


def _geometric_l(m: int) -> Poly:
    """``1 + L + ... + L^m`` (zero for m < 0)."""
    return Poly({(i,): 1 for i in range(m + 1)})


def sym_class_poly(curve: CurveData, n: int) -> Poly:
    if n < 0:
        raise ValueError("n >= 0")
    out = Poly()
    for k, c in enumerate(curve.coefficients[: n + 1]):
        out = out + c * _geometric_l(n - k)
    return out


def sym_class(curve: CurveData, n: int) -> ClosedMotive:
    """``mu(Sym^n C)``, the ``u^n`` coefficient of the zeta function."""
    return ClosedMotive.from_poly(sym_class_poly(curve, n))


def _numerator_at(curve: CurveData, d: int) -> Poly:
    return sum((c.shift((-d * k,)) for k, c in enumerate(curve.coefficients)), Poly())


def zeta_special_value(curve: CurveData, d: int) -> ClosedMotive:
    """``Z(C, L^{-d})`` for ``d >= 2``."""
    if d <= 1:
        raise DivergentSpecialValue(f"Z(C, L^-{d}) does not converge; need d >= 2")
    return ClosedMotive.build(
        [_numerator_at(curve, d)],
        [1 - Poly.monomial((-d,)), 1 - Poly.monomial((1 - d,))],
    )


def poincare_sym(g: int, n: int) -> Poly:
    """``u^n`` coefficient of ``(1 + u t)^{2g} / ((1 - u)(1 - u t^2))`` (variable 0 = t)."""
    out = Poly()
    for k in range(min(n, 2 * g) + 1):
        tail = Poly({(2 * i,): 1 for i in range(n - k + 1)})
        out = out + tail.shift((k,)) * math.comb(2 * g, k)
    return out


def weil_numerator_value(weil: Sequence[Rational], u: Rational) -> Rational:
    return sum((Fraction(c) * Fraction(u) ** k for k, c in enumerate((1, *weil))), Fraction(0))


def weil_zeta_value(q: int, weil: Sequence[Rational], s: int) -> Rational:
    """``zeta_K(s) = P(q^{-s}) / ((1 - q^{-s})(1 - q^{1-s}))``."""
    if s < 2:
        raise DivergentSpecialValue("zeta_K(s) needs s >= 2 here")
    u = Fraction(1, q ** s)
    return normalize_rational(weil_numerator_value(weil, u) / ((1 - u) * (1 - q * u)))


def weil_from_counts(q: int, counts: Sequence[int]) -> tuple[Rational, ...]:
    """Weil numerator ``c_1 .. c_{2g}`` from ``#C(F_{q^k})``, ``k = 1 .. g``.

    ``log P(u) = sum_k (N_k - 1 - q^k) u^k / k``, solved by Newton's identities,
    then completed with ``c_{2g-j} = q^{g-j} c_j``.
    """
    g = len(counts)
    s = [None] + [counts[k - 1] - 1 - q ** k for k in range(1, g + 1)]
    c: list[Fraction] = [Fraction(1)]
    for j in range(1, g + 1):
        c.append(sum((s[k] * c[j - k] for k in range(1, j + 1)), Fraction(0)) / j)
    for j in range(g + 1, 2 * g + 1):
        c.append(Fraction(q) ** (j - g) * c[2 * g - j])
    if any(x.denominator != 1 for x in c):
        raise CurveSpecError(f"point counts {list(counts)} do not give an integral Weil numerator")
    return tuple(int(x) for x in c[1:])


# ---------------------------------------------------------------------------
# spec parsing
# ---------------------------------------------------------------------------


def _split_top(s: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in s:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth:
        raise CurveSpecError(f"unbalanced brackets in {s!r}")
    parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


def _parse_list(s: str) -> list[str]:
    s = s.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise CurveSpecError(f"expected a bracketed list, got {s!r}")
    return _split_top(s[1:-1])


_SYMBOL_RE = re.compile(r"^a(\d+)$")


def parse_motive_expression(text: str) -> Poly:
    """Evaluate an expression in ``L`` and ``a1, a2, ...`` with rational constants."""
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise CurveSpecError(f"cannot parse {text!r}") from exc

    def ev(node) -> Poly:
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return Poly.constant(node.value)
        if isinstance(node, ast.Name):
            if node.id == "L":
                return L
            m = _SYMBOL_RE.match(node.id)
            if m and int(m.group(1)) >= 1:
                return a(int(m.group(1)))
            raise CurveSpecError(f"unknown symbol {node.id!r}")
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            left = ev(node.left)
            if isinstance(node.op, ast.Pow):
                right = ev(node.right)
                if not right.is_constant() or Fraction(right.constant_term()).denominator != 1:
                    raise CurveSpecError("exponents must be integers")
                return left ** int(right.constant_term())
            right = ev(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                if len(right) != 1:
                    raise CurveSpecError("can only divide by a monomial")
                return left * right ** -1
        raise CurveSpecError(f"unsupported syntax in {text!r}")

    return ev(tree)


def parse_curve(spec: str) -> CurveData:
    """Parse a curve spec.

    * ``genus=g`` (or ``P1``): universal curve of genus g;
    * ``fq:q=Q,counts=[N_1,...,N_g]`` or ``fq:q=Q,weil=[c_1,...,c_2g]``;
    * ``numerator=[e_1,...,e_2g]`` with entries in ``L`` and ``a1, a2, ...``.
    """
    spec = spec.strip()
    if spec.upper() == "P1":
        return CurveData.universal(0)
    if spec.startswith("genus="):
        try:
            g = int(spec[len("genus="):])
        except ValueError:
            raise CurveSpecError(f"bad genus in {spec!r}") from None
        return CurveData.universal(g)
    if spec.startswith("fq:"):
        fields = {}
        for part in _split_top(spec[3:]):
            key, sep, value = part.partition("=")
            if not sep:
                raise CurveSpecError(f"expected key=value, got {part!r}")
            fields[key.strip()] = value.strip()
        unknown = set(fields) - {"q", "counts", "weil"}
        if unknown or "q" not in fields:
            raise CurveSpecError(f"fq spec needs q and one of counts/weil; got {sorted(fields)}")
        try:
            q = int(fields["q"])
            if "counts" in fields and "weil" in fields:
                raise CurveSpecError("give counts or weil, not both")
            if "weil" in fields:
                weil = tuple(normalize_rational(Fraction(x)) for x in _parse_list(fields["weil"]))
            else:
                weil = weil_from_counts(q, [int(x) for x in _parse_list(fields.get("counts", "[]"))])
        except ValueError as exc:
            raise CurveSpecError(str(exc)) from None
        if q < 2:
            raise CurveSpecError("q must be a prime power >= 2")
        return CurveData.over_fq(q, weil, label=spec)
    if spec.startswith("numerator="):
        entries = [parse_motive_expression(e) for e in _parse_list(spec[len("numerator="):])]
        if len(entries) % 2:
            raise CurveSpecError("numerator needs an even number (2g) of coefficients")
        if entries and not entries[-1]:
            warnings.warn(f"degenerate zeta numerator: a_{len(entries)} = 0", stacklevel=2)
        return CurveData(len(entries) // 2, tuple(entries), label=spec)
    raise CurveSpecError(f"unrecognized curve spec {spec!r}")


def sym_class_table(curve: CurveData, order: int) -> list[dict]:
    """JSON-ready table of ``mu(Sym^n C)`` for ``n <= order``."""
    from .motive_ring import poly_to_json

    return [{"n": n, "class": poly_to_json(sym_class_poly(curve, n))} for n in range(order + 1)]


__all__ = [
    "CurveData",
    "ZetaFunction",
    "parse_curve",
    "parse_motive_expression",
    "poincare_sym",
    "sym_class",
    "sym_class_poly",
    "sym_class_table",
    "weil_from_counts",
    "weil_zeta_value",
    "zeta",
    "zeta_special_value",
]
