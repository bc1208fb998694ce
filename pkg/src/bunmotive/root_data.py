"""Split root data, finite and affine Weyl groups, dominant cocharacters.

Conventions.  ``cartan_matrix[i][j] = <alpha_i^vee, alpha_j>``; roots are
integer vectors in simple-root coordinates and coroots in simple-coroot
coordinates.  Simple roots are numbered as in Bourbaki.  A cocharacter is
stored by its coweight coordinates ``c_i = <lambda, alpha_i>``, so dominance
is simply ``c_i >= 0``.
"""

from __future__ import annotations

import json
import math
import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from typing import Iterable, Sequence

from .errors import InvalidType, LimitExceeded, NotDominant
from .poly import Poly

SIMPLY_CONNECTED = "simply_connected"
ADJOINT = "adjoint"

WEYL_BFS_LIMIT = 1_000_000

_ISOGENY_ALIASES = {
    None: SIMPLY_CONNECTED,
    "sc": SIMPLY_CONNECTED,
    "simply_connected": SIMPLY_CONNECTED,
    "adjoint": ADJOINT,
    "ad": ADJOINT,
}

_EXCEPTIONAL_DEGREES = {
    ("E", 6): (2, 5, 6, 8, 9, 12),
    ("E", 7): (2, 6, 8, 10, 12, 14, 18),
    ("E", 8): (2, 8, 12, 14, 18, 20, 24, 30),
    ("F", 4): (2, 6, 8, 12),
    ("G", 2): (2, 6),
}


def _check_type(cartan_type: str, rank: int) -> None:
    ok = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 2,
        "D": rank >= 4,
        "E": rank in (6, 7, 8),
        "F": rank == 4,
        "G": rank == 2,
    }.get(cartan_type, False)
    if not ok:
        raise InvalidType(f"no root system of type {cartan_type}{rank}")


def cartan_matrix(cartan_type: str, rank: int) -> tuple[tuple[int, ...], ...]:
    """Cartan matrix of an irreducible type in Bourbaki numbering."""
    _check_type(cartan_type, rank)
    n = rank
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = 2

    def link(i: int, j: int, a_ij: int = -1, a_ji: int = -1) -> None:
        m[i][j], m[j][i] = a_ij, a_ji

    if cartan_type in "ABC":
        for i in range(n - 1):
            link(i, i + 1)
        if cartan_type == "B":
            m[n - 1][n - 2] = -2
        elif cartan_type == "C":
            m[n - 2][n - 1] = -2
    elif cartan_type == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif cartan_type == "E":
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif cartan_type == "F":
        link(0, 1)
        link(1, 2, -1, -2)
        link(2, 3)
    elif cartan_type == "G":
        link(0, 1, -3, -1)
    return tuple(tuple(r) for r in m)


def degree_table(cartan_type: str, rank: int) -> tuple[int, ...]:
    """Degrees of the basic Weyl-group invariants (exponents plus one)."""
    _check_type(cartan_type, rank)
    n = rank
    if cartan_type == "A":
        return tuple(range(2, n + 2))
    if cartan_type in "BC":
        return tuple(range(2, 2 * n + 1, 2))
    if cartan_type == "D":
        return tuple(sorted(list(range(2, 2 * n - 1, 2)) + [n]))
    return _EXCEPTIONAL_DEGREES[(cartan_type, rank)]


def _root_system(cartan: Sequence[Sequence[int]]) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """Positive roots and matching coroots, by reflection closure."""
    n = len(cartan)
    unit = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen: dict[tuple[int, ...], tuple[int, ...]] = {}
    queue = deque()
    for i in range(n):
        seen[unit[i]] = unit[i]
        queue.append((unit[i], unit[i]))
    while queue:
        root, coroot = queue.popleft()
        for i in range(n):
            # <alpha_i^vee, root> and <coroot, alpha_i>
            p = sum(root[k] * cartan[i][k] for k in range(n))
            pc = sum(coroot[k] * cartan[k][i] for k in range(n))
            r2 = tuple(root[k] - p * (k == i) for k in range(n))
            c2 = tuple(coroot[k] - pc * (k == i) for k in range(n))
            if any(x > 0 for x in r2) and r2 not in seen:
                seen[r2] = c2
                queue.append((r2, c2))
    roots = sorted(seen, key=lambda r: (sum(r), tuple(-x for x in r)))
    return roots, [seen[r] for r in roots]


def _connected_components(cartan: Sequence[Sequence[int]], nodes: Sequence[int]) -> list[list[int]]:
    nodes = list(nodes)
    left = set(nodes)
    comps = []
    while left:
        start = min(left)
        comp, stack = [], [start]
        left.discard(start)
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in list(left):
                if cartan[i][j]:
                    left.discard(j)
                    stack.append(j)
        comps.append(sorted(comp))
    return sorted(comps)


def _sub_cartan(cartan, nodes: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(cartan[i][j] for j in nodes) for i in nodes)


def _short_simple_count(cartan: Sequence[Sequence[int]]) -> int:
    """Number of short simple roots of a connected diagram (symmetrizing ``d_i A_ij = d_j A_ji``)."""
    r = len(cartan)
    d: dict[int, Fraction] = {0: Fraction(1)}
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(r):
            if j != i and cartan[i][j] and j not in d:
                d[j] = d[i] * cartan[i][j] / cartan[j][i]
                stack.append(j)
    shortest = min(d.values())
    return sum(1 for v in d.values() if v == shortest)


def classify_irreducible(cartan: Sequence[Sequence[int]]) -> tuple[str, int]:
    """Type of a connected Cartan matrix, from rank, root count, lacing and root lengths."""
    r = len(cartan)
    n_pos = len(_root_system(cartan)[0])
    simply_laced = all(cartan[i][j] in (0, -1) for i in range(r) for j in range(r) if i != j)
    if r == 1:
        return "A", 1
    candidates = []
    if n_pos == r * (r + 1) // 2 and simply_laced:
        candidates.append(("A", r))
    if n_pos == r * r and not simply_laced:
        # B has a single short simple root, C a single long one
        candidates.append(("B", r) if r == 2 or _short_simple_count(cartan) == 1 else ("C", r))
    if r >= 4 and n_pos == r * (r - 1) and simply_laced:
        candidates.append(("D", r))
    for (t, k), _ in _EXCEPTIONAL_DEGREES.items():
        if k == r:
            nn = sum(d - 1 for d in _EXCEPTIONAL_DEGREES[(t, k)])
            if nn == n_pos and simply_laced == (t == "E"):
                candidates.append((t, k))
    if len(candidates) != 1:
        raise InvalidType(f"cannot classify Cartan matrix {cartan}")
    return candidates[0]


def degrees_of_cartan(cartan: Sequence[Sequence[int]], nodes: Sequence[int] | None = None) -> tuple[int, ...]:
    """Degrees of the Weyl group of the sub-diagram on ``nodes`` (all by default)."""
    nodes = range(len(cartan)) if nodes is None else nodes
    out: list[int] = []
    for comp in _connected_components(cartan, nodes):
        out.extend(degree_table(*classify_irreducible(_sub_cartan(cartan, comp))))
    return tuple(sorted(out))


def _smith_invariants(cartan: Sequence[Sequence[int]]) -> tuple[int, ...]:
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import smith_normal_form

    snf = smith_normal_form(Matrix(cartan), domain=ZZ)
    return tuple(abs(int(snf[i, i])) for i in range(snf.rows) if abs(int(snf[i, i])) != 1)


def _det(cartan: Sequence[Sequence[int]]) -> int:
    from sympy import Matrix

    return int(Matrix(cartan).det())


# ---------------------------------------------------------------------------
# root datum
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Component:
    cartan_type: str
    rank: int
    isogeny: str
    offset: int

    @property
    def label(self) -> str:
        suffix = "sc" if self.isogeny == SIMPLY_CONNECTED else "adjoint"
        return f"{self.cartan_type}{self.rank}-{suffix}"

    @property
    def nodes(self) -> range:
        return range(self.offset, self.offset + self.rank)


@dataclass(frozen=True, eq=False)
class RootDatum:
    """A split semisimple root datum, possibly reducible."""

    components: tuple[Component, ...]
    cartan_matrix: tuple[tuple[int, ...], ...]
    positive_roots: tuple[tuple[int, ...], ...]
    positive_coroots: tuple[tuple[int, ...], ...]
    degrees: tuple[int, ...]
    pi1_invariants: tuple[int, ...] = field(default=())

    @property
    def cartan_type(self) -> str:
        return "x".join(f"{c.cartan_type}{c.rank}" for c in self.components)

    @property
    def label(self) -> str:
        return "x".join(c.label for c in self.components)

    @property
    def rank(self) -> int:
        return len(self.cartan_matrix)

    @property
    def isogeny(self) -> str:
        kinds = {c.isogeny for c in self.components}
        return kinds.pop() if len(kinds) == 1 else "mixed"

    @property
    def dim_G(self) -> int:
        return self.rank + 2 * len(self.positive_roots)

    @property
    def pi1_order(self) -> int:
        return math.prod(self.pi1_invariants)

    @property
    def num_positive_roots(self) -> int:
        return len(self.positive_roots)

    @cached_property
    def two_rho(self) -> tuple[int, ...]:
        """Sum of positive roots, in simple-root coordinates."""
        return tuple(sum(r[k] for r in self.positive_roots) for k in range(self.rank))

    @cached_property
    def highest_roots(self) -> tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]:
        """(theta, theta^vee) for each irreducible component."""
        out = []
        for comp in self.components:
            best = max(
                (i for i, r in enumerate(self.positive_roots) if all(r[k] == 0 for k in range(self.rank) if k not in comp.nodes)),
                key=lambda i: sum(self.positive_roots[i]),
            )
            out.append((self.positive_roots[best], self.positive_coroots[best]))
        return tuple(out)

    @cached_property
    def coxeter_numbers(self) -> tuple[int, ...]:
        return tuple(max(degree_table(c.cartan_type, c.rank)) for c in self.components)

    def weyl_order_formula(self) -> int:
        """``|W| = r! * prod(marks of theta) * det(A)`` per component."""
        total = 1
        for comp, (theta, _) in zip(self.components, self.highest_roots):
            marks = math.prod(theta[k] for k in comp.nodes)
            det = abs(_det(_sub_cartan(self.cartan_matrix, list(comp.nodes))))
            total *= math.factorial(comp.rank) * marks * det
        return total

    def in_cocharacter_lattice(self, coords: Sequence[int]) -> bool:
        """Whether coweight coordinates lie in X_*(T) of this isogeny type."""
        for comp in self.components:
            if comp.isogeny == ADJOINT:
                continue
            n = self._coroot_coordinates(coords, comp)
            if any(x.denominator != 1 for x in n):
                return False
        return True

    def _coroot_coordinates(self, coords: Sequence[int], comp: Component) -> list[Fraction]:
        # c = A^T n on the component block
        nodes = list(comp.nodes)
        at = [[Fraction(self.cartan_matrix[j][i]) for j in nodes] for i in nodes]
        return _solve(at, [Fraction(coords[i]) for i in nodes])

    def to_json_obj(self) -> dict:
        return {
            "label": self.label,
            "cartan_type": self.cartan_type,
            "rank": self.rank,
            "isogeny": self.isogeny,
            "cartan_matrix": [list(r) for r in self.cartan_matrix],
            "degrees": list(self.degrees),
            "dim_G": self.dim_G,
            "num_positive_roots": self.num_positive_roots,
            "pi1_order": self.pi1_order,
            "pi1_invariants": list(self.pi1_invariants),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True, separators=(",", ":"))

    def __repr__(self) -> str:
        return f"RootDatum({self.label})"


def _solve(a: list[list[Fraction]], b: list[Fraction]) -> list[Fraction]:
    """Gaussian elimination over Q for a nonsingular square system."""
    n = len(a)
    m = [row[:] + [b[i]] for i, row in enumerate(a)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col] / m[col][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[i][n] / m[i][i] for i in range(n)]


def build_root_datum(cartan_type: str, rank: int, isogeny: str | None = SIMPLY_CONNECTED) -> RootDatum:
    """Root datum of an irreducible split group."""
    return _assemble([(cartan_type, rank, _normalize_isogeny(isogeny))])


def _normalize_isogeny(isogeny: str | None) -> str:
    try:
        return _ISOGENY_ALIASES[isogeny]
    except KeyError:
        raise InvalidType(f"unknown isogeny type {isogeny!r}") from None


def _assemble(factors: Sequence[tuple[str, int, str]]) -> RootDatum:
    if not factors:
        raise InvalidType("empty group spec")
    total = sum(r for _, r, _ in factors)
    big = [[0] * total for _ in range(total)]
    comps, degrees, invariants = [], [], []
    offset = 0
    for t, r, iso in factors:
        _check_type(t, r)
        a = cartan_matrix(t, r)
        for i in range(r):
            for j in range(r):
                big[offset + i][offset + j] = a[i][j]
        comps.append(Component(t, r, iso, offset))
        degrees.extend(degree_table(t, r))
        if iso == ADJOINT:
            invariants.extend(_smith_invariants(a))
        offset += r
    cm = tuple(tuple(row) for row in big)
    roots, coroots = _root_system(cm)
    return RootDatum(tuple(comps), cm, tuple(roots), tuple(coroots), tuple(sorted(degrees)), tuple(sorted(invariants)))


_FACTOR_RE = re.compile(r"^([A-Ga-g])(\d+)(?:-([A-Za-z_]+))?$")


def parse_group(spec: str) -> RootDatum:
    """Parse ``"A2"``, ``"B3-adjoint"``, ``"A2-scxA1-adjoint"``, ``"A1xA1"``.

    A factor without suffix is simply connected.
    """
    spec = spec.strip()
    if not spec:
        raise InvalidType("empty group spec")
    factors = []
    for part in spec.split("x"):
        m = _FACTOR_RE.match(part.strip())
        if not m:
            raise InvalidType(f"malformed group factor {part!r} in {spec!r}")
        factors.append((m.group(1).upper(), int(m.group(2)), _normalize_isogeny(m.group(3) and m.group(3).lower())))
    return _assemble(factors)


# ---------------------------------------------------------------------------
# finite Weyl group
# ---------------------------------------------------------------------------


class _RootIndex:
    """All roots (positive then negative) with simple-reflection permutations."""

    def __init__(self, rd: RootDatum):
        self.rank = rd.rank
        pos = list(rd.positive_roots)
        self.n_pos = len(pos)
        self.roots = pos + [tuple(-x for x in r) for r in pos]
        self.index = {r: i for i, r in enumerate(self.roots)}
        a = rd.cartan_matrix
        self.reflect = []
        for i in range(self.rank):
            perm = []
            for r in self.roots:
                p = sum(r[k] * a[i][k] for k in range(self.rank))
                perm.append(self.index[tuple(r[k] - p * (k == i) for k in range(self.rank))])
            self.reflect.append(tuple(perm))
        self.simple = tuple(self.index[tuple(int(i == j) for j in range(self.rank))] for i in range(self.rank))

    def is_positive(self, i: int) -> bool:
        return i < self.n_pos


@dataclass(frozen=True)
class WeylGroupTable:
    """Weyl group elements keyed by the images ``w(alpha_i)`` (root indices)."""

    rank: int
    elements: tuple[tuple[int, ...], ...]
    lengths: dict[tuple[int, ...], int]
    roots: tuple[tuple[int, ...], ...]
    n_positive: int

    def __len__(self) -> int:
        return len(self.elements)

    def image(self, w: tuple[int, ...], vector: Sequence[int]) -> tuple[int, ...]:
        """``w`` applied to a root-lattice vector in simple-root coordinates."""
        out = [0] * self.rank
        for i, x in enumerate(vector):
            if x:
                img = self.roots[w[i]]
                for k in range(self.rank):
                    out[k] += x * img[k]
        return tuple(out)

    def inversion_count(self, w: tuple[int, ...]) -> int:
        """``#{alpha > 0 : w(alpha) < 0}`` (the length, computed independently)."""
        return sum(1 for r in self.roots[: self.n_positive] if any(x < 0 for x in self.image(w, r)))

    def length_distribution(self, elements: Iterable[tuple[int, ...]] | None = None) -> Poly:
        counts: dict[tuple[int, ...], int] = {}
        for w in self.elements if elements is None else elements:
            key = (self.lengths[w],)
            counts[key] = counts.get(key, 0) + 1
        return Poly(counts)


def weyl_enumerate(rd: RootDatum, limit: int = WEYL_BFS_LIMIT) -> WeylGroupTable:
    """Breadth-first enumeration of W by left multiplication with simple reflections."""
    if rd.weyl_order_formula() > limit:
        raise LimitExceeded(f"|W({rd.label})| = {rd.weyl_order_formula()} exceeds {limit}")
    idx = _RootIndex(rd)
    identity = idx.simple
    lengths = {identity: 0}
    order = [identity]
    frontier = [identity]
    depth = 0
    while frontier:
        depth += 1
        nxt = []
        for w in frontier:
            for s in idx.reflect:
                v = tuple(s[k] for k in w)
                if v not in lengths:
                    lengths[v] = depth
                    nxt.append(v)
        order.extend(nxt)
        frontier = nxt
    return WeylGroupTable(rd.rank, tuple(order), lengths, tuple(idx.roots), idx.n_pos)


def _t_poly(coeffs: Sequence[int]) -> Poly:
    return Poly({(k,): c for k, c in enumerate(coeffs) if c})


def q_integer(d: int) -> Poly:
    """``1 + t + ... + t^{d-1}``."""
    return _t_poly([1] * d)


def poincare_from_degrees(degrees: Iterable[int]) -> Poly:
    return reduce(lambda acc, d: acc * q_integer(d), degrees, Poly.constant(1))


def weyl_poincare(rd: RootDatum, method: str = "formula") -> Poly:
    """Length generating function of W as a polynomial in ``t`` (variable 0)."""
    if method == "formula":
        return poincare_from_degrees(rd.degrees)
    if method == "bfs":
        return weyl_enumerate(rd).length_distribution()
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# cocharacters
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Cocharacter:
    """Cocharacter given by its pairings ``c_i = <lambda, alpha_i>`` with simple roots."""

    coordinates: tuple[int, ...]

    def is_dominant(self) -> bool:
        return all(c >= 0 for c in self.coordinates)

    @classmethod
    def from_coroots(cls, rd: RootDatum, n: Sequence[int]) -> Cocharacter:
        """``sum n_j alpha_j^vee``."""
        a = rd.cartan_matrix
        return cls(tuple(sum(n[j] * a[j][i] for j in range(rd.rank)) for i in range(rd.rank)))

    def stabilizer_nodes(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.coordinates) if c == 0)


def pairing(rd: RootDatum, lam: Cocharacter, chi: Sequence[int]) -> int:
    """``<lambda, chi>`` for ``chi`` in simple-root coordinates."""
    if len(chi) != rd.rank or len(lam.coordinates) != rd.rank:
        raise ValueError("rank mismatch")
    return sum(c * x for c, x in zip(lam.coordinates, chi))


def pairing_2rho(rd: RootDatum, lam: Cocharacter) -> int:
    return pairing(rd, lam, rd.two_rho)


def dominant_cochars_upto(rd: RootDatum, bound: int) -> list[Cocharacter]:
    """Dominant cocharacters of X_*(T) with ``(lambda, 2 rho) <= bound``.

    Ordered by pairing, then coordinates.
    """
    b = rd.two_rho
    out: list[Cocharacter] = []

    def rec(i: int, budget: int, prefix: list[int]) -> None:
        if i == rd.rank:
            if rd.in_cocharacter_lattice(prefix):
                out.append(Cocharacter(tuple(prefix)))
            return
        for c in range(budget // b[i] + 1):
            prefix.append(c)
            rec(i + 1, budget - c * b[i], prefix)
            prefix.pop()

    if bound >= 0:
        rec(0, bound, [])
    out.sort(key=lambda lam: (pairing(rd, lam, b), lam.coordinates))
    return out


def parabolic_coset_poincare(rd: RootDatum, lam: Cocharacter, method: str = "formula") -> Poly:
    """``sum_{w in W/W(lambda)} t^{l(w)}`` over minimal coset representatives."""
    if not lam.is_dominant():
        raise NotDominant(f"{lam.coordinates} is not dominant")
    j = lam.stabilizer_nodes()
    if method == "formula":
        full = weyl_poincare(rd)
        sub = poincare_from_degrees(degrees_of_cartan(rd.cartan_matrix, j)) if j else Poly.constant(1)
        return divide_exact(full, sub)
    if method == "bfs":
        table = weyl_enumerate(rd)
        reps = [w for w in table.elements if all(w[k] < table.n_positive for k in j)]
        return table.length_distribution(reps)
    raise ValueError(f"unknown method {method!r}")


def divide_exact(num: Poly, den: Poly) -> Poly:
    """Exact division of univariate polynomials in ``t`` (variable 0)."""
    n = [0] * (max((e[0] for e in num if e), default=0) + 1)
    for e, c in num.items():
        n[e[0] if e else 0] += c
    d = [0] * (max((e[0] for e in den if e), default=0) + 1)
    for e, c in den.items():
        d[e[0] if e else 0] += c
    if any((e and e[0] < 0) or len(e) > 1 for e in list(num) + list(den)):
        raise ValueError("divide_exact expects polynomials in t")
    q = [Fraction(0)] * max(1, len(n) - len(d) + 1)
    r = [Fraction(x) for x in n]
    for k in range(len(n) - len(d), -1, -1):
        coef = r[k + len(d) - 1] / d[-1]
        q[k] = coef
        for i, x in enumerate(d):
            r[k + i] -= coef * x
    if any(r):
        raise ValueError("division is not exact")
    return _t_poly(q)


# ---------------------------------------------------------------------------
# affine Weyl group
# ---------------------------------------------------------------------------


def affine_poincare_formula(rd: RootDatum, maxlen: int) -> Poly:
    """Bott's formula ``P(W) prod 1/(1 - t^{d_i - 1})`` truncated after ``t^maxlen``."""
    coeffs = [0] * (maxlen + 1)
    for e, c in weyl_poincare(rd).items():
        k = e[0] if e else 0
        if k <= maxlen:
            coeffs[k] += c
    for d in rd.degrees:
        step = d - 1
        for k in range(step, maxlen + 1):
            coeffs[k] += coeffs[k - step]
    return _t_poly(coeffs)


class _Alcoves:
    """Affine Weyl group acting on an interior point of the fundamental alcove.

    The point is ``rho^vee / h`` on each component, scaled by ``H`` (lcm of the
    Coxeter numbers) so all coordinates stay integral.
    """

    def __init__(self, rd: RootDatum):
        self.rd = rd
        self.scale = math.lcm(*rd.coxeter_numbers)
        self.start = []
        for comp, h in zip(rd.components, rd.coxeter_numbers):
            self.start.extend([self.scale // h] * comp.rank)
        self.start = tuple(self.start)
        a = rd.cartan_matrix
        self.theta = []
        for comp, (theta, theta_vee) in zip(rd.components, rd.highest_roots):
            # <theta^vee, alpha_j>
            tv_pair = tuple(sum(theta_vee[k] * a[k][j] for k in range(rd.rank)) for j in range(rd.rank))
            self.theta.append((theta, tv_pair))

    def neighbours(self, c: tuple[int, ...]) -> Iterable[tuple[int, ...]]:
        a = self.rd.cartan_matrix
        n = self.rd.rank
        for i in range(n):
            ci = c[i]
            yield tuple(c[j] - ci * a[i][j] for j in range(n))
        for theta, tv_pair in self.theta:
            shift = sum(theta[k] * c[k] for k in range(n)) - self.scale
            yield tuple(c[j] - shift * tv_pair[j] for j in range(n))

    def length(self, c: tuple[int, ...]) -> int:
        """Number of affine root hyperplanes separating the point from the start."""
        total = 0
        for root in self.rd.positive_roots:
            v = sum(r * x for r, x in zip(root, c))
            total += abs(v // self.scale)
        return total


def affine_bfs(rd: RootDatum, maxlen: int, check_lengths: bool = True) -> Poly:
    """BFS growth series of the affine Weyl group through ``t^maxlen``.

    With ``check_lengths`` every element's BFS depth is compared against the
    hyperplane-count length.
    """
    alc = _Alcoves(rd)
    seen = {alc.start}
    frontier = [alc.start]
    counts = [1]
    for depth in range(1, maxlen + 1):
        nxt = []
        for c in frontier:
            for v in alc.neighbours(c):
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        if check_lengths:
            bad = next((v for v in nxt if alc.length(v) != depth), None)
            if bad is not None:
                raise AssertionError(f"length mismatch at depth {depth}: {alc.length(bad)}")
        counts.append(len(nxt))
        frontier = nxt
    return _t_poly(counts)


def affine_poincare(rd: RootDatum, method: str = "formula", maxlen: int = 14) -> Poly:
    """Affine Weyl group Poincare series through ``t^maxlen``."""
    if method == "formula":
        return affine_poincare_formula(rd, maxlen)
    if method == "bfs":
        return affine_bfs(rd, maxlen)
    raise ValueError(f"unknown method {method!r}")


def validate_degree_table(rd: RootDatum, bfs_limit: int = WEYL_BFS_LIMIT) -> dict[str, bool]:
    """Check ``prod d = |W|`` and ``sum (d - 1) = |Phi^+|``."""
    order = rd.weyl_order_formula()
    if order <= bfs_limit:
        order = len(weyl_enumerate(rd, bfs_limit))
    return {
        "product_equals_order": math.prod(rd.degrees) == order,
        "sum_equals_positive_roots": sum(d - 1 for d in rd.degrees) == rd.num_positive_roots,
        "dimension": rd.dim_G == rd.rank + 2 * rd.num_positive_roots,
    }


def shipped_types(max_rank: int = 8) -> list[tuple[str, int]]:
    """Irreducible types available up to ``max_rank``."""
    out = [("A", n) for n in range(1, max_rank + 1)]
    out += [("B", n) for n in range(2, max_rank + 1)]
    out += [("C", n) for n in range(2, max_rank + 1)]
    out += [("D", n) for n in range(4, max_rank + 1)]
    out += [(t, r) for (t, r) in _EXCEPTIONAL_DEGREES if r <= max_rank]
    return out


__all__ = [
    "ADJOINT",
    "SIMPLY_CONNECTED",
    "Cocharacter",
    "Component",
    "RootDatum",
    "WeylGroupTable",
    "affine_poincare",
    "build_root_datum",
    "cartan_matrix",
    "degree_table",
    "degrees_of_cartan",
    "divide_exact",
    "dominant_cochars_upto",
    "pairing",
    "pairing_2rho",
    "parabolic_coset_poincare",
    "parse_group",
    "poincare_from_degrees",
    "shipped_types",
    "validate_degree_table",
    "weyl_enumerate",
    "weyl_poincare",
]
