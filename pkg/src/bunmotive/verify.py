"""Suite runner: every identity paired with its independent oracle."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Mapping

from . import bundles
from .curve_zeta import parse_curve
from .errors import ConfigError, CurveSpecError, InvalidType
from .motive_ring import (
    L,
    GradedMotiveSeries,
    classifying_motive,
    compare_polys,
    expand,
    gl_motive,
    group_motive,
    target_to_json,
)
from .poly import NEG_INF, Poly
from .report import Mutation, VerificationReport, timed
from .root_data import affine_poincare, parse_group, q_integer, validate_degree_table, weyl_poincare

SUITES = ("weyl", "affine", "gauge", "count", "p1", "sln", "ring")

DEFAULTS = {
    "affine": {"maxdeg": 14},
    "gauge": {"maxdeg": 24},
    "p1": {"floor": -12},
    "sln": {"floor": -10},
}


@dataclass(frozen=True)
class CaseSpec:
    group: str | None = None
    curve: str | None = None
    floor: int | None = None
    maxdeg: int | None = None
    serre_maxdeg: int | None = None
    n: int | None = None
    degD: int | None = None


@dataclass(frozen=True)
class SuiteConfig:
    suite: str
    cases: tuple[CaseSpec, ...] = ()
    parallelism: int = 1
    mutation: Mutation | None = None

    def validate(self) -> None:
        if self.suite not in SUITES:
            raise ConfigError(f"unknown suite {self.suite!r}; choose from {', '.join(SUITES)}")
        if self.parallelism < 1:
            raise ConfigError("parallelism must be positive")
        if not self.cases:
            raise ConfigError("no cases given")
        for case in self.cases:
            _validate_case(self.suite, case)


_REQUIRED = {
    "weyl": ("group",),
    "affine": ("group", "maxdeg"),
    "gauge": ("group", "curve", "maxdeg"),
    "count": ("group", "curve"),
    "p1": ("group", "floor"),
    "sln": ("n", "curve"),
    "ring": (),
}


def _validate_case(suite: str, case: CaseSpec) -> None:
    for name in _REQUIRED[suite]:
        if getattr(case, name) is None:
            raise ConfigError(f"suite {suite} needs {name} in every case")
    if suite == "ring" and case.n is None and case.group is None:
        raise ConfigError("ring cases need n or group")
    if suite == "sln" and case.floor is None and case.degD is None:
        raise ConfigError("sln cases need floor or degD")
    if case.floor is not None and case.floor >= 0:
        raise ConfigError(f"floor must be negative, got {case.floor}")
    for name in ("maxdeg", "serre_maxdeg", "degD"):
        v = getattr(case, name)
        if v is not None and v <= 0:
            raise ConfigError(f"{name} must be positive, got {v}")
    if case.n is not None and not (1 <= case.n <= 8 if suite == "ring" else case.n >= 2):
        raise ConfigError(f"n out of range for suite {suite}: {case.n}")
    try:
        if case.group is not None:
            rd = parse_group(case.group)
            if suite == "gauge" and rd.isogeny != "simply_connected":
                raise ConfigError("gauge suite needs simply connected groups")
        if case.curve is not None:
            curve = parse_curve(case.curve)
            if suite == "count" and curve.q is None:
                raise ConfigError(f"count suite needs an fq: curve, got {case.curve!r}")
    except (InvalidType, CurveSpecError) as exc:
        raise ConfigError(str(exc)) from exc


# ---------------------------------------------------------------------------
# oracles
# ---------------------------------------------------------------------------


def oracle_qfactorial(n: int, mutation: Mutation | None = None) -> VerificationReport:
    """``prod_k (L^n - L^k)`` against ``L^{n(n-1)/2} (L - 1)^n [n]_L!``."""
    if not 1 <= n <= 8:
        raise ValueError("oracle_qfactorial supports 1 <= n <= 8")
    with timed() as t:
        lhs = gl_motive(n).numerator()
        if mutation:
            lhs = mutation.apply(lhs)
        rhs = Poly.monomial((n * (n - 1) // 2,)) * (L - 1) ** n
        for k in range(1, n + 1):
            rhs = rhs * q_integer(k)
        cmp = compare_polys(lhs, rhs, NEG_INF)
    return VerificationReport(
        "qfactorial",
        {"n": n},
        None,
        GradedMotiveSeries(lhs).to_json_obj(),
        GradedMotiveSeries(rhs).to_json_obj(),
        cmp.equal,
        cmp.first_discrepancy,
        t.elapsed_ms,
    )


def group_inverse_check(group: str) -> VerificationReport:
    """``mu(G) mu(BG) = 1`` after expansion to dimension 0."""
    rd = parse_group(group)
    with timed() as t:
        prod = expand(group_motive(rd) * classifying_motive(rd), 0)
        one = GradedMotiveSeries(Poly.constant(1), 0)
        cmp = prod.compare(one)
    return VerificationReport("group_times_classifying", {"group": rd.label}, 0, prod.to_json_obj(), one.to_json_obj(), cmp.equal, cmp.first_discrepancy, t.elapsed_ms)


def weyl_check(group: str, mutation: Mutation | None = None) -> VerificationReport:
    rd = parse_group(group)
    with timed() as t:
        bfs = weyl_poincare(rd, "bfs")
        if mutation:
            bfs = mutation.apply(bfs)
        formula = weyl_poincare(rd, "formula")
        invariants = validate_degree_table(rd)
        diff = bfs - formula
        disc = None
        if diff:
            e = min(diff, key=lambda x: (sum(x), x))
            disc = {"exponent": list(e), "lhs": str(bfs.coefficient(e)), "rhs": str(formula.coefficient(e))}
        elif not all(invariants.values()):
            disc = {"invariants": invariants}
    return VerificationReport(
        "weyl_poincare",
        {"group": rd.label, "weyl_order": math.prod(rd.degrees)},
        None,
        target_to_json(bfs),
        target_to_json(formula),
        disc is None,
        disc,
        t.elapsed_ms,
    )


def affine_check(group: str, maxdeg: int, mutation: Mutation | None = None) -> VerificationReport:
    rd = parse_group(group)
    with timed() as t:
        bfs = affine_poincare(rd, "bfs", maxdeg)
        if mutation:
            bfs = mutation.apply(bfs)
        formula = affine_poincare(rd, "formula", maxdeg)
        diff = bfs - formula
        disc = None
        if diff:
            e = min(diff, key=lambda x: (sum(x), x))
            disc = {"exponent": list(e), "lhs": str(bfs.coefficient(e)), "rhs": str(formula.coefficient(e))}
    return VerificationReport("affine_poincare", {"group": rd.label}, maxdeg, target_to_json(bfs), target_to_json(formula), disc is None, disc, t.elapsed_ms)


# ---------------------------------------------------------------------------
# runner
# ---------------------------------------------------------------------------


def _run_case(suite: str, case: CaseSpec, mutation: Mutation | None) -> list[VerificationReport]:
    if suite == "weyl":
        return [weyl_check(case.group, mutation)]
    if suite == "affine":
        return [affine_check(case.group, case.maxdeg, mutation)]
    if suite == "gauge":
        curve = parse_curve(case.curve)
        return [bundles.gauge_poincare_check(parse_group(case.group), curve.genus, case.maxdeg, case.serre_maxdeg, mutation)]
    if suite == "count":
        delta = mutation.delta if mutation else 0
        return [bundles.count_check(parse_group(case.group), parse_curve(case.curve), delta)]
    if suite == "p1":
        rd = parse_group(case.group)
        return [
            bundles.p1_stratification_check(rd, case.floor, mutation),
            bundles.kaiser_identity_check(rd, case.floor, mutation),
        ]
    if suite == "sln":
        curve = parse_curve(case.curve)
        out = []
        if case.floor is not None:
            out.append(bundles.sln_generating_identity(case.n, curve, case.floor, mutation))
        if case.degD is not None:
            out.append(bundles.matrix_divisor_check(case.n, curve, case.degD, mutation))
        return out
    if suite == "ring":
        out = []
        if case.n is not None:
            out.append(oracle_qfactorial(case.n, mutation))
        if case.group is not None:
            out.append(group_inverse_check(case.group))
        return out
    raise ConfigError(f"unknown suite {suite!r}")


def _run_indexed(args) -> list[VerificationReport]:
    suite, case, mutation = args
    return _run_case(suite, case, mutation)


def run_suite(cfg: SuiteConfig) -> list[VerificationReport]:
    """Run every case; reports come back in case order whatever the parallelism."""
    cfg.validate()
    jobs = [(cfg.suite, case, cfg.mutation) for case in cfg.cases]
    if cfg.parallelism == 1 or len(jobs) == 1:
        results = [_run_indexed(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=cfg.parallelism) as pool:
            results = list(pool.map(_run_indexed, jobs))
    return [rep for group in results for rep in group]


def all_passed(reports: Iterable[VerificationReport]) -> bool:
    return all(r.equal for r in reports)


# ---------------------------------------------------------------------------
# configuration files
# ---------------------------------------------------------------------------


def _int_or_none(value: str | None, key: str) -> int | None:
    if value is None or value == "":
        return None
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"{key} must be an integer, got {value!r}") from None


def _list(value: str | None) -> list[str | None]:
    if value is None:
        return [None]
    items = [v.strip() for v in value.split(";") if v.strip()]
    return items or [None]


def config_from_mapping(values: Mapping[str, str]) -> SuiteConfig:
    """Build a config from flat key/value pairs.

    Keys: ``suite``, ``groups``, ``curves``, ``floor``, ``maxdeg``,
    ``serre_maxdeg``, ``n``, ``degD``, ``parallelism``.  ``groups``, ``curves``,
    ``n`` and ``degD`` take ``;``-separated lists; cases are their product.
    """
    known = {"suite", "groups", "group", "curves", "curve", "floor", "maxdeg", "serre_maxdeg", "n", "degD", "parallelism"}
    unknown = set(values) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    suite = values.get("suite")
    if not suite:
        raise ConfigError("config needs a suite")
    defaults = DEFAULTS.get(suite, {})
    floor = _int_or_none(values.get("floor"), "floor")
    maxdeg = _int_or_none(values.get("maxdeg"), "maxdeg")
    floor = defaults.get("floor") if floor is None else floor
    maxdeg = defaults.get("maxdeg") if maxdeg is None else maxdeg
    serre = _int_or_none(values.get("serre_maxdeg"), "serre_maxdeg")
    groups = _list(values.get("groups", values.get("group")))
    curves = _list(values.get("curves", values.get("curve")))
    ns = [_int_or_none(v, "n") for v in _list(values.get("n"))]
    degs = [_int_or_none(v, "degD") for v in _list(values.get("degD"))]
    if suite == "p1" and curves == [None]:
        curves = ["genus=0"]
    if suite in ("sln",) and degs != [None] and values.get("floor") is None:
        floor = None
    cases = tuple(
        CaseSpec(g, c, floor, maxdeg, serre, n, d)
        for g in groups
        for c in curves
        for n in ns
        for d in degs
    )
    parallelism = _int_or_none(values.get("parallelism"), "parallelism") or 1
    cfg = SuiteConfig(suite, cases, parallelism)
    cfg.validate()
    return cfg


def parse_config_text(text: str) -> dict[str, str]:
    """``key = value`` lines; ``#`` starts a comment."""
    out: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ConfigError(f"line {lineno}: expected key = value")
        out[key.strip()] = value.strip()
    return out


def load_config(path: str) -> dict[str, str]:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_config_text(fh.read())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc


__all__ = [
    "CaseSpec",
    "SUITES",
    "SuiteConfig",
    "affine_check",
    "all_passed",
    "config_from_mapping",
    "group_inverse_check",
    "load_config",
    "oracle_qfactorial",
    "parse_config_text",
    "run_suite",
    "weyl_check",
]
