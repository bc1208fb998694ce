"""Command-line front end.

Exit codes: 0 success (all checks pass), 1 a check failed or a value is not
convergent, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import Sequence, TextIO

from . import bundles
from .curve_zeta import CurveData, parse_curve, zeta, zeta_special_value
from .errors import (
    ConfigError,
    CurveSpecError,
    DegTooSmall,
    DivergentSpecialValue,
    DivisionByZero,
    InvalidType,
    NonConvergent,
    NotAUnit,
)
from .motive_ring import (
    ClosedMotive,
    CountEstimate,
    GradedMotiveSeries,
    RationalFunction,
    Realization,
    RealizedSeries,
    canonical_json,
    classifying_motive,
    counting_measure,
    expand,
    format_rational,
    format_target,
    from_json,
    group_motive,
    realize,
    target_to_json,
)
from .poly import Poly
from .root_data import RootDatum, parse_group, weyl_poincare
from .verify import config_from_mapping, load_config, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # route through our exit-code contract
        raise UsageError(f"{self.prog}: error: {message}")


# ---------------------------------------------------------------------------
# realization flag
# ---------------------------------------------------------------------------

_COUNT_RE = re.compile(r"^count:q=(\d+)(?:,weil=\[(.*)\])?$")


def parse_realization(spec: str, curve: CurveData | None = None, genus: int | None = None) -> Realization:
    """``universal``, ``poincare``, ``serre``, ``count:q=N`` or ``count:q=N,weil=[...]``."""
    g = curve.genus if curve is not None else (genus or 0)
    if spec == "universal":
        return Realization.universal()
    if spec == "poincare":
        return Realization.poincare(g)
    if spec == "serre":
        return Realization.serre(g)
    m = _COUNT_RE.match(spec)
    if m:
        q = int(m.group(1))
        if m.group(2) is not None:
            weil = [Fraction(x.strip()) for x in m.group(2).split(",") if x.strip()]
            return Realization.count(q, weil)
        if curve is not None:
            return curve.count_realization(q)
        if g:
            raise UsageError("count realization of a curve symbol needs weil=[...]")
        return Realization.count(q)
    raise UsageError(f"unknown realization {spec!r}")


def _names(r: Realization) -> tuple[str, ...]:
    return ("x", "y") if r.name == "serre" else ("t",)


def _render_value(value, r: Realization, fmt: str) -> str:
    """Text or canonical JSON for anything :func:`realize` can return."""
    if isinstance(value, (GradedMotiveSeries, ClosedMotive)):
        return value.to_json() if fmt == "json" else str(value)
    if isinstance(value, RationalFunction):
        if fmt == "json":
            return canonical_json({"kind": "rational_function", "realization": r.name, "numerator": target_to_json(value.numerator), "denominator": target_to_json(value.denominator)})
        num = format_target(value.numerator, _names(r))
        if value.denominator == 1:
            return num
        return f"({num}) / ({format_target(value.denominator, _names(r))})"
    if isinstance(value, RealizedSeries):
        if fmt == "json":
            return canonical_json({"kind": "realized_series", "realization": r.name, "terms": target_to_json(value.value), "exact_from_degree": value.floor})
        return f"{format_target(value.value, _names(r))} + (terms of degree < {value.floor} inexact)"
    if isinstance(value, Poly):
        if fmt == "json":
            return canonical_json({"kind": "polynomial", "realization": r.name, "terms": target_to_json(value)})
        return format_target(value, _names(r))
    if isinstance(value, CountEstimate):
        if fmt == "json":
            return canonical_json({"kind": "count_estimate", "value": format_rational(value.value), "tail_bound": value.tail_bound})
        return f"{value.value} (+/- {value.tail_bound:.3g})"
    if isinstance(value, (int, Fraction)):
        if fmt == "json":
            return canonical_json({"kind": "count", "value": format_rational(value)})
        return str(value)
    raise TypeError(f"cannot render {type(value).__name__}")


def _realize_closed(x: ClosedMotive, r: Realization):
    if r.name == "count":
        return counting_measure(x, r.q, r.image_of_a)
    return realize(x, r)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_bun(args, out: TextIO) -> int:
    rd = parse_group(args.group)
    curve = parse_curve(args.curve)
    r = parse_realization(args.realization, curve)
    if args.stratification:
        if curve.genus != 0:
            raise UsageError("--stratification is only available for genus 0")
        if args.floor is None:
            raise UsageError("--stratification needs --floor")
        value = bundles.p1_stratification_motive(rd, args.floor)
    else:
        value = bundles.conjecture_motive(rd, curve)
        if args.floor is not None and r.name != "count":
            value = expand(value, args.floor)
    if r.name == "universal":
        print(_render_value(value, r, args.format), file=out)
    elif isinstance(value, ClosedMotive):
        print(_render_value(_realize_closed(value, r), r, args.format), file=out)
    else:
        print(_render_value(realize(value, r), r, args.format), file=out)
    return EXIT_OK


def _group_payload(rd: RootDatum, floor: int | None) -> dict:
    data = rd.to_json_obj()
    data["weyl_poincare"] = target_to_json(weyl_poincare(rd))
    data["group_motive"] = group_motive(rd).to_json_obj()
    if floor is not None:
        data["classifying_motive"] = expand(classifying_motive(rd), floor).to_json_obj()
    return data


def cmd_group(args, out: TextIO) -> int:
    rd = parse_group(args.group)
    if args.format == "json":
        print(canonical_json(_group_payload(rd, args.floor)), file=out)
        return EXIT_OK
    lines = [
        f"group: {rd.label}",
        f"rank: {rd.rank}",
        f"dim: {rd.dim_G}",
        f"positive roots: {rd.num_positive_roots}",
        f"degrees: {', '.join(map(str, rd.degrees))}",
        f"|pi_1|: {rd.pi1_order}",
        f"Weyl Poincare polynomial: {format_target(weyl_poincare(rd), ('t',))}",
        f"mu(G): {group_motive(rd)}",
    ]
    if args.floor is not None:
        lines.append(f"mu(BG): {expand(classifying_motive(rd), args.floor)}")
    print("\n".join(lines), file=out)
    return EXIT_OK


def cmd_zeta(args, out: TextIO) -> int:
    curve = parse_curve(args.curve)
    r = parse_realization(args.realization, curve)
    if args.special is not None:
        value = zeta_special_value(curve, args.special)
        if args.floor is not None and r.name == "universal":
            value = expand(value, args.floor)
        if r.name == "universal":
            print(_render_value(value, r, args.format), file=out)
        else:
            print(_render_value(_realize_closed(value, r), r, args.format), file=out)
        return EXIT_OK
    if args.order is not None:
        rows = zeta(curve).series(args.order)
        if args.format == "json":
            if r.name == "universal":
                payload = [{"n": n, "value": c.to_json_obj()} for n, c in enumerate(rows)]
            else:
                payload = [{"n": n, "value": json.loads(_render_value(_realize_closed(c, r), r, "json"))} for n, c in enumerate(rows)]
            print(canonical_json(payload), file=out)
        else:
            for n, c in enumerate(rows):
                shown = c if r.name == "universal" else _render_value(_realize_closed(c, r), r, "text")
                print(f"Sym^{n}: {shown}", file=out)
        return EXIT_OK
    z = zeta(curve)
    if args.format == "json":
        print(canonical_json({"kind": "zeta", "genus": curve.genus, "numerator": [GradedMotiveSeries(c).to_json_obj()["monomials"] for c in z.numerator]}), file=out)
    else:
        print(str(z), file=out)
    return EXIT_OK


def _split_groups(values: Sequence[str] | None) -> list[str | None]:
    if not values:
        return [None]
    return [g.strip() for v in values for g in v.split(",") if g.strip()]


def cmd_verify(args, out: TextIO) -> int:
    # command-line flags override the config file
    values = load_config(args.config) if args.config else {}
    flags = {
        "suite": args.suite,
        "groups": ";".join(_split_groups(args.group)) if args.group else None,
        "curves": ";".join(args.curve) if args.curve else None,
        "n": ";".join(map(str, args.n)) if args.n else None,
        "degD": ";".join(map(str, args.degD)) if args.degD else None,
    }
    for key in ("floor", "maxdeg", "serre_maxdeg", "parallelism"):
        v = getattr(args, key)
        flags[key] = None if v is None else str(v)
    values.update({k: v for k, v in flags.items() if v is not None})
    if not values.get("suite"):
        raise UsageError("verify needs --suite or a config file with a suite")
    cfg = config_from_mapping(values)
    reports = run_suite(cfg)
    if args.format == "json":
        print(canonical_json([r.to_json_obj() for r in reports]), file=out)
    else:
        for r in reports:
            print(r.summary_line(), file=out)
            if not r.equal:
                print(f"  first discrepancy: {canonical_json(r.first_discrepancy)}", file=out)
        passed = sum(r.equal for r in reports)
        print(f"{passed}/{len(reports)} checks passed", file=out)
    return EXIT_OK if all(r.equal for r in reports) else EXIT_FAIL


def cmd_realize(args, out: TextIO) -> int:
    text = sys.stdin.read() if args.input == "-" else open(args.input, encoding="utf-8").read()
    try:
        value = from_json(text)
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"input is not a serialized motive: {exc}") from None
    poly = value.numerator() * value.denominator() if isinstance(value, ClosedMotive) else value.poly
    genus = args.genus if args.genus is not None else poly.nvars() // 2
    r = parse_realization(args.realization, genus=genus)
    if args.floor is not None and isinstance(value, ClosedMotive) and r.name != "count":
        value = expand(value, args.floor)
    if isinstance(value, ClosedMotive):
        print(_render_value(_realize_closed(value, r), r, args.format), file=out)
    else:
        print(_render_value(realize(value, r), r, args.format), file=out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bunmotive", description="Motives of moduli stacks of G-bundles on curves.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, realization=True):
        sp.add_argument("--format", choices=("text", "json"), default="text")
        if realization:
            sp.add_argument("--realization", default="universal", help="universal | poincare | serre | count:q=N[,weil=[...]]")

    b = sub.add_parser("bun", help="conjectural motive of Bun_G")
    b.add_argument("--group", required=True)
    b.add_argument("--curve", default="genus=0")
    b.add_argument("--floor", type=int)
    b.add_argument("--stratification", action="store_true", help="sum over the P^1 stratification instead")
    common(b)

    g = sub.add_parser("group", help="root datum, mu(G), mu(BG)")
    g.add_argument("--group", required=True)
    g.add_argument("--floor", type=int)
    common(g, realization=False)

    z = sub.add_parser("zeta", help="motivic zeta function of a curve")
    z.add_argument("--curve", required=True)
    z.add_argument("--special", type=int, help="evaluate at u = L^-d")
    z.add_argument("--order", type=int, help="list Sym^n classes for n <= order")
    z.add_argument("--floor", type=int)
    common(z)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite")
    v.add_argument("--group", action="append", help="group spec(s); repeat or comma-separate")
    v.add_argument("--curve", action="append", help="curve spec; repeat for several")
    v.add_argument("--floor", type=int)
    v.add_argument("--maxdeg", type=int)
    v.add_argument("--serre-maxdeg", dest="serre_maxdeg", type=int)
    v.add_argument("--n", type=int, action="append")
    v.add_argument("--degD", type=int, action="append")
    v.add_argument("--parallelism", type=int)
    v.add_argument("--config", help="flat key = value file")
    common(v, realization=False)

    r = sub.add_parser("realize", help="realize a serialized motive")
    r.add_argument("--input", default="-", help="JSON file, or - for stdin")
    r.add_argument("--genus", type=int)
    r.add_argument("--floor", type=int)
    common(r)
    return p


_HANDLERS = {"bun": cmd_bun, "group": cmd_group, "zeta": cmd_zeta, "verify": cmd_verify, "realize": cmd_realize}

_USAGE_ERRORS = (UsageError, ConfigError, InvalidType, CurveSpecError, DivergentSpecialValue, DegTooSmall, OSError)
_MATH_ERRORS = (NonConvergent, DivisionByZero, NotAUnit)


def main(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
        return _HANDLERS[args.command](args, out)
    except _USAGE_ERRORS as exc:
        print(str(exc) if isinstance(exc, UsageError) else f"error: {exc}", file=err)
        return EXIT_USAGE
    except _MATH_ERRORS as exc:
        print(f"error: {exc}", file=err)
        return EXIT_FAIL
    except SystemExit as exc:  # --help
        return int(exc.code or 0)


if __name__ == "__main__":
    raise SystemExit(main())
