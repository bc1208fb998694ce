"""Exact computations with motivic classes of moduli stacks of G-bundles on curves.

The central objects are :class:`GradedMotiveSeries` (a truncated element of the
dimensional completion of the Grothendieck ring of varieties, restricted to the
subring generated by ``L`` and the curve symbols ``a_j``) and
:class:`ClosedMotive` (an exact closed form built from products and quotients
of such polynomials).
"""

from .bundles import (
    bun_dimension,
    bundle_report,
    conjecture_motive,
    count_check,
    gauge_poincare_check,
    kaiser_identity_check,
    matrix_divisor_check,
    p1_stratification_check,
    p1_stratification_motive,
    predicted_count,
    sln_generating_identity,
    sln_matrix_divisor_sum,
    tamagawa_motive,
)
from .curve_zeta import CurveData, ZetaFunction, parse_curve, sym_class, zeta, zeta_special_value
from .errors import (
    ConfigError,
    CurveSpecError,
    DegTooSmall,
    DivergentSpecialValue,
    DivisionByZero,
    InvalidType,
    LimitExceeded,
    NonConvergent,
    NotAUnit,
    NotDominant,
)
from .motive_ring import (
    L,
    ONE,
    ClosedMotive,
    GradedMotiveSeries,
    MotiveMonomial,
    Realization,
    a,
    canonical_json,
    classifying_motive,
    counting_measure,
    expand,
    from_json,
    gl_motive,
    group_motive,
    invert_unit,
    realize,
    ring_add,
    ring_mul,
)
from .poly import Poly
from .report import Mutation, VerificationReport
from .root_data import (
    Cocharacter,
    RootDatum,
    affine_poincare,
    build_root_datum,
    parabolic_coset_poincare,
    parse_group,
    weyl_poincare,
)
from .verify import CaseSpec, SuiteConfig, load_config, run_suite

__version__ = "0.1.0"

__all__ = [
    "bun_dimension",
    "bundle_report",
    "conjecture_motive",
    "count_check",
    "gauge_poincare_check",
    "kaiser_identity_check",
    "matrix_divisor_check",
    "p1_stratification_check",
    "p1_stratification_motive",
    "predicted_count",
    "sln_generating_identity",
    "sln_matrix_divisor_sum",
    "tamagawa_motive",
    "CurveData",
    "ZetaFunction",
    "parse_curve",
    "sym_class",
    "zeta",
    "zeta_special_value",
    "ConfigError",
    "CurveSpecError",
    "DegTooSmall",
    "DivergentSpecialValue",
    "DivisionByZero",
    "InvalidType",
    "LimitExceeded",
    "NonConvergent",
    "NotAUnit",
    "NotDominant",
    "L",
    "ONE",
    "ClosedMotive",
    "GradedMotiveSeries",
    "MotiveMonomial",
    "Realization",
    "a",
    "canonical_json",
    "classifying_motive",
    "counting_measure",
    "expand",
    "from_json",
    "gl_motive",
    "group_motive",
    "invert_unit",
    "realize",
    "ring_add",
    "ring_mul",
    "Poly",
    "Mutation",
    "VerificationReport",
    "Cocharacter",
    "RootDatum",
    "affine_poincare",
    "build_root_datum",
    "parabolic_coset_poincare",
    "parse_group",
    "weyl_poincare",
    "CaseSpec",
    "SuiteConfig",
    "load_config",
    "run_suite",
]
