"""Machine-readable outcome of an identity check."""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Iterator

from .motive_ring import MotiveMonomial, canonical_json
from .poly import Poly

REPORT_KEYS = ("check", "inputs", "floor_or_maxdeg", "lhs", "rhs", "equal", "first_discrepancy", "wall_time_ms")


@dataclass
class VerificationReport:
    check: str
    inputs: dict[str, Any]
    floor_or_maxdeg: int | None
    lhs: Any
    rhs: Any
    equal: bool
    first_discrepancy: dict[str, Any] | None = None
    wall_time_ms: float = 0.0

    def to_json_obj(self, include_timing: bool = True) -> dict[str, Any]:
        out = {k: getattr(self, k) for k in REPORT_KEYS}
        if not include_timing:
            out["wall_time_ms"] = None
        return out

    def to_json(self, include_timing: bool = True) -> str:
        return canonical_json(self.to_json_obj(include_timing))

    @classmethod
    def from_json(cls, text: str) -> VerificationReport:
        data = json.loads(text)
        if set(data) != set(REPORT_KEYS):
            raise ValueError(f"report keys {sorted(data)} != {sorted(REPORT_KEYS)}")
        return cls(**data)

    def summary_line(self) -> str:
        status = "PASS" if self.equal else "FAIL"
        inputs = " ".join(f"{k}={v}" for k, v in sorted(self.inputs.items()))
        return f"{status} {self.check} [{inputs}] @ {self.floor_or_maxdeg} ({self.wall_time_ms:.1f} ms)"


@dataclass(frozen=True)
class Mutation:
    """Perturb one monomial of a check's left-hand side (harness self-test).

    ``exponent`` uses the internal key layout: entry 0 is the power of ``L``
    (or of ``t`` for single-variable targets), entry ``j`` that of ``a_j``.
    """

    exponent: tuple[int, ...]
    delta: int = 1

    def apply(self, p: Poly) -> Poly:
        return p + Poly.monomial(self.exponent, self.delta)

    @classmethod
    def at_l_power(cls, k: int, delta: int = 1, curve_exponents: dict[int, int] | None = None) -> Mutation:
        m = MotiveMonomial(1, k, tuple(sorted((curve_exponents or {}).items())))
        return cls(m.exponent, delta)


@dataclass
class Timer:
    elapsed_ms: float = field(default=0.0)


@contextmanager
def timed() -> Iterator[Timer]:
    t = Timer()
    start = time.perf_counter()
    try:
        yield t
    finally:
        t.elapsed_ms = round((time.perf_counter() - start) * 1000.0, 3)
