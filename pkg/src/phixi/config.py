"""Evaluation knobs and the common result record."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Union

Number = Union[float, complex]


@dataclass(frozen=True)
class EvalConfig:
    """Tolerances, truncation indices and caps used by the evaluators.

    ``series_cutoff`` is a lower bound; ``sum_phi`` raises it to
    ``ceil(40 / alpha)`` when alpha is small.
    """

    abs_tol: float = 1e-12
    series_cutoff: int = 50
    tail_order: int = 3
    max_series_cutoff: int = 1_000_000
    defect_base_N: int = 1000
    defect_max_N: int = 8000
    extrapolation_order: int = 3
    quad_tol: float = 1e-13
    xi_cutoff: float = 60.0

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise ValueError("abs_tol must be positive")
        if self.series_cutoff < 50:
            raise ValueError("series_cutoff must be at least 50")
        if not 1 <= self.tail_order <= 3:
            raise ValueError("tail_order must be in [1, 3]")
        if self.defect_base_N < 1 or self.defect_max_N < self.defect_base_N:
            raise ValueError("need 1 <= defect_base_N <= defect_max_N")
        if self.extrapolation_order < 0:
            raise ValueError("extrapolation_order must be non-negative")

    def with_tol(self, tol: float) -> "EvalConfig":
        return replace(self, abs_tol=tol)


DEFAULT_CONFIG = EvalConfig()


@dataclass(frozen=True)
class Approximation:
    value: Number
    err_estimate: float = 0.0
    terms_used: int = 0
    nodes_used: int = 0
    seconds: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.err_estimate) and self.err_estimate >= 0):
            raise ValueError(f"bad error estimate {self.err_estimate!r}")
        v = complex(self.value)
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise ValueError(f"non-finite value {self.value!r}")

    @classmethod
    def exact(cls, value: Number) -> "Approximation":
        """Wrap a closed-form value (error at the rounding level)."""
        return cls(value, 4 * 2.0**-52 * abs(value))
