"""Scalar special-function kernels.

Digamma, trigamma and log-gamma use upward recurrence into the region
``|z| >= 10, Re z >= 0`` followed by the Stirling-type asymptotic series
with Bernoulli coefficients.  The zeta function on the critical line uses
the Borwein (Euler-transformed) alternating eta series.

Real arguments take a ``math`` fast path and return ``float``; complex
arguments return ``complex``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Tuple, Union

import numpy as np

from .errors import DomainError, NumericalError, RangeError, SectorError

Number = Union[float, complex]

_SHIFT_RADIUS = 10.0
_ASYMPTOTIC_SWITCH = 10.0
_SECTOR = 0.75 * math.pi
_ZETA_T_MAX = 100.0
_XI_T_MAX = 120.0


@dataclass(frozen=True)
class Constants:
    euler_gamma: float = 0.57721566490153286061
    log_two_pi: float = 1.8378770664093454836
    pi: float = math.pi

    @property
    def half_log_two_pi(self) -> float:
        return 0.5 * self.log_two_pi


CONSTANTS = Constants()
EULER_GAMMA = CONSTANTS.euler_gamma
LOG_TWO_PI = CONSTANTS.log_two_pi


def bernoulli_even(count: int) -> Tuple[Fraction, ...]:
    """Exact B_2, B_4, ..., B_{2*count} (Akiyama-Tanigawa)."""
    top = 2 * count
    a = [Fraction(0)] * (top + 1)
    out = []
    for m in range(top + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        if m >= 2 and m % 2 == 0:
            out.append(a[0])
    return tuple(out)


_BERNOULLI = bernoulli_even(9)  # B_2 .. B_18


@dataclass(frozen=True)
class TailCoefficients:
    """Coefficients of z^-2, z^-4, ... in psi(z) - log z + 1/(2z).

    These are also the asymptotic coefficients of :func:`phi`.
    """

    coeffs: Tuple[float, ...]

    @classmethod
    def from_bernoulli(cls, order: int = 8) -> "TailCoefficients":
        exact = [-b / (2 * (k + 1)) for k, b in enumerate(_BERNOULLI[:order])]
        return cls(tuple(float(c) for c in exact))

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k]


TAIL = TailCoefficients.from_bernoulli(8)

_PSI_COEFFS = TAIL.coeffs
# B_{2k} / z^{2k+1} terms of trigamma
_TRIGAMMA_COEFFS = tuple(float(b) for b in _BERNOULLI[:8])
# B_{2k} / (2k (2k-1) z^{2k-1}) terms of log-gamma
_LGAMMA_COEFFS = tuple(
    float(b / ((2 * k + 2) * (2 * k + 1))) for k, b in enumerate(_BERNOULLI[:8])
)


def _horner(coeffs, w):
    """sum(c_k * w**(k+1)) for k = 0.. len(coeffs)-1."""
    s = 0.0
    for c in reversed(coeffs):
        s = (s + c) * w
    return s


def _check_real(x: float, name: str) -> None:
    if not math.isfinite(x):
        raise DomainError(f"{name}: non-finite argument {x!r}")
    if x <= 0 and x == math.floor(x):
        raise DomainError(f"{name}: pole at non-positive integer {x!r}")


def _check_complex(z: complex, name: str) -> None:
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"{name}: non-finite argument {z!r}")
    if z.imag == 0 and z.real <= 0:
        raise DomainError(f"{name}: argument {z!r} on the non-positive real axis")
    if abs(cmath.phase(z)) > _SECTOR + 1e-12:
        raise SectorError(f"{name}: |arg z| > 3pi/4 for z={z!r}")


def _needs_shift(z: complex) -> bool:
    return abs(z) < _SHIFT_RADIUS or z.real < 0


# ---------------------------------------------------------------------------
# digamma / trigamma / log-gamma


def _digamma_real(x: float) -> float:
    acc = 0.0
    while x < _SHIFT_RADIUS:
        acc -= 1.0 / x
        x += 1.0
    return acc + math.log(x) - 0.5 / x + _horner(_PSI_COEFFS, 1.0 / (x * x))


def _digamma_complex(z: complex) -> complex:
    acc = 0j
    while _needs_shift(z):
        acc -= 1 / z
        z += 1
    return acc + cmath.log(z) - 0.5 / z + _horner(_PSI_COEFFS, 1 / (z * z))


def digamma(z: Number) -> Number:
    """psi(z) = Gamma'(z)/Gamma(z).

    >>> round(digamma(1.0), 12)
    -0.577215664902
    """
    if isinstance(z, complex):
        _check_complex(z, "digamma")
        if z.imag == 0:
            return complex(_digamma_real(z.real))
        return _digamma_complex(z)
    x = float(z)
    _check_real(x, "digamma")
    if x < 0:
        raise DomainError(f"digamma: argument {x!r} on the non-positive real axis")
    return _digamma_real(x)


def _trigamma_tail(z):
    w = 1 / z
    return w + 0.5 * w * w + w * _horner(_TRIGAMMA_COEFFS, w * w)


def trigamma(z: Number) -> Number:
    """psi'(z) = sum over n >= 0 of 1/(z+n)^2."""
    if isinstance(z, complex):
        _check_complex(z, "trigamma")
        acc = 0j
        while _needs_shift(z):
            acc += 1 / (z * z)
            z += 1
        return acc + _trigamma_tail(z)
    x = float(z)
    _check_real(x, "trigamma")
    if x < 0:
        raise DomainError(f"trigamma: argument {x!r} on the non-positive real axis")
    acc = 0.0
    while x < _SHIFT_RADIUS:
        acc += 1.0 / (x * x)
        x += 1.0
    return acc + _trigamma_tail(x)


def stirling_remainder(x: Number) -> Number:
    """log Gamma(x) minus (x - 1/2) log x - x + log(2 pi)/2.

    Computed from the asymptotic series directly for large arguments so the
    leading terms never have to be formed and cancelled.
    """
    if isinstance(x, complex):
        if _needs_shift(x):
            return log_gamma(x) - ((x - 0.5) * cmath.log(x) - x + 0.5 * LOG_TWO_PI)
        w = 1 / x
        return _horner(_LGAMMA_COEFFS, w * w) / w
    x = float(x)
    if x < _SHIFT_RADIUS:
        return log_gamma(x) - ((x - 0.5) * math.log(x) - x + 0.5 * LOG_TWO_PI)
    w = 1.0 / x
    return _horner(_LGAMMA_COEFFS, w * w) / w


def log_gamma(z: Number) -> Number:
    """Principal branch of log Gamma(z).

    Off the real axis the branch is fixed by subtracting the principal logs
    of z, z+1, ... along the upward shift path, which agrees with the
    analytic continuation from the positive axis.
    """
    if isinstance(z, complex):
        _check_complex(z, "log_gamma")
        if z.imag == 0:
            return complex(log_gamma(z.real))
        acc = 0j
        while _needs_shift(z):
            acc -= cmath.log(z)
            z += 1
        w = 1 / z
        return (
            acc
            + (z - 0.5) * cmath.log(z)
            - z
            + 0.5 * LOG_TWO_PI
            + _horner(_LGAMMA_COEFFS, w * w) / w
        )
    x = float(z)
    _check_real(x, "log_gamma")
    if x < 0:
        raise DomainError(f"log_gamma: argument {x!r} on the non-positive real axis")
    prod = 1.0
    while x < _SHIFT_RADIUS:
        prod *= x
        x += 1.0
    w = 1.0 / x
    return (
        (x - 0.5) * math.log(x)
        - x
        + 0.5 * LOG_TWO_PI
        + _horner(_LGAMMA_COEFFS, w * w) / w
        - math.log(prod)
    )


# ---------------------------------------------------------------------------
# phi(x) = psi(x) + 1/(2x) - log x


def _phi_asymptotic(z):
    return _horner(_PSI_COEFFS, 1 / (z * z))


def phi(x: float) -> float:
    """psi(x) + 1/(2x) - log x for real x > 0.

    For x >= 10 the value comes straight from the asymptotic coefficients;
    below that the recurrence is folded in so log x and log(x+m) only
    appear through log1p(m/x).
    """
    x = float(x)
    if not (x > 0 and math.isfinite(x)):
        raise DomainError(f"phi: need x > 0, got {x!r}")
    if x >= _ASYMPTOTIC_SWITCH:
        return _phi_asymptotic(x)
    m = math.ceil(_ASYMPTOTIC_SWITCH - x)
    y = x + m
    harmonic = math.fsum(1.0 / (x + k) for k in range(m))
    return math.fsum(
        (_phi_asymptotic(y), math.log1p(m / x), 0.5 / x, -0.5 / y, -harmonic)
    )


def phi_complex(z: complex) -> complex:
    """Complex continuation of :func:`phi` (used by the Guinand sums)."""
    z = complex(z)
    _check_complex(z, "phi")
    if not _needs_shift(z):
        return _phi_asymptotic(z)
    acc = 0j
    w = z
    while _needs_shift(w):
        acc -= 1 / w
        w += 1
    return _phi_asymptotic(w) + acc + cmath.log(w / z) + 0.5 / z - 0.5 / w


# ---------------------------------------------------------------------------
# 1/(e^x - 1) - 1/x and relatives

_KERNEL_SWITCH = 0.5
# B_{2k}/(2k)! for the odd powers x^{2k-1} of 1/(e^x-1) - 1/x + 1/2
_KERNEL_SERIES = tuple(
    float(b / math.factorial(2 * k + 2)) for k, b in enumerate(_BERNOULLI)
)


def inv_expm1(x: float) -> float:
    """1/(e^x - 1) without overflow for large x > 0."""
    if x > 1.0:
        e = math.exp(-x)
        return e / (1.0 - e)
    return 1.0 / math.expm1(x)


def kernel_plus_half(x: float) -> float:
    """1/(e^x - 1) - 1/x + 1/2, accurate down to x -> 0."""
    if abs(x) < _KERNEL_SWITCH:
        x2 = x * x
        s = 0.0
        for c in reversed(_KERNEL_SERIES):
            s = s * x2 + c
        return s * x
    return inv_expm1(x) - 1.0 / x + 0.5


def kernel(x: float) -> float:
    """1/(e^x - 1) - 1/x; tends to -1/2 at the origin."""
    if abs(x) < _KERNEL_SWITCH:
        return kernel_plus_half(x) - 0.5
    return inv_expm1(x) - 1.0 / x


# ---------------------------------------------------------------------------
# zeta(1/2 + it) and the Xi function


@lru_cache(maxsize=None)
def _borwein_weights(n: int) -> np.ndarray:
    """e_k = (-1)^k (d_k - d_n) / d_n for k = 0..n-1."""
    u = np.empty(n + 1)
    u[0] = 1.0 / n
    for i in range(n):
        u[i + 1] = u[i] * 4.0 * (n + i) * (n - i) / ((2 * i + 1) * (2 * i + 2))
    total = u.sum()
    # d_k - d_n = -n * sum_{i>k} u_i; summed from the top to avoid cancellation
    upper = np.cumsum(u[::-1])[::-1]
    diff = -upper[1:] / total
    signs = np.where(np.arange(n) % 2 == 0, 1.0, -1.0)
    weights = signs * diff
    weights.setflags(write=False)
    return weights


@lru_cache(maxsize=None)
def _log_integers(n: int) -> np.ndarray:
    out = np.log(np.arange(1, n + 1, dtype=float))
    out.setflags(write=False)
    return out


def _borwein_terms(t: float) -> int:
    s = complex(0.5, t)
    denom = abs(1 - 2 ** (1 - s))
    budget = 0.5 * math.pi * abs(t) + math.log(3 * (1 + 2 * abs(t)) / denom) + 37.0
    return max(20, math.ceil(budget / math.log(3 + math.sqrt(8))))


def zeta_critical(t: float) -> complex:
    """zeta(1/2 + i t) for |t| <= 100."""
    t = float(t)
    if not abs(t) <= _ZETA_T_MAX:
        raise RangeError(f"zeta_critical: |t| <= {_ZETA_T_MAX:g} required, got {t!r}")
    s = complex(0.5, t)
    n = _borwein_terms(t)
    powers = np.exp(-s * _log_integers(n))
    eta = -complex(np.dot(_borwein_weights(n), powers))
    return eta / (1 - 2 ** (1 - s))


def xi_composition(t: float) -> complex:
    """xi(1/2 + i t/2) as a complex number, before discarding the
    imaginary rounding residue."""
    t = float(t)
    if not abs(t) <= _XI_T_MAX:
        raise RangeError(f"xi_on_line: |t| <= {_XI_T_MAX:g} required, got {t!r}")
    s = complex(0.5, 0.5 * t)
    factor = (s - 1) * cmath.exp(-0.5 * s * math.log(math.pi) + log_gamma(1 + 0.5 * s))
    return factor * zeta_critical(0.5 * t)


def xi_on_line(t: float) -> float:
    """Xi(t/2) = xi(1/2 + i t/2), real and even in t."""
    val = xi_composition(t)
    if abs(val.imag) > 1e-9 * max(1.0, abs(val.real)):
        raise NumericalError(f"xi_on_line: imaginary residue {val.imag:.3e} at t={t!r}")
    return val.real


@lru_cache(maxsize=4096)
def xi_weight(t: float) -> float:
    """|Xi(t/2) Gamma((-1+it)/4)|^2 / (1 + t^2)."""
    t = float(t)
    xi = xi_on_line(t)
    w = complex(-0.25, 0.25 * t)
    # |Gamma(w)| = |Gamma(w+1)| / |w|, keeps log_gamma in the right half-plane
    log_abs_gamma = log_gamma(w + 1).real - math.log(abs(w))
    return xi * xi * math.exp(2.0 * log_abs_gamma) / (1.0 + t * t)
