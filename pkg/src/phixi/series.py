"""Series sides of the modular relation for phi and the Poisson defect route.

The infinite sums are a direct sum up to a cutoff N plus an asymptotic
tail: for n > N the terms phi(n*alpha) are replaced by their expansion in
powers of 1/(n*alpha), and each power sum over n > N is done by
Euler-Maclaurin.
"""

from __future__ import annotations

import cmath
import math
import time
from dataclasses import dataclass
from typing import List, Sequence

from .config import DEFAULT_CONFIG, Approximation, EvalConfig
from .errors import DomainError, SectorError, ToleranceNotMet
from .specfun import (
    EULER_GAMMA,
    LOG_TWO_PI,
    TAIL,
    kernel_plus_half,
    phi,
    phi_complex,
    stirling_remainder,
)

_EPS = 2.0**-52
GUINAND_SECTOR = 0.5 * math.pi - 0.05


@dataclass(frozen=True)
class ModulusPair:
    """alpha > 0 together with beta = 1/alpha."""

    alpha: float

    def __post_init__(self):
        if not (self.alpha > 0 and math.isfinite(self.alpha)):
            raise DomainError(f"alpha must be positive and finite, got {self.alpha!r}")

    @property
    def beta(self) -> float:
        return 1.0 / self.alpha

    def swapped(self) -> "ModulusPair":
        return ModulusPair(self.beta)


def power_tail(p: int, N: int) -> float:
    """Sum of n^-p over n > N (p >= 2) by Euler-Maclaurin at n = N."""
    if p < 2:
        raise ValueError("power_tail needs p >= 2")
    x = float(N)
    # integral from N, minus f(N)/2, minus Bernoulli corrections
    s = x ** (1 - p) / (p - 1) - 0.5 * x ** (-p)
    s += p / 12.0 * x ** (-p - 1)
    s -= p * (p + 1) * (p + 2) / 720.0 * x ** (-p - 3)
    s += p * (p + 1) * (p + 2) * (p + 3) * (p + 4) / 30240.0 * x ** (-p - 5)
    return s


def default_cutoff(alpha: float, cfg: EvalConfig) -> int:
    return max(cfg.series_cutoff, math.ceil(40.0 / alpha))


def _tail_terms(scale_sq, N: int, order: int):
    """Asymptotic tail of sum over n > N of phi(n * z), with scale_sq = z**2.

    Returns ``(tail, first_omitted)``.
    """
    terms = []
    for k in range(1, order + 2):
        terms.append(TAIL[k - 1] * power_tail(2 * k, N) / scale_sq**k)
    return sum(terms[:order]), abs(terms[order])


def _partial_phi(alpha: float, N: int) -> float:
    return math.fsum(phi(n * alpha) for n in range(1, N + 1))


def _partial_phi_with_abs(alpha: float, N: int):
    terms = [phi(n * alpha) for n in range(1, N + 1)]
    return math.fsum(terms), math.fsum(abs(t) for t in terms)


def sum_phi(alpha: float, cfg: EvalConfig = DEFAULT_CONFIG) -> Approximation:
    """Sum over n >= 1 of phi(n * alpha)."""
    if not (alpha > 0 and math.isfinite(alpha)):
        raise DomainError(f"sum_phi: alpha must be positive, got {alpha!r}")
    t0 = time.perf_counter()
    N = default_cutoff(alpha, cfg)
    while True:
        tail, omitted = _tail_terms(alpha * alpha, N, cfg.tail_order)
        if omitted <= cfg.abs_tol / 4 or N >= cfg.max_series_cutoff:
            break
        N = min(2 * N, cfg.max_series_cutoff)
    direct, magnitude = _partial_phi_with_abs(alpha, N)
    err = omitted + 8 * _EPS * magnitude
    result = Approximation(direct + tail, err, terms_used=N, seconds=time.perf_counter() - t0)
    if err > cfg.abs_tol:
        raise ToleranceNotMet(
            f"sum_phi({alpha!r}): error bound {err:.2e} exceeds {cfg.abs_tol:.2e} at N={N}",
            best=result,
        )
    return result


def left_side(alpha: float, cfg: EvalConfig = DEFAULT_CONFIG) -> Approximation:
    """sqrt(alpha) * ((gamma - log(2 pi alpha)) / (2 alpha) + sum phi(n alpha))."""
    pair = ModulusPair(alpha)
    s = sum_phi(pair.alpha, cfg)
    root = math.sqrt(alpha)
    head = (EULER_GAMMA - LOG_TWO_PI - math.log(alpha)) / (2 * alpha)
    return Approximation(
        root * (head + s.value),
        root * (s.err_estimate + 4 * _EPS * abs(head)),
        terms_used=s.terms_used,
        seconds=s.seconds,
    )


def _check_guinand_sector(z: complex) -> None:
    if z == 0 or abs(cmath.phase(z)) > GUINAND_SECTOR:
        raise SectorError(f"guinand_side: |arg z| must be <= pi/2 - 0.05, got z={z!r}")


def guinand_side(z, cfg: EvalConfig = DEFAULT_CONFIG) -> Approximation:
    """S(z) = sum over n >= 1 of (psi(nz) - log(nz) + 1/(2nz)) + (gamma - log(2 pi z))/(2z).

    Real z gives a real value; complex z a complex one.
    """
    if not isinstance(z, complex):
        z = float(z)
        if not z > 0:
            raise SectorError(f"guinand_side: real z must be positive, got {z!r}")
        s = sum_phi(z, cfg)
        head = (EULER_GAMMA - LOG_TWO_PI - math.log(z)) / (2 * z)
        return Approximation(
            head + s.value, s.err_estimate + 4 * _EPS * abs(head),
            terms_used=s.terms_used, seconds=s.seconds,
        )
    _check_guinand_sector(z)
    if z.imag == 0:
        return guinand_side(z.real, cfg)
    t0 = time.perf_counter()
    N = max(cfg.series_cutoff, math.ceil(40.0 / abs(z)))
    while True:
        tail, omitted = _tail_terms(z * z, N, cfg.tail_order)
        if omitted <= cfg.abs_tol / 4 or N >= cfg.max_series_cutoff:
            break
        N = min(2 * N, cfg.max_series_cutoff)
    terms = [phi_complex(n * z) for n in range(1, N + 1)]
    direct = complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))
    head = (EULER_GAMMA - LOG_TWO_PI - cmath.log(z)) / (2 * z)
    err = omitted + 8 * _EPS * math.fsum(abs(t) for t in terms) + 4 * _EPS * abs(head)
    result = Approximation(head + direct + tail, err, terms_used=N, seconds=time.perf_counter() - t0)
    if err > cfg.abs_tol:
        raise ToleranceNotMet(f"guinand_side({z!r}): error bound {err:.2e}", best=result)
    return result


# ---------------------------------------------------------------------------
# Poisson defects of f(x) = psi(xz + 1) - log(xz) and its cosine transform


def _f_terms(z: float, N: int) -> List[float]:
    # psi(nz + 1) - log(nz) = phi(nz) + 1/(2nz)
    return [phi(n * z) + 0.5 / (n * z) for n in range(1, N + 1)]


def f_integral(z: float, N: float) -> float:
    """Closed form of the integral of psi(tz+1) - log(tz) over [0, N].

    Equals log Gamma(Nz+1)/z - N log(Nz) + N; written through the Stirling
    remainder so the O(N log N) pieces cancel analytically.
    """
    x = N * z
    return (0.5 * math.log(x) + 0.5 * LOG_TWO_PI + stirling_remainder(x)) / z


def _defect_sequence(z: float, Ns: Sequence[int], corrected: bool) -> List[float]:
    top = max(Ns)
    terms = _f_terms(z, top)
    out = []
    for N in Ns:
        d = math.fsum(terms[:N]) - f_integral(z, N)
        if corrected:
            d -= 0.5 * terms[N - 1]
        out.append(d)
    return out


def poisson_defect(z: float, N: int, which: str = "f") -> float:
    """Sum_{n<=N} h(n) - integral_0^N h(t) dt for h = f or h = g.

    f(x) = psi(xz+1) - log(xz); g(x) = (psi(x/z+1) - log(x/z)) / z is its
    cosine transform 2 * int f(t) cos(2 pi x t) dt.
    """
    z = float(z)
    if not z > 0:
        raise DomainError(f"poisson_defect: z must be positive, got {z!r}")
    if N < 1:
        raise DomainError(f"poisson_defect: N must be >= 1, got {N!r}")
    if which == "f":
        return _defect_sequence(z, [N], corrected=False)[0]
    if which == "g":
        return _defect_sequence(1.0 / z, [N], corrected=False)[0] / z
    raise ValueError(f"which must be 'f' or 'g', got {which!r}")


def richardson(values: Sequence[float], ratio: float = 2.0):
    """Richardson table for a sequence sampled at N, ratio*N, ratio^2*N, ...

    Assumes an error expansion in integer powers of 1/N.  Returns
    ``(estimate, residual)`` where residual is the difference between the
    two highest-order entries on the last row.
    """
    row = list(values)
    prev_best = row[-1]
    best = row[-1]
    k = 0
    while len(row) > 1:
        k += 1
        factor = ratio**k - 1.0
        row = [row[i + 1] + (row[i + 1] - row[i]) / factor for i in range(len(row) - 1)]
        prev_best, best = best, row[-1]
    return best, abs(best - prev_best)


def _ladder(cfg: EvalConfig) -> List[int]:
    Ns = [cfg.defect_base_N * 2**k for k in range(cfg.extrapolation_order + 1)]
    if Ns[-1] > cfg.defect_max_N:
        raise ToleranceNotMet(
            f"extrapolation ladder needs N={Ns[-1]} > defect_max_N={cfg.defect_max_N}"
        )
    return Ns


def poisson_defect_limit(z: float, which: str = "f", cfg: EvalConfig = DEFAULT_CONFIG) -> Approximation:
    """Limit N -> inf of :func:`poisson_defect` by Richardson extrapolation."""
    z = float(z)
    if not z > 0:
        raise DomainError(f"poisson_defect_limit: z must be positive, got {z!r}")
    t0 = time.perf_counter()
    Ns = _ladder(cfg)
    if which == "f":
        seq = _defect_sequence(z, Ns, corrected=True)
    elif which == "g":
        seq = [d / z for d in _defect_sequence(1.0 / z, Ns, corrected=True)]
    else:
        raise ValueError(f"which must be 'f' or 'g', got {which!r}")
    est, resid = richardson(seq)
    return Approximation(est, resid, terms_used=Ns[-1], seconds=time.perf_counter() - t0)


def _rem_sequence(z: float, Ns: Sequence[int]) -> List[float]:
    top = max(Ns)
    half_recip = [0.5 / (n * z) for n in range(1, top + 1)]
    out = []
    for N in Ns:
        s = math.fsum(half_recip[:N]) - 0.5 * half_recip[N - 1]
        out.append(s - f_integral(z, N))
    return out


def defect_limit(z: float, cfg: EvalConfig = DEFAULT_CONFIG) -> Approximation:
    """lim_N (sum_{n<=N} 1/(2nz) - integral_0^N (psi(tz+1) - log tz) dt).

    Evaluated on N = base * (1, 2, 4, 8) with the half-endpoint
    correction, then Richardson-extrapolated.
    """
    z = float(z)
    if not z > 0:
        raise DomainError(f"defect_limit: z must be positive, got {z!r}")
    t0 = time.perf_counter()
    Ns = _ladder(cfg)
    est, resid = richardson(_rem_sequence(z, Ns))
    result = Approximation(est, resid, terms_used=Ns[-1], seconds=time.perf_counter() - t0)
    if resid > cfg.abs_tol and resid > 1e-8:
        raise ToleranceNotMet(f"defect_limit({z!r}): residual {resid:.2e}", best=result)
    return result


def defect_limit_closed_form(z: float) -> float:
    """(gamma - log(2 pi z)) / (2 z)."""
    return (EULER_GAMMA - LOG_TWO_PI - math.log(z)) / (2 * z)


# ---------------------------------------------------------------------------
# Partial-fraction identity and the divergent variant


def _cot_series(t: float) -> float:
    """Sum over n >= 1 of 1/(t^2 + 4 n^2 pi^2)."""
    t2 = t * t
    c = 4.0 * math.pi**2
    M = 200
    direct = math.fsum(1.0 / (t2 + c * n * n) for n in range(1, M + 1))
    # Euler-Maclaurin tail: integral from M, minus g(M)/2, minus g'(M)/12, plus g'''(M)/720
    a = abs(t)
    if a > 0:
        integral = math.atan(a / (2 * math.pi * M)) / (2 * math.pi * a)
    else:
        integral = 1.0 / (c * M)
    d = t2 + c * M * M
    g = 1.0 / d
    g1 = -2.0 * c * M / d**2
    g3 = -24.0 * c**2 * M * (c * M * M - t2) / d**4
    return direct + integral - 0.5 * g - g1 / 12.0 + g3 / 720.0


def _cot_closed(t: float) -> float:
    """(1/(2t)) (1/(e^t - 1) - 1/t + 1/2); the bracket goes through its
    Bernoulli series for |t| < 1/2."""
    return kernel_plus_half(t) / (2.0 * t)


def cot_identity_sides(t: float):
    if t == 0:
        raise DomainError("cot_identity: t must be nonzero")
    return _cot_series(t), _cot_closed(t)


def cot_identity_gap(t: float) -> float:
    """|sum 1/(t^2 + 4 n^2 pi^2) - (1/(2t))(1/(e^t - 1) - 1/t + 1/2)|."""
    lhs, rhs = cot_identity_sides(t)
    return abs(lhs - rhs)


def divergent_variant_partial(alpha: float, N: int) -> float:
    """Partial sum to N of psi(n alpha) + 1/(2 n alpha) - gamma - log(n alpha).

    With gamma subtracted the terms tend to -gamma, so the sum drifts
    like -gamma * N instead of converging.
    """
    if not alpha > 0:
        raise DomainError(f"alpha must be positive, got {alpha!r}")
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N!r}")
    return _partial_phi(alpha, N) - EULER_GAMMA * N
