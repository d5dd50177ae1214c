"""Integral evaluators for the identities around phi(x) and the Xi function.

Every integrand here is written in a cancellation-free form: the kernel
1/(e^x - 1) - 1/x is replaced by its Bernoulli series near zero, and
differences of exponentials go through ``expm1``.
"""

from __future__ import annotations

import math
import time

from ..config import DEFAULT_CONFIG, Approximation, EvalConfig
from ..errors import DomainError
from ..specfun import (
    EULER_GAMMA,
    LOG_TWO_PI,
    inv_expm1,
    kernel,
    kernel_plus_half,
    log_gamma,
    phi,
    xi_weight,
)
from .engines import (
    OscillatorySpec,
    QuadratureResult,
    algebraic,
    exponential,
    integrate_adaptive,
    integrate_oscillatory_cos,
    integrate_semi_infinite,
)

TWO_PI = 2.0 * math.pi
PI_3_2 = math.pi**1.5

def _one_minus_exp_over_x(c: float, x: float) -> float:
    """(1 - e^{-c x}) / x."""
    return -math.expm1(-c * x) / x


def _bose_minus_exp(u: float, c: float) -> float:
    """1/(e^u - 1) - e^{-c u}/u, finite at u -> 0."""
    if u < 1.0:
        return kernel(u) + _one_minus_exp_over_x(c, u)
    return inv_expm1(u) - math.exp(-c * u) / u


def _timed(fn, *args, **kwargs):
    t0 = time.perf_counter()
    r = fn(*args, **kwargs)
    return r, time.perf_counter() - t0


def _approx(r: QuadratureResult, seconds: float, scale: float = 1.0, shift: float = 0.0):
    return Approximation(
        scale * r.value + shift,
        abs(scale) * r.err_estimate,
        nodes_used=r.nodes_used,
        seconds=seconds,
    )


# ---------------------------------------------------------------------------
# Xi integral and its x-space counterpart


def xi_cosine_integral(frequency: float, cfg: EvalConfig = DEFAULT_CONFIG) -> Approximation:
    """Integral over t >= 0 of xi_weight(t) cos(frequency t).

    Truncated at ``cfg.xi_cutoff``; the neglected piece is bounded with
    the exp(-pi t / 2) envelope fitted at the cutoff.
    """
    cutoff = cfg.xi_cutoff

    def integrand(t):
        return xi_weight(t) * math.cos(frequency * t)

    r, sec = _timed(integrate_adaptive, integrand, 0.0, cutoff, tol=cfg.quad_tol)
    tail = xi_weight(cutoff) * 2.0 / math.pi
    return Approximation(r.value, r.err_estimate + tail, nodes_used=r.nodes_used + 1, seconds=sec)


def xi_integral(alpha: float, cfg: EvalConfig = DEFAULT_CONFIG) -> Approximation:
    """-pi^{-3/2} * integral of xi_weight(t) cos(t log(alpha) / 2) over t >= 0."""
    if not alpha > 0:
        raise DomainError(f"xi_integral: alpha must be positive, got {alpha!r}")
    a = xi_cosine_integral(0.5 * math.log(alpha), cfg)
    return Approximation(-a.value / PI_3_2, a.err_estimate / PI_3_2, nodes_used=a.nodes_used, seconds=a.seconds)


def ramanujan_x_integral(n: float, cfg: EvalConfig = DEFAULT_CONFIG) -> Approximation:
    """pi^{3/2} * integral over x > 0 of k(x e^n) k(x e^-n), k(y) = 1/(e^y-1) - 1/y.

    The integrand tends to 1/4 at the origin and to 1/x^2 at infinity.
    """
    up, down = math.exp(n), math.exp(-n)

    def integrand(x):
        return kernel(x * up) * kernel(x * down)

    r, sec = _timed(integrate_semi_infinite, integrand, cfg.quad_tol, algebraic(2.0))
    return _approx(r, sec, scale=PI_3_2)


# ---------------------------------------------------------------------------
# Binet-type integral F(a, t)


def _binet_F_integrand(a: float, t: float):
    def integrand(u):
        if u < 1.0:
            diff = math.exp(-t * u) * math.expm1((t - a) * u)
            return (kernel_plus_half(u) * math.exp(-t * u) + 0.5 * diff) / u
        return (kernel(u) * math.exp(-t * u) + 0.5 * math.exp(-a * u)) / u

    return integrand


def binet_F_quadrature(a: float, t: float, cfg: EvalConfig = DEFAULT_CONFIG) -> Approximation:
    """F(a, t) by quadrature of its defining integral."""
    if not (a > 0 and t > 0):
        raise DomainError(f"binet_F: need a > 0 and t > 0, got a={a!r}, t={t!r}")
    r, sec = _timed(
        integrate_semi_infinite, _binet_F_integrand(a, t), cfg.quad_tol, algebraic(2.0)
    )
    return _approx(r, sec)


def binet_F_closed_form(a: float, t: float) -> float:
    """log Gamma(t) - (t - 1/2) log t + t - log(2 pi)/2 + log(t/a)/2."""
    if not (a > 0 and t > 0):
        raise DomainError(f"binet_F: need a > 0 and t > 0, got a={a!r}, t={t!r}")
    return log_gamma(t) - (t - 0.5) * math.log(t) + t - 0.5 * LOG_TWO_PI + 0.5 * math.log(t / a)


def binet_F(a: float, t: float, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    return binet_F_quadrature(a, t, cfg).value


def small_t_expansion(t: float) -> float:
    """-gamma t - t log t + t, the t-dependent leading part of F(a, t) as t -> 0."""
    return -EULER_GAMMA * t - t * math.log(t) + t


# ---------------------------------------------------------------------------
# Closed-form integrals used in the proof chain


def gamma_integral(cfg: EvalConfig = DEFAULT_CONFIG) -> Approximation:
    """Integral of 2 pi/(e^{2 pi t} - 1) - e^{-2 pi t}/t over t > 0 (equals gamma)."""

    def integrand(t):
        u = TWO_PI * t
        return TWO_PI * _bose_minus_exp(u, 1.0)

    r, sec = _timed(integrate_semi_infinite, integrand, cfg.quad_tol, exponential(TWO_PI))
    return _approx(r, sec)


def frullani_integral(mu: float, nu: float, cfg: EvalConfig = DEFAULT_CONFIG) -> Approximation:
    """Integral of (e^{-mu x} - e^{-nu x})/x over x > 0."""
    if not (mu > 0 and nu > 0):
        raise DomainError(f"frullani: need mu, nu > 0, got {mu!r}, {nu!r}")
    lo = min(mu, nu)
    sign = 1.0 if mu <= nu else -1.0
    gap = abs(nu - mu)

    def integrand(x):
        return sign * math.exp(-lo * x) * _one_minus_exp_over_x(gap, x)

    r, sec = _timed(
        integrate_semi_infinite, integrand, cfg.quad_tol, exponential(lo), scale=1.0 / lo
    )
    return _approx(r, sec)


def gamma_log_integral(alpha: float, cfg: EvalConfig = DEFAULT_CONFIG) -> Approximation:
    """Integral of 2 pi/(e^{2 pi t} - 1) - e^{-t/alpha}/t over t > 0."""
    if not alpha > 0:
        raise DomainError(f"alpha must be positive, got {alpha!r}")
    c = 1.0 / (TWO_PI * alpha)

    def integrand(t):
        u = TWO_PI * t
        return TWO_PI * _bose_minus_exp(u, c)

    rate = min(TWO_PI, 1.0 / alpha)
    r, sec = _timed(
        integrate_semi_infinite, integrand, cfg.quad_tol, exponential(rate), scale=min(1.0, alpha)
    )
    return _approx(r, sec)


def phi_integral(x: float, cfg: EvalConfig = DEFAULT_CONFIG) -> Approximation:
    """-2 * integral of t / ((t^2 + x^2)(e^{2 pi t} - 1)) over t > 0."""
    if not x > 0:
        raise DomainError(f"phi_integral: x must be positive, got {x!r}")
    x2 = x * x

    def integrand(t):
        return t * inv_expm1(TWO_PI * t) / (t * t + x2)

    r, sec = _timed(
        integrate_semi_infinite, integrand, cfg.quad_tol / 2, exponential(TWO_PI), scale=min(1.0, x)
    )
    return _approx(r, sec, scale=-2.0)


def binet_log_gamma(z: float, cfg: EvalConfig = DEFAULT_CONFIG) -> Approximation:
    """(z - 1/2) log z - z + log(2 pi)/2 + the Binet integral, for real z > 0."""
    if not z > 0:
        raise DomainError(f"binet_log_gamma: z must be positive, got {z!r}")

    def integrand(t):
        return kernel_plus_half(t) / t * math.exp(-z * t)

    r, sec = _timed(
        integrate_semi_infinite, integrand, cfg.quad_tol, exponential(z), scale=min(1.0, 1.0 / z)
    )
    head = (z - 0.5) * math.log(z) - z + 0.5 * LOG_TWO_PI
    return _approx(r, sec, shift=head)


def exp_kernel_integral(n: float, cfg: EvalConfig = DEFAULT_CONFIG) -> Approximation:
    """Integral of (1/(e^{2 pi x} - 1) - 1/(2 pi x)) e^{-2 pi n x} over x > 0."""
    if not n > 0:
        raise DomainError(f"exp_kernel_integral: n must be positive, got {n!r}")

    def integrand(x):
        u = TWO_PI * x
        return kernel(u) * math.exp(-n * u)

    r, sec = _timed(
        integrate_semi_infinite, integrand, cfg.quad_tol, exponential(TWO_PI * n),
        scale=min(1.0, 1.0 / n),
    )
    return _approx(r, sec)


def log_integral(a: float, cfg: EvalConfig = DEFAULT_CONFIG) -> Approximation:
    """Integral of 1/(u(e^u - 1)) - 1/u^2 + e^{-a u}/(2u) over u > 0."""
    if not a > 0:
        raise DomainError(f"log_integral: a must be positive, got {a!r}")

    def integrand(u):
        if u < 1.0:
            return (kernel_plus_half(u) + 0.5 * math.expm1(-a * u)) / u
        return (kernel(u) + 0.5 * math.exp(-a * u)) / u

    r, sec = _timed(integrate_semi_infinite, integrand, cfg.quad_tol, algebraic(2.0))
    return _approx(r, sec)


def psi_log_integrand(t: float) -> float:
    """psi(t+1) - 1/(2(t+1)) - log t."""
    if t >= 10.0:
        return phi(t) + 0.5 / (t * (t + 1.0))
    # psi(t+1) = psi(t) + 1/t, and phi(t) = psi(t) + 1/(2t) - log t
    return phi(t) + 0.5 / t - 0.5 / (t + 1.0)


def psi_log_integral(cfg: EvalConfig = DEFAULT_CONFIG) -> Approximation:
    """Integral of psi(t+1) - 1/(2(t+1)) - log t over t > 0."""
    r, sec = _timed(
        integrate_semi_infinite, psi_log_integrand, cfg.quad_tol, algebraic(2.0), singular_start=True
    )
    return _approx(r, sec)


def sum_phi_integral(alpha: float, cfg: EvalConfig = DEFAULT_CONFIG) -> Approximation:
    """-(2 pi/alpha) * integral of (1/(e^{2 pi t} - 1)) (1/(e^{2 pi t/alpha} - 1)
    - alpha/(2 pi t) + 1/2) over t > 0."""
    if not alpha > 0:
        raise DomainError(f"alpha must be positive, got {alpha!r}")

    def integrand(t):
        return kernel_plus_half(TWO_PI * t / alpha) * inv_expm1(TWO_PI * t)

    r, sec = _timed(
        integrate_semi_infinite, integrand, cfg.quad_tol / 10, exponential(TWO_PI),
        scale=min(1.0, alpha),
    )
    return _approx(r, sec, scale=-TWO_PI / alpha)


def self_reciprocal_envelope(x: float) -> float:
    """psi(1 + x) - log x for x > 0."""
    return phi(x) + 0.5 / x


def cosine_transform(n: float, cfg: EvalConfig = DEFAULT_CONFIG, tol: float = 1e-10) -> Approximation:
    """Integral of (psi(1+x) - log x) cos(2 pi n x) over x > 0."""
    if not n > 0:
        raise DomainError(f"cosine_transform: n must be positive, got {n!r}")
    spec = OscillatorySpec(self_reciprocal_envelope, TWO_PI * n, singular_start=True)
    r, sec = _timed(integrate_oscillatory_cos, spec, tol)
    return _approx(r, sec)
