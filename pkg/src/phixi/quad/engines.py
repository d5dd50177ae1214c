"""Quadrature engines: adaptive Gauss-Kronrod, dyadic semi-infinite
panels, and an alternating-panel engine for cosine transforms."""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional

from ..errors import DepthExhausted, HintViolation, NonAlternatingPanels

Integrand = Callable[[float], float]

_EPS = 2.0**-52

# 15-point Kronrod extension of the 7-point Gauss-Legendre rule (QUADPACK qk15)
_XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)
_WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
_WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    err_estimate: float
    nodes_used: int
    intervals: int = 1

    def __post_init__(self):
        if not self.err_estimate >= 0:
            raise ValueError("err_estimate must be non-negative")
        if self.intervals < 1:
            raise ValueError("intervals must be at least 1")


def gauss_kronrod15(f: Integrand, a: float, b: float):
    """One 7/15 Gauss-Kronrod panel.

    Returns ``(value, err, roundoff_floor)``.  The error estimate follows
    QUADPACK: the Gauss/Kronrod difference scaled by the mean-absolute
    deviation of the integrand.
    """
    center = 0.5 * (a + b)
    half = 0.5 * (b - a)
    fc = f(center)
    res_k = fc * _WGK[7]
    res_g = fc * _WG[3]
    res_abs = abs(res_k)
    fv1 = [0.0] * 7
    fv2 = [0.0] * 7
    for j in range(7):
        dx = half * _XGK[j]
        f1 = f(center - dx)
        f2 = f(center + dx)
        fv1[j] = f1
        fv2[j] = f2
        res_k += _WGK[j] * (f1 + f2)
        res_abs += _WGK[j] * (abs(f1) + abs(f2))
        if j % 2 == 1:
            res_g += _WG[j // 2] * (f1 + f2)
    mean = 0.5 * res_k
    res_asc = _WGK[7] * abs(fc - mean)
    for j in range(7):
        res_asc += _WGK[j] * (abs(fv1[j] - mean) + abs(fv2[j] - mean))
    value = res_k * half
    res_abs *= abs(half)
    res_asc *= abs(half)
    err = abs((res_k - res_g) * half)
    if res_asc != 0 and err != 0:
        err = res_asc * min(1.0, (200.0 * err / res_asc) ** 1.5)
    floor = 50.0 * _EPS * res_abs
    return value, max(err, floor), floor


@dataclass(order=True)
class _Panel:
    key: float
    a: float = field(compare=False)
    b: float = field(compare=False)
    value: float = field(compare=False)
    err: float = field(compare=False)
    depth: int = field(compare=False)


def integrate_adaptive(
    f: Integrand,
    a: float,
    b: float,
    tol: float = 1e-12,
    rel_tol: float = 1e-14,
    max_depth: int = 40,
    max_intervals: int = 5000,
) -> QuadratureResult:
    """Globally adaptive 7/15 Gauss-Kronrod quadrature of f over [a, b].

    Stops when the summed error estimate is below ``max(tol, rel_tol*|I|)``.
    Panels whose estimate has reached the rounding floor, or whose
    bisection depth hits ``max_depth``, are frozen.  Raises
    :class:`DepthExhausted` (with ``best`` set) if the target is not met.
    """
    if not a < b:
        raise ValueError(f"need a < b, got [{a!r}, {b!r}]")
    value, err, floor = gauss_kronrod15(f, a, b)
    nodes = 15
    heap: List[_Panel] = []
    frozen: List[_Panel] = []
    running_value = 0.0
    running_err = 0.0

    def push(lo, hi, v, e, fl, depth):
        nonlocal running_value, running_err
        running_value += v
        running_err += e
        panel = _Panel(-e, lo, hi, v, e, depth)
        if e <= fl * 1.0000001 or depth >= max_depth:
            frozen.append(panel)
        else:
            heapq.heappush(heap, panel)

    push(a, b, value, err, floor, 0)
    frozen_err = 0.0
    while heap and len(frozen) + len(heap) < max_intervals:
        target = max(tol, rel_tol * abs(running_value))
        if running_err <= target:
            break
        frozen_err = math.fsum(p.err for p in frozen) if frozen else 0.0
        if frozen_err > target and running_err - frozen_err <= 0.1 * frozen_err:
            # the remaining error sits in panels that can no longer be split
            break
        worst = heapq.heappop(heap)
        running_value -= worst.value
        running_err -= worst.err
        mid = 0.5 * (worst.a + worst.b)
        if not worst.a < mid < worst.b:
            push(worst.a, worst.b, worst.value, worst.err, worst.err, max_depth)
            continue
        for lo, hi in ((worst.a, mid), (mid, worst.b)):
            v, e, fl = gauss_kronrod15(f, lo, hi)
            nodes += 15
            push(lo, hi, v, e, fl, worst.depth + 1)

    total = math.fsum(p.value for p in frozen) + math.fsum(p.value for p in heap)
    total_err = math.fsum(p.err for p in frozen) + math.fsum(p.err for p in heap)
    intervals = len(frozen) + len(heap)
    result = QuadratureResult(total, total_err, nodes, intervals)
    target = max(tol, rel_tol * abs(total))
    if total_err > target and heap:
        raise DepthExhausted(
            f"adaptive quadrature on [{a:g}, {b:g}] stalled at err {total_err:.2e}"
            f" > {target:.2e} after {intervals} intervals",
            best=result,
        )
    return result


def integrate_log_endpoint(f: Integrand, a: float, b: float, tol: float) -> QuadratureResult:
    """Integral of f over (a, b] for f with an integrable (e.g. logarithmic)
    singularity at a.

    Substitutes x = a + (b - a) e^{-v}, turning the singular end into an
    exponentially decaying tail in v.
    """
    if not a < b:
        raise ValueError(f"need a < b, got [{a!r}, {b!r}]")
    width = b - a

    def mapped(v):
        e = math.exp(-v)
        return f(a + width * e) * width * e

    return integrate_semi_infinite(mapped, tol, exponential(0.5), scale=4.0)


@dataclass(frozen=True)
class DecayHint:
    """Envelope used to bound the neglected tail of a semi-infinite integral.

    ``kind="exponential"``: |f(x)| decays at least like exp(-rate*x).
    ``kind="algebraic"``: |f(x)| decays at least like x**(-rate), rate > 1.
    """

    kind: str
    rate: float

    def __post_init__(self):
        if self.kind not in ("exponential", "algebraic"):
            raise ValueError(f"unknown decay kind {self.kind!r}")
        if self.kind == "exponential" and not self.rate > 0:
            raise ValueError("exponential rate must be positive")
        if self.kind == "algebraic" and not self.rate > 1:
            raise ValueError("algebraic power must exceed 1")

    def tail_bound(self, fx: float, x: float) -> float:
        if self.kind == "exponential":
            return abs(fx) / self.rate
        return abs(fx) * x / (self.rate - 1.0)


def exponential(rate: float) -> DecayHint:
    return DecayHint("exponential", rate)


def algebraic(power: float) -> DecayHint:
    return DecayHint("algebraic", power)


def integrate_semi_infinite(
    f: Integrand,
    tol: float,
    decay_hint: DecayHint,
    start: float = 0.0,
    scale: float = 1.0,
    max_panels: int = 80,
    singular_start: bool = False,
) -> QuadratureResult:
    """Integral of f over [start, inf) on dyadic panels.

    Panels are [start, start+scale], then [start + scale*2^k,
    start + scale*2^(k+1)].  Summation stops once the hint bounds the
    remaining tail by tol/10 at two consecutive panel ends.  With
    ``singular_start`` the first panel goes through
    :func:`integrate_log_endpoint`.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    panel_tol = tol / 8.0
    edges_lo, edges_hi = start, start + scale
    values: List[float] = []
    err = 0.0
    nodes = 0
    intervals = 0
    below = 0
    growth = 0
    overshoot = 0
    last_bound = math.inf
    for k in range(max_panels):
        if k == 0 and singular_start:
            r = integrate_log_endpoint(f, edges_lo, edges_hi, panel_tol)
        else:
            r = integrate_adaptive(f, edges_lo, edges_hi, tol=panel_tol)
        values.append(r.value)
        err += r.err_estimate
        nodes += r.nodes_used
        intervals += r.intervals
        bound = decay_hint.tail_bound(f(edges_hi), edges_hi - start)
        nodes += 1
        below = below + 1 if bound <= tol / 10.0 else 0
        if k >= 2 and below >= 2:
            total = math.fsum(values)
            return QuadratureResult(total, err + bound, nodes, intervals)
        # the bound at a panel's left edge covers everything to its right
        overshoot = overshoot + 1 if abs(r.value) > 2.0 * last_bound + tol else 0
        growth = growth + 1 if (k >= 8 and bound > last_bound) else 0
        if growth >= 4 or overshoot >= 3:
            raise HintViolation(
                f"decay hint inconsistent with panels ending at x={edges_hi:.3g}",
                best=QuadratureResult(math.fsum(values), err + bound, nodes, intervals),
            )
        last_bound = bound
        edges_lo, edges_hi = edges_hi, start + 2.0 * (edges_hi - start)
        panel_tol = max(panel_tol / 2.0, tol / 1e4)
    raise HintViolation(
        f"tail bound {bound:.2e} still above {tol / 10:.2e} after {max_panels} panels",
        best=QuadratureResult(math.fsum(values), err + bound, nodes, intervals),
    )


@dataclass(frozen=True)
class OscillatorySpec:
    """Integrand ``envelope(x) * cos(angular_frequency * x)`` on [start, inf)."""

    envelope: Integrand
    angular_frequency: float
    start: float = 0.0
    decay: Optional[DecayHint] = None
    singular_start: bool = False

    def __post_init__(self):
        if not self.angular_frequency >= 0:
            raise ValueError("angular_frequency must be non-negative")
        if not self.start >= 0:
            raise ValueError("start must be non-negative")


def euler_average(partial_sums: List[float], depth: int):
    """Iterated averaging of partial sums of an alternating series.

    Returns ``(estimate, increment)`` where ``increment`` is the change
    produced by the final averaging pass.
    """
    row = list(partial_sums)
    depth = min(depth, len(row) - 1)
    previous = row[-1]
    for _ in range(depth):
        previous = row[-1]
        row = [0.5 * (row[i] + row[i + 1]) for i in range(len(row) - 1)]
    return row[-1], abs(row[-1] - previous)


def integrate_oscillatory_cos(
    spec: OscillatorySpec,
    tol: float,
    head_periods: int = 2,
    panels: int = 40,
    depth: int = 12,
    max_panels: int = 640,
) -> QuadratureResult:
    """Integral of envelope(x)*cos(w x) over [start, inf).

    The head up to a cosine zero a couple of periods in is done adaptively;
    the rest is a series of half-period panels between consecutive zeros,
    summed with iterated averaging.  Works for envelopes decaying as slowly
    as 1/x.
    """
    w = spec.angular_frequency
    if w == 0:
        hint = spec.decay or algebraic(2.0)
        return integrate_semi_infinite(
            spec.envelope, tol, hint, start=spec.start, singular_start=spec.singular_start
        )

    def integrand(x):
        return spec.envelope(x) * math.cos(w * x)

    half_period = math.pi / w
    first = math.ceil((spec.start * w / math.pi) - 0.5) + 2 * head_periods
    zero = (first + 0.5) * half_period
    if spec.singular_start:
        split = spec.start + min(1.0, 0.5 * half_period)
        near = integrate_log_endpoint(integrand, spec.start, split, tol / 20.0)
        far = integrate_adaptive(integrand, split, zero, tol=tol / 20.0)
        head = QuadratureResult(
            near.value + far.value,
            near.err_estimate + far.err_estimate,
            near.nodes_used + far.nodes_used,
            near.intervals + far.intervals,
        )
    else:
        head = integrate_adaptive(integrand, spec.start, zero, tol=tol / 10.0)
    nodes = head.nodes_used
    intervals = head.intervals
    err = head.err_estimate

    panel_values: List[float] = []
    panel_tol = tol / 50.0
    target = panels
    while True:
        while len(panel_values) < target:
            j = first + len(panel_values)
            lo = (j + 0.5) * half_period
            hi = (j + 1.5) * half_period
            r = integrate_adaptive(integrand, lo, hi, tol=panel_tol / target)
            nodes += r.nodes_used
            intervals += r.intervals
            err += r.err_estimate
            panel_values.append(r.value)
        signs = [v > 0 for v in panel_values]
        if any(signs[i] == signs[i + 1] for i in range(len(signs) - 1)):
            raise NonAlternatingPanels(
                "panel signs stop alternating; envelope is not eventually monotone",
                best=QuadratureResult(head.value + math.fsum(panel_values), err, nodes, intervals),
            )
        partial = []
        acc = 0.0
        for v in panel_values:
            acc += v
            partial.append(acc)
        tail, increment = euler_average(partial, depth)
        if increment <= tol / 4 or target >= max_panels:
            break
        target *= 2
    total_err = err + increment
    value = head.value + tail
    result = QuadratureResult(value, total_err, nodes, intervals)
    if increment > tol:
        raise NonAlternatingPanels(
            f"averaged tail did not settle: last increment {increment:.2e}", best=result
        )
    return result
