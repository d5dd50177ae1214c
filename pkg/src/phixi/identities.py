"""Catalog of identities with evaluators for each side, plus check/sweep drivers."""

from __future__ import annotations

import cmath
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, ClassVar, Dict, List, Optional, Sequence, Tuple, Type, Union

from . import series
from .config import DEFAULT_CONFIG, Approximation, EvalConfig
from .errors import DomainError, PhixiError
from .quad import integrals
from .specfun import EULER_GAMMA, LOG_TWO_PI, digamma, log_gamma, phi
from .series import GUINAND_SECTOR

# ---------------------------------------------------------------------------
# Parameters


class Params:
    kind: ClassVar[str] = ""

    def as_dict(self) -> Dict[str, float]:
        raise NotImplementedError

    def label(self) -> str:
        return ";".join(f"{k}={v!r}" for k, v in self.as_dict().items())


@dataclass(frozen=True)
class NoParams(Params):
    kind: ClassVar[str] = "none"

    def as_dict(self):
        return {}


@dataclass(frozen=True)
class Alpha(Params):
    alpha: float
    kind: ClassVar[str] = "alpha"

    def as_dict(self):
        return {"alpha": self.alpha}


@dataclass(frozen=True)
class Z(Params):
    z: complex
    kind: ClassVar[str] = "z"

    def as_dict(self):
        z = complex(self.z)
        return {"z_re": z.real, "z_im": z.imag}

    def label(self):
        z = complex(self.z)
        if z.imag == 0:
            return f"z={z.real!r}"
        return f"z={z!r}"


@dataclass(frozen=True)
class N(Params):
    n: float
    kind: ClassVar[str] = "n"

    def as_dict(self):
        return {"n": self.n}


@dataclass(frozen=True)
class A(Params):
    a: float
    kind: ClassVar[str] = "a"

    def as_dict(self):
        return {"a": self.a}


@dataclass(frozen=True)
class T(Params):
    t: float
    kind: ClassVar[str] = "t"

    def as_dict(self):
        return {"t": self.t}


@dataclass(frozen=True)
class X(Params):
    x: float
    kind: ClassVar[str] = "x"

    def as_dict(self):
        return {"x": self.x}


@dataclass(frozen=True)
class Pair(Params):
    mu: float
    nu: float
    kind: ClassVar[str] = "pair"

    def as_dict(self):
        return {"mu": self.mu, "nu": self.nu}


IdentityParams = Union[NoParams, Alpha, Z, N, A, T, X, Pair]


def fmt_number(v) -> str:
    """17 significant digits, enough to round-trip a double."""
    if isinstance(v, complex):
        return f"{v.real:.17g}{v.imag:+.17g}j"
    return f"{float(v):.17g}"


# ---------------------------------------------------------------------------
# Descriptors and reports

Side = Callable[[IdentityParams, EvalConfig], Approximation]


@dataclass(frozen=True)
class IdentityDescriptor:
    id: str
    title: str
    sides: Tuple[Side, ...]
    side_names: Tuple[str, ...]
    param_type: Type[Params]
    param_domain: str
    validate: Callable[[IdentityParams], None]
    default_tol: float
    anchor: str
    canonical: Tuple[IdentityParams, ...] = ()

    def __post_init__(self):
        if len(self.sides) not in (2, 3) or len(self.side_names) != len(self.sides):
            raise ValueError(f"{self.id}: an identity has 2 or 3 sides")
        if not self.default_tol > 0:
            raise ValueError(f"{self.id}: default_tol must be positive")


@dataclass
class IdentityReport:
    id: str
    params: IdentityParams
    side_values: List[Optional[Approximation]]
    max_abs_diff: float
    tol: float
    passed: bool
    diagnostics: str = ""
    seconds: float = 0.0

    @property
    def terms(self) -> int:
        return sum(s.terms_used for s in self.side_values if s is not None)

    @property
    def nodes(self) -> int:
        return sum(s.nodes_used for s in self.side_values if s is not None)

    def to_json_dict(self) -> dict:
        sides = []
        for s in self.side_values:
            if s is None:
                sides.append({"value": None, "err": None})
            elif isinstance(s.value, complex):
                sides.append({"value": {"re": s.value.real, "im": s.value.imag}, "err": s.err_estimate})
            else:
                sides.append({"value": s.value, "err": s.err_estimate})
        return {
            "id": self.id,
            "params": self.params.as_dict(),
            "sides": sides,
            "max_abs_diff": self.max_abs_diff,
            "tol": self.tol,
            "pass": self.passed,
            "seconds": self.seconds,
        }

    def csv_row(self) -> List[str]:
        vals = ["" if s is None else fmt_number(s.value) for s in self.side_values]
        if len(vals) == 2:
            lhs, mid, rhs = vals[0], "", vals[1]
        else:
            lhs, mid, rhs = vals
        return [
            self.id,
            self.params.label(),
            lhs,
            mid,
            rhs,
            fmt_number(self.max_abs_diff),
            fmt_number(self.tol),
            "true" if self.passed else "false",
            str(self.terms),
            str(self.nodes),
            f"{self.seconds:.6f}",
        ]


CSV_HEADER = ["id", "param", "lhs", "mid", "rhs", "max_abs_diff", "tol", "pass", "terms", "nodes", "seconds"]


# ---------------------------------------------------------------------------
# Domain predicates


def _positive(name):
    def check(p):
        v = getattr(p, name)
        if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
            raise DomainError(f"{name} must be a positive real, got {v!r}")

    return check


def _finite(name):
    def check(p):
        v = getattr(p, name)
        if not (isinstance(v, (int, float)) and math.isfinite(v)):
            raise DomainError(f"{name} must be a finite real, got {v!r}")

    return check


def _nonzero_t(p):
    _finite("t")(p)
    if p.t == 0:
        raise DomainError("t must be nonzero")


def _positive_real_z(p):
    z = complex(p.z)
    if z.imag != 0 or not (math.isfinite(z.real) and z.real > 0):
        raise DomainError(f"z must be a positive real here, got {p.z!r}")


def _sector_z(p):
    z = complex(p.z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)) or z == 0:
        raise DomainError(f"z must be finite and nonzero, got {p.z!r}")
    if abs(cmath.phase(z)) > GUINAND_SECTOR:
        raise DomainError(f"|arg z| must be <= pi/2 - 0.05, got z={p.z!r}")


def _pair(p):
    _positive("mu")(p)
    _positive("nu")(p)


def _any(p):
    return None


def _zval(p) -> Union[float, complex]:
    z = complex(p.z)
    return z.real if z.imag == 0 else z


# ---------------------------------------------------------------------------
# Side evaluators

SMALL_T = 1e-6


def _exact(v):
    return Approximation.exact(v)


def _i1_left(p, cfg):
    return series.left_side(p.alpha, cfg)


def _i1_mid(p, cfg):
    return series.left_side(1.0 / p.alpha, cfg)


def _i1_right(p, cfg):
    return integrals.xi_integral(p.alpha, cfg)


def _i2_left(p, cfg):
    return series.guinand_side(_zval(p), cfg)


def _i2_right(p, cfg):
    z = _zval(p)
    s = series.guinand_side(1 / z, cfg)
    return Approximation(s.value / z, s.err_estimate / abs(z), s.terms_used, s.nodes_used, s.seconds)


def _i3_left(p, cfg):
    return integrals.cosine_transform(p.n, cfg, tol=1e-10)


def _i3_right(p, cfg):
    return _exact(0.5 * (digamma(1.0 + p.n) - math.log(p.n)))


def _i4_left(p, cfg):
    return integrals.exp_kernel_integral(p.n, cfg)


def _i4_right(p, cfg):
    return _exact((math.log(p.n) - digamma(1.0 + p.n)) / (2 * math.pi))


def _i5_left(p, cfg):
    return _exact(series.cot_identity_sides(p.t)[0])


def _i5_right(p, cfg):
    return _exact(series.cot_identity_sides(p.t)[1])


def _i6_left(p, cfg):
    return _exact(phi(p.x))


def _i6_right(p, cfg):
    return integrals.phi_integral(p.x, cfg)


def _i7_left(p, cfg):
    return _exact(log_gamma(_zval(p)))


def _i7_right(p, cfg):
    return integrals.binet_log_gamma(_zval(p), cfg)


def _i8_left(p, cfg):
    return integrals.gamma_integral(cfg)


def _i8_right(p, cfg):
    return _exact(EULER_GAMMA)


def _i9_left(p, cfg):
    return integrals.frullani_integral(p.mu, p.nu, cfg)


def _i9_right(p, cfg):
    return _exact(math.log(p.nu / p.mu))


def _i10_left(p, cfg):
    return integrals.gamma_log_integral(p.alpha, cfg)


def _i10_right(p, cfg):
    return _exact(EULER_GAMMA - LOG_TWO_PI - math.log(p.alpha))


def _i11_left(p, cfg):
    return series.sum_phi(p.alpha, cfg)


def _i11_right(p, cfg):
    return integrals.sum_phi_integral(p.alpha, cfg)


def _i12_left(p, cfg):
    return integrals.xi_cosine_integral(p.n, cfg)


def _i12_right(p, cfg):
    return integrals.ramanujan_x_integral(p.n, cfg)


def _i13_left(p, cfg):
    return integrals.log_integral(p.a, cfg)


def _i13_right(p, cfg):
    return _exact(-0.5 * math.log(2 * math.pi * p.a))


def _i14_left(p, cfg):
    return integrals.psi_log_integral(cfg)


def _i14_right(p, cfg):
    return _exact(0.5 * LOG_TWO_PI)


def _i15_quad(p, cfg):
    q = integrals.binet_F_quadrature(p.a, SMALL_T, cfg)
    shift = integrals.small_t_expansion(SMALL_T)
    return Approximation(q.value - shift, q.err_estimate, q.terms_used, q.nodes_used, q.seconds)


def _i15_closed(p, cfg):
    return _exact(integrals.binet_F_closed_form(p.a, SMALL_T) - integrals.small_t_expansion(SMALL_T))


def _i15_limit(p, cfg):
    return _exact(-0.5 * math.log(2 * math.pi * p.a))


def _i16a_f(p, cfg):
    return series.poisson_defect_limit(_zval(p), "f", cfg)


def _i16a_g(p, cfg):
    return series.poisson_defect_limit(_zval(p), "g", cfg)


def _i16b_left(p, cfg):
    return series.defect_limit(_zval(p), cfg)


def _i16b_right(p, cfg):
    return _exact(series.defect_limit_closed_form(_zval(p)))


_LN2_HALF = 0.5 * math.log(2.0)
_LN5_HALF = 0.5 * math.log(5.0)

CATALOG: Dict[str, IdentityDescriptor] = {
    d.id: d
    for d in [
        IdentityDescriptor(
            "I1", "three-way modular relation for phi and the Xi integral",
            (_i1_left, _i1_mid, _i1_right), ("L(alpha)", "L(1/alpha)", "Xi integral"),
            Alpha, "alpha > 0", _positive("alpha"), 1e-8,
            "modular relation, alpha*beta = 1",
            tuple(Alpha(a) for a in (0.2, 0.5, 1.0, 2.0, 3.0, 5.0, 9.7)),
        ),
        IdentityDescriptor(
            "I2", "S(z) = S(1/z)/z",
            (_i2_left, _i2_right), ("S(z)", "S(1/z)/z"),
            Z, "|arg z| <= pi/2 - 0.05", _sector_z, 1e-9,
            "reciprocal symmetry of S in the right half-plane sector",
            tuple(Z(z) for z in (1.0, 2.0, 3.0, 0.5, complex(1.5, 0.8))),
        ),
        IdentityDescriptor(
            "I3", "cosine self-reciprocality of psi(1+x) - log x",
            (_i3_left, _i3_right), ("cosine transform", "(psi(1+n) - log n)/2"),
            N, "n > 0", _positive("n"), 1e-7,
            "self-reciprocal cosine transform",
            tuple(N(n) for n in (1.0, 2.0, 5.0)),
        ),
        IdentityDescriptor(
            "I4", "exponential-kernel integral",
            (_i4_left, _i4_right), ("integral", "(log n - psi(1+n))/(2 pi)"),
            N, "n > 0", _positive("n"), 1e-10,
            "exponential kernel against the Bose factor",
            tuple(N(n) for n in (1.0, 3.0)),
        ),
        IdentityDescriptor(
            "I5", "partial fractions of the Bose kernel",
            (_i5_left, _i5_right), ("sum 1/(t^2+4n^2pi^2)", "closed form"),
            T, "t != 0", _nonzero_t, 1e-12,
            "partial fractions, t nonzero",
            tuple(T(t) for t in (0.5, 2 * math.pi, 15.0)),
        ),
        IdentityDescriptor(
            "I6", "integral representation of phi",
            (_i6_left, _i6_right), ("phi(x)", "integral"),
            X, "x > 0", _positive("x"), 1e-10,
            "phi via the second Binet form",
            tuple(X(x) for x in (0.5, 1.0, 3.7, 10.0)),
        ),
        IdentityDescriptor(
            "I7", "Binet's integral for log Gamma",
            (_i7_left, _i7_right), ("log_gamma(z)", "Stirling + Binet integral"),
            Z, "real z > 0", _positive_real_z, 1e-10,
            "Binet integral, Re z > 0",
            tuple(Z(z) for z in (1.0, 2.5, 10.0)),
        ),
        IdentityDescriptor(
            "I8", "integral for Euler's constant",
            (_i8_left, _i8_right), ("integral", "gamma"),
            NoParams, "none", _any, 1e-10,
            "Euler constant as a Bose-minus-exponential integral",
            (NoParams(),),
        ),
        IdentityDescriptor(
            "I9", "Frullani integral",
            (_i9_left, _i9_right), ("integral", "log(nu/mu)"),
            Pair, "mu > 0, nu > 0", _pair, 1e-11,
            "Frullani",
            (Pair(1.0, 2.0), Pair(1.0, 3.0), Pair(2.0, 7.0)),
        ),
        IdentityDescriptor(
            "I10", "gamma - log(2 pi alpha) as one integral",
            (_i10_left, _i10_right), ("integral", "gamma - log(2 pi alpha)"),
            Alpha, "alpha > 0", _positive("alpha"), 1e-10,
            "combined Bose and exponential integrals",
            tuple(Alpha(a) for a in (0.5, 1.0, 2.0)),
        ),
        IdentityDescriptor(
            "I11", "series of phi(n alpha) as an integral",
            (_i11_left, _i11_right), ("sum phi(n alpha)", "integral"),
            Alpha, "alpha > 0", _positive("alpha"), 1e-10,
            "series of phi turned into one integral",
            tuple(Alpha(a) for a in (0.5, 1.0, 2.0)),
        ),
        IdentityDescriptor(
            "I12", "Xi cosine integral equals the x-integral",
            (_i12_left, _i12_right), ("Xi-side integral", "pi^{3/2} x-integral"),
            N, "real n", _finite("n"), 1e-8,
            "Xi cosine integral, real frequency",
            tuple(N(n) for n in (0.0, _LN2_HALF, _LN5_HALF)),
        ),
        IdentityDescriptor(
            "I13", "logarithmic integral -log(2 pi a)/2",
            (_i13_left, _i13_right), ("integral", "-log(2 pi a)/2"),
            A, "a > 0", _positive("a"), 1e-10,
            "log integral, vanishing at a = 1/(2 pi)",
            tuple(A(a) for a in (1 / (2 * math.pi), 1.0, math.e)),
        ),
        IdentityDescriptor(
            "I14", "integral of psi(t+1) - 1/(2(t+1)) - log t",
            (_i14_left, _i14_right), ("integral", "log(2 pi)/2"),
            NoParams, "none", _any, 1e-10,
            "digamma minus log integral over (0, inf)",
            (NoParams(),),
        ),
        IdentityDescriptor(
            "I15", "F(a, t) closed form and its t -> 0 limit",
            (_i15_quad, _i15_closed, _i15_limit),
            ("F quadrature - small-t terms", "closed form - small-t terms", "-log(2 pi a)/2"),
            A, "a > 0", _positive("a"), 1e-10,
            "small-t limit of F(a, t)",
            tuple(A(a) for a in (1.0, 1 / (2 * math.pi), math.e)),
        ),
        IdentityDescriptor(
            "I16a", "Poisson defect limits of f and its cosine transform g",
            (_i16a_f, _i16a_g), ("f-side limit", "g-side limit"),
            Z, "real z > 0", _positive_real_z, 1e-8,
            "Poisson defect, f and g sides",
            tuple(Z(z) for z in (1.0, 2.0, 0.5)),
        ),
        IdentityDescriptor(
            "I16b", "limit (gamma - log 2 pi z)/(2z)",
            (_i16b_left, _i16b_right), ("extrapolated limit", "(gamma - log 2 pi z)/(2z)"),
            Z, "real z > 0", _positive_real_z, 1e-10,
            "Poisson defect closed form",
            tuple(Z(z) for z in (1.0, 2.0, 0.5, 3.0)),
        ),
    ]
}


def get(identity_id: str) -> IdentityDescriptor:
    try:
        return CATALOG[identity_id]
    except KeyError:
        raise KeyError(f"unknown identity {identity_id!r}; known: {', '.join(CATALOG)}") from None


def validate(desc: IdentityDescriptor, params: IdentityParams) -> None:
    if not isinstance(params, desc.param_type):
        raise DomainError(
            f"{desc.id} takes {desc.param_type.__name__} parameters, got {type(params).__name__}"
        )
    desc.validate(params)


def eval_side(identity_id: str, side_index: int, params: IdentityParams = NoParams(),
              cfg: EvalConfig = DEFAULT_CONFIG) -> Approximation:
    desc = get(identity_id)
    validate(desc, params)
    if not 0 <= side_index < len(desc.sides):
        raise IndexError(f"{identity_id} has {len(desc.sides)} sides")
    return desc.sides[side_index](params, cfg)


def check(identity_id: str, params: IdentityParams = NoParams(), tol: Optional[float] = None,
          cfg: EvalConfig = DEFAULT_CONFIG) -> IdentityReport:
    """Evaluate every side of an identity and compare them pairwise.

    Domain errors propagate; numerical failures inside a side produce a
    failing report with diagnostics.
    """
    desc = get(identity_id)
    validate(desc, params)
    tol = desc.default_tol if tol is None else tol
    t0 = time.perf_counter()
    values: List[Optional[Approximation]] = []
    problems = []
    for name, side in zip(desc.side_names, desc.sides):
        try:
            values.append(side(params, cfg))
        except PhixiError as exc:
            values.append(None)
            problems.append(f"{name}: {type(exc).__name__}: {exc}")
    seconds = time.perf_counter() - t0
    if problems:
        return IdentityReport(identity_id, params, values, math.inf, tol, False,
                              "; ".join(problems), seconds)
    diffs = [
        abs(values[i].value - values[j].value)
        for i in range(len(values))
        for j in range(i + 1, len(values))
    ]
    worst = max(diffs)
    passed = worst <= tol
    diag = "" if passed else f"max |side difference| {worst:.3e} exceeds tol {tol:.1e}"
    return IdentityReport(identity_id, params, values, worst, tol, passed, diag, seconds)


def sweep(identity_id: str, grid: Sequence[IdentityParams], cfg: EvalConfig = DEFAULT_CONFIG,
          tol: Optional[float] = None, max_workers: int = 1) -> List[IdentityReport]:
    """One report per grid point, in grid order."""
    if not grid:
        raise ValueError("sweep needs a nonempty grid")
    desc = get(identity_id)
    for p in grid:
        validate(desc, p)

    def run(p):
        return check(identity_id, p, tol, cfg)

    if max_workers <= 1:
        return [run(p) for p in grid]
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        return list(pool.map(run, grid))


def make_grid(desc: IdentityDescriptor, lo: float, hi: float, points: int,
              log_spaced: bool = False, fixed: Optional[dict] = None) -> List[IdentityParams]:
    """Grid over the identity's scalar parameter.

    For ``Pair`` the sweep runs over nu with mu taken from ``fixed``; for
    ``Z`` over the real part with the imaginary part from ``fixed``.
    """
    fixed = fixed or {}
    if points < 1:
        raise ValueError("points must be >= 1")
    if not lo < hi and points > 1:
        raise ValueError("need min < max")
    if desc.param_type is NoParams:
        raise ValueError(f"{desc.id} has no parameter to sweep")
    if log_spaced:
        if lo <= 0:
            raise ValueError("log-spaced grid needs min > 0")
        vals = [lo * (hi / lo) ** (k / (points - 1)) if points > 1 else lo for k in range(points)]
    else:
        vals = [lo + (hi - lo) * k / (points - 1) if points > 1 else lo for k in range(points)]
    pt = desc.param_type
    if pt is Pair:
        return [Pair(fixed.get("mu", 1.0), v) for v in vals]
    if pt is Z:
        im = fixed.get("z_im", 0.0)
        return [Z(complex(v, im) if im else v) for v in vals]
    return [pt(v) for v in vals]


# ---------------------------------------------------------------------------
# Negative test for the divergent variant (gamma subtracted inside phi)


@dataclass
class DivergenceReport:
    alpha: float
    N: int
    ratio: float
    passed: bool
    band: float = 0.01

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"{status} divergent variant: partial(N={self.N})/N = {self.ratio:.6f},"
                f" -gamma = {-EULER_GAMMA:.6f}, band {self.band}")


def divergence_check(alpha: float = 1.0, N: int = 10_000, band: float = 0.01) -> DivergenceReport:
    ratio = series.divergent_variant_partial(alpha, N) / N
    return DivergenceReport(alpha, N, ratio, abs(ratio + EULER_GAMMA) <= band, band)


def selftest(cfg: EvalConfig = DEFAULT_CONFIG, tol: Optional[float] = None):
    """Every catalog entry on its canonical set, plus the divergence check."""
    reports = []
    for desc in CATALOG.values():
        for p in desc.canonical:
            reports.append(check(desc.id, p, tol, cfg))
    return reports, divergence_check()
