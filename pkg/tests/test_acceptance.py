"""Acceptance criteria, one check per criterion.

Under pytest each criterion is one test.  Run directly
(``python tests/test_acceptance.py``) to get one PASS/FAIL line each.
"""

import cmath
import math
import random

import pytest

from phixi import identities as ids
from phixi.quad import cosine_transform, psi_log_integral, log_integral, ramanujan_x_integral, xi_cosine_integral
from phixi.quad import xi_integral
from phixi.series import (
    cot_identity_gap,
    defect_limit,
    divergent_variant_partial,
    guinand_side,
    left_side,
    poisson_defect_limit,
)
from phixi.specfun import EULER_GAMMA, digamma, log_gamma, trigamma, xi_on_line, zeta_critical

GAMMA = 0.5772156649015328606


def worst(values):
    return max(values)


def c01_modular_first_equality():
    d = worst(abs(left_side(a).value - left_side(1 / a).value) for a in (0.2, 0.5, 2, 5, 9.7))
    return d <= 1e-10, f"max |L(a) - L(1/a)| = {d:.2e} (tol 1e-10)"


def c02_modular_xi_equality():
    d = worst(abs(left_side(a).value - xi_integral(a).value) for a in (0.5, 1, 2, 3))
    return d <= 1e-8, f"max |L(a) - Xi integral| = {d:.2e} (tol 1e-8)"


def c03_guinand():
    d = worst(abs(guinand_side(z).value - guinand_side(1 / z).value / z) for z in (2, 3, 0.5, complex(1.5, 0.8)))
    return d <= 1e-9, f"max |S(z) - S(1/z)/z| = {d:.2e} (tol 1e-9)"


def c04_cosine_self_reciprocal():
    d = worst(
        abs(cosine_transform(n).value - 0.5 * (digamma(1.0 + n) - math.log(n))) for n in (1.0, 2.0, 5.0)
    )
    d1 = abs(cosine_transform(1.0).value - (1 - GAMMA) / 2)
    ok = d <= 1e-7 and d1 <= 1e-7 and abs((1 - GAMMA) / 2 - 0.2113921675) <= 1e-10
    return ok, f"max deviation {d:.2e}, n=1 vs (1-gamma)/2 {d1:.2e} (tol 1e-7)"


def c05_psi_log_integral():
    d = abs(psi_log_integral().value - 0.5 * math.log(2 * math.pi))
    d_lit = abs(psi_log_integral().value - 0.9189385332)
    return d <= 1e-10 and d_lit <= 1e-10, f"|quad - log(2 pi)/2| = {d:.2e} (tol 1e-10)"


def c06_log_integral():
    d = worst(abs(log_integral(a).value + 0.5 * math.log(2 * math.pi * a)) for a in (1 / (2 * math.pi), 1.0, math.e))
    z = abs(log_integral(1 / (2 * math.pi)).value)
    return d <= 1e-10 and z <= 1e-10, f"max deviation {d:.2e}, value at a=1/(2 pi) {z:.2e} (tol 1e-10)"


def c07_xi_x_equivalence():
    d = worst(
        abs(xi_cosine_integral(n).value - ramanujan_x_integral(n).value)
        for n in (0.0, 0.5 * math.log(2), 0.5 * math.log(5))
    )
    return d <= 1e-8, f"max |Xi side - x side| = {d:.2e} (tol 1e-8)"


def c08_poisson_route():
    d = worst(abs(poisson_defect_limit(z, "f").value - poisson_defect_limit(z, "g").value) for z in (1.0, 2.0, 0.5))
    v = defect_limit(1.0).value
    target = (EULER_GAMMA - math.log(2 * math.pi)) / 2
    e = abs(v - target)
    ok = d <= 1e-8 and e <= 1e-8 and abs(v + 0.6303307013) <= 1e-8
    return ok, f"max |f - g| = {d:.2e}, |defect_limit(1) - (gamma - log 2pi)/2| = {e:.2e} (tol 1e-8)"


def c09_kernel_identities():
    parts = {
        "I5": (max(cot_identity_gap(t) for t in (0.5, 2 * math.pi, 15.0)), 1e-12),
        "I6": (max(ids.check("I6", ids.X(x)).max_abs_diff for x in (0.5, 1.0, 3.7, 10.0)), 1e-10),
        "I7": (max(ids.check("I7", ids.Z(z)).max_abs_diff for z in (1.0, 2.5, 10.0)), 1e-10),
        "I8": (ids.check("I8").max_abs_diff, 1e-10),
        "I9": (max(ids.check("I9", ids.Pair(m, n)).max_abs_diff for m, n in ((1, 2), (1, 3), (2, 7))), 1e-11),
    }
    for key in ("I10", "I11", "I15"):
        desc = ids.CATALOG[key]
        parts[key] = (max(ids.check(key, p).max_abs_diff for p in desc.canonical), 1e-9)
    ok = all(v <= tol for v, tol in parts.values())
    detail = ", ".join(f"{k} {v:.1e}" for k, (v, _) in parts.items())
    return ok, detail


def c10_divergent_variant():
    N = 10_000
    r = divergent_variant_partial(1.0, N) / N
    ok = -GAMMA - 0.01 <= r <= -GAMMA + 0.01
    return ok, f"value(N)/N = {r:.6f} at N=1e4, band [-gamma-0.01, -gamma+0.01]"


def _sector_sample(count, seed=2024):
    rng = random.Random(seed)
    pts = []
    while len(pts) < count:
        z = cmath.rect(math.exp(rng.uniform(math.log(0.5), math.log(50))), rng.uniform(-2.2, 2.2))
        if abs(cmath.phase(z + 1)) <= 0.75 * math.pi:
            pts.append(z)
    return pts


def c11_kernel_accuracy():
    pts = _sector_sample(100)
    rec = max(
        max(abs(digamma(z + 1) - digamma(z) - 1 / z) for z in pts),
        max(abs(trigamma(z + 1) - trigamma(z) + 1 / z**2) for z in pts),
        max(abs(log_gamma(z + 1) - log_gamma(z) - cmath.log(z)) for z in pts),
    )
    ts = [0.37 * k for k in range(1, 271)]
    conj = max(abs(zeta_critical(-t) - zeta_critical(t).conjugate()) for t in ts)
    even = max(abs(xi_on_line(-t) - xi_on_line(t)) for t in ts)
    ok = rec <= 1e-12 and conj <= 1e-13 and even <= 1e-12
    return ok, f"recurrence {rec:.1e} (1e-12), zeta conjugate {conj:.1e} (1e-13), Xi evenness {even:.1e} (1e-12)"


CRITERIA = [
    ("C1 modular relation, L(a) = L(1/a)", c01_modular_first_equality),
    ("C2 modular relation, L(a) = Xi integral", c02_modular_xi_equality),
    ("C3 S(z) = S(1/z)/z", c03_guinand),
    ("C4 cosine self-reciprocality", c04_cosine_self_reciprocal),
    ("C5 digamma-minus-log integral", c05_psi_log_integral),
    ("C6 log integral", c06_log_integral),
    ("C7 Xi side vs x side", c07_xi_x_equivalence),
    ("C8 Poisson defects", c08_poisson_route),
    ("C9 kernel identities", c09_kernel_identities),
    ("C10 divergent variant", c10_divergent_variant),
    ("C11 kernel accuracy", c11_kernel_accuracy),
]


@pytest.mark.parametrize("name, fn", CRITERIA, ids=[c[0].split()[0] for c in CRITERIA])
def test_criterion(name, fn):
    ok, detail = fn()
    print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
    assert ok, detail


def main():
    failures = 0
    for name, fn in CRITERIA:
        ok, detail = fn()
        failures += not ok
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
