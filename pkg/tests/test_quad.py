import math

import pytest
from hypothesis import given, settings, strategies as st

from phixi.config import DEFAULT_CONFIG
from phixi.errors import DepthExhausted, HintViolation, NonAlternatingPanels
from phixi.quad import (
    DecayHint,
    OscillatorySpec,
    QuadratureResult,
    algebraic,
    binet_F,
    binet_F_closed_form,
    binet_F_quadrature,
    binet_log_gamma,
    cosine_transform,
    euler_average,
    exp_kernel_integral,
    exponential,
    frullani_integral,
    gamma_integral,
    gamma_log_integral,
    gauss_kronrod15,
    integrate_adaptive,
    integrate_log_endpoint,
    integrate_oscillatory_cos,
    integrate_semi_infinite,
    psi_log_integral,
    log_integral,
    phi_integral,
    ramanujan_x_integral,
    small_t_expansion,
    sum_phi_integral,
    xi_cosine_integral,
    xi_integral,
)
from phixi.series import left_side
from phixi.specfun import EULER_GAMMA, LOG_TWO_PI, digamma, log_gamma

GAMMA = 0.5772156649015328606
HALF_LOG_2PI = 0.91893853320467274178
L_1 = -0.76066140150781262295
COS_OVER_1PX2 = math.pi / (2 * math.e)
ONE_MINUS_GAMMA_HALF = 0.21139216754923356970


class TestGaussKronrod:
    def test_exact_for_low_degree(self):
        v, err, _ = gauss_kronrod15(lambda x: 3 * x**2 - x + 5, -1.0, 2.0)
        assert v == pytest.approx(9 - 1.5 + 15, abs=1e-13)
        assert err <= 1e-12

    def test_result_record_validation(self):
        with pytest.raises(ValueError):
            QuadratureResult(1.0, -1.0, 15)
        with pytest.raises(ValueError):
            QuadratureResult(1.0, 0.0, 15, intervals=0)


class TestAdaptive:
    def test_polynomial(self):
        assert integrate_adaptive(lambda x: x * x, 0, 1).value == pytest.approx(1 / 3, abs=1e-14)

    def test_sine(self):
        assert integrate_adaptive(math.sin, 0, math.pi).value == pytest.approx(2.0, abs=1e-14)

    def test_log_endpoint_singularity(self):
        r = integrate_adaptive(lambda x: -math.log(x), 0, 1)
        assert r.value == pytest.approx(1.0, abs=1e-12)
        assert r.intervals > 1

    def test_reported_error_is_honest(self):
        r = integrate_adaptive(lambda x: math.exp(-x * x), -3, 3, tol=1e-10)
        assert abs(r.value - math.sqrt(math.pi) * math.erf(3)) <= max(1e-10, r.err_estimate)

    def test_nonintegrable_raises_with_best(self):
        with pytest.raises(DepthExhausted) as info:
            integrate_adaptive(lambda x: 1 / x, 0, 1)
        assert info.value.best is not None

    def test_bad_interval(self):
        with pytest.raises(ValueError):
            integrate_adaptive(math.sin, 1, 0)

    @given(
        st.lists(st.floats(-5, 5), min_size=4, max_size=4),
        st.floats(-5, 5),
        st.floats(-5, 5),
    )
    @settings(max_examples=40, deadline=None)
    def test_linearity(self, c, p, q):
        f = lambda x: c[0] * math.cos(c[1] * x) + c[2] * x**3
        g = lambda x: math.exp(c[3] * x / 5)
        lhs = integrate_adaptive(lambda x: p * f(x) + q * g(x), 0, 2).value
        rhs = p * integrate_adaptive(f, 0, 2).value + q * integrate_adaptive(g, 0, 2).value
        assert lhs == pytest.approx(rhs, abs=1e-12 * (1 + abs(lhs)) * 10)

    @given(st.floats(0.05, 2.95))
    @settings(max_examples=40, deadline=None)
    def test_additivity(self, m):
        f = lambda x: math.exp(math.sin(3 * x)) / (1 + x)
        whole = integrate_adaptive(f, 0, 3).value
        parts = integrate_adaptive(f, 0, m).value + integrate_adaptive(f, m, 3).value
        assert whole == pytest.approx(parts, abs=1e-12)


class TestSemiInfinite:
    def test_exponential(self):
        assert integrate_semi_infinite(lambda t: math.exp(-t), 1e-12, exponential(1)).value == pytest.approx(
            1.0, abs=1e-13
        )

    def test_algebraic(self):
        r = integrate_semi_infinite(lambda t: 1 / (1 + t) ** 3, 1e-11, algebraic(3))
        assert r.value == pytest.approx(0.5, abs=1e-11)

    def test_gamma_integral_engine(self):
        assert gamma_integral().value == pytest.approx(GAMMA, abs=1e-12)

    def test_frullani_engine(self):
        assert frullani_integral(1.0, 2.0).value == pytest.approx(math.log(2), abs=1e-12)

    def test_hint_violation(self):
        with pytest.raises(HintViolation):
            integrate_semi_infinite(lambda x: 1 / (1 + x), 1e-8, exponential(1.0))

    def test_hint_validation(self):
        with pytest.raises(ValueError):
            DecayHint("gaussian", 1.0)
        with pytest.raises(ValueError):
            algebraic(1.0)

    def test_log_endpoint_substitution(self):
        r = integrate_log_endpoint(lambda x: math.log(x) ** 2, 0.0, 1.0, 1e-12)
        assert r.value == pytest.approx(2.0, abs=1e-12)


class TestOscillatory:
    def test_lorentzian(self):
        r = integrate_oscillatory_cos(OscillatorySpec(lambda x: 1 / (1 + x * x), 1.0), 1e-10)
        assert r.value == pytest.approx(COS_OVER_1PX2, abs=1e-10)

    def test_zero_frequency_reduces(self):
        spec = OscillatorySpec(lambda x: math.exp(-x), 0.0, decay=exponential(1.0))
        assert integrate_oscillatory_cos(spec, 1e-12).value == pytest.approx(1.0, abs=1e-12)

    def test_slow_envelope(self):
        # integral of cos(x)/(1+x) over [0, inf) = -(Ci(1) cos 1 + (Si(1) - pi/2) sin 1)
        ref = 0.34337796155642816  # mpmath, 30 digits
        r = integrate_oscillatory_cos(OscillatorySpec(lambda x: 1 / (1 + x), 1.0), 1e-10)
        assert r.value == pytest.approx(ref, abs=1e-9)

    def test_non_alternating(self):
        spec = OscillatorySpec(lambda x: (1 + 2 * math.cos(x)) / (1 + x), 1.0)
        with pytest.raises(NonAlternatingPanels):
            integrate_oscillatory_cos(spec, 1e-8)

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            OscillatorySpec(math.exp, -1.0)

    def test_euler_average_log2(self):
        partial = [sum((-1) ** k / (k + 1) for k in range(n)) for n in range(1, 20)]
        est, inc = euler_average(partial, 12)
        assert est == pytest.approx(math.log(2), abs=1e-8)
        assert abs(partial[-1] - math.log(2)) > 1e-2

    @pytest.mark.parametrize("n", [1.0, 2.0, 5.0])
    def test_cosine_self_reciprocal(self, n):
        target = 0.5 * (digamma(1 + n) - math.log(n))
        assert cosine_transform(n).value == pytest.approx(target, abs=1e-7)

    def test_cosine_transform_n1(self):
        assert cosine_transform(1.0).value == pytest.approx(ONE_MINUS_GAMMA_HALF, abs=1e-7)


class TestXiIntegral:
    def test_matches_left_side(self):
        assert xi_integral(1.0).value == pytest.approx(L_1, abs=1e-8)
        assert abs(xi_integral(1.0).value - left_side(1.0).value) <= 1e-8

    def test_negative(self):
        assert xi_integral(1.0).value < 0

    @pytest.mark.parametrize("alpha", [4.0, 0.3, 1.7, 2.5, 7.0, 11.0])
    def test_even_in_log_alpha(self, alpha):
        assert abs(xi_integral(alpha).value - xi_integral(1 / alpha).value) <= 1e-12

    def test_cosine_integral_at_zero_frequency(self):
        assert xi_cosine_integral(0.0).value > 0


class TestXIntegral:
    def test_even(self):
        n = 0.5 * math.log(2)
        assert abs(ramanujan_x_integral(n).value - ramanujan_x_integral(-n).value) <= 1e-12

    def test_positive_at_zero(self):
        assert ramanujan_x_integral(0.0).value > 0

    @pytest.mark.parametrize("n", [0.0, 0.5 * math.log(2), 0.5 * math.log(5)])
    def test_matches_xi_side(self, n):
        assert abs(ramanujan_x_integral(n).value - xi_cosine_integral(n).value) <= 1e-8


class TestClosedForms:
    def test_binet_tail_at_one(self):
        # the Binet integral part of log Gamma(1)
        stirling = 0.5 * math.log(1.0) - 1.0 + 0.5 * LOG_TWO_PI
        assert binet_log_gamma(1.0).value - stirling == pytest.approx(1 - HALF_LOG_2PI, abs=1e-12)
        assert 1 - HALF_LOG_2PI == pytest.approx(0.0810614668, abs=1e-10)

    @pytest.mark.parametrize("z", [0.5, 1.0, 2.5, 10.0])
    def test_binet(self, z):
        assert binet_log_gamma(z).value == pytest.approx(log_gamma(z), abs=1e-10)

    @pytest.mark.parametrize("mu, nu", [(1, 2), (1, 3), (2, 7)])
    def test_frullani(self, mu, nu):
        assert frullani_integral(mu, nu).value == pytest.approx(math.log(nu / mu), abs=1e-11)

    @pytest.mark.parametrize("a", [1 / (2 * math.pi), 1.0, math.e])
    def test_log_integral(self, a):
        assert log_integral(a).value == pytest.approx(-0.5 * math.log(2 * math.pi * a), abs=1e-10)

    def test_log_integral_vanishing_case(self):
        assert abs(log_integral(1 / (2 * math.pi)).value) <= 1e-10

    @pytest.mark.parametrize("n", [1.0, 3.0])
    def test_exp_kernel(self, n):
        target = (math.log(n) - digamma(1 + n)) / (2 * math.pi)
        assert exp_kernel_integral(n).value == pytest.approx(target, abs=1e-10)

    def test_psi_log_integral(self):
        assert psi_log_integral().value == pytest.approx(HALF_LOG_2PI, abs=1e-10)

    @pytest.mark.parametrize("alpha", [0.5, 1.0, 2.0])
    def test_gamma_log(self, alpha):
        target = EULER_GAMMA - LOG_TWO_PI - math.log(alpha)
        assert gamma_log_integral(alpha).value == pytest.approx(target, abs=1e-10)

    @pytest.mark.parametrize("x", [0.5, 1.0, 3.7, 10.0])
    def test_phi_representation(self, x):
        from phixi.specfun import phi

        assert phi_integral(x).value == pytest.approx(phi(x), abs=1e-10)

    @pytest.mark.parametrize("alpha", [0.5, 1.0, 2.0])
    def test_sum_phi_integral_sign(self, alpha):
        assert sum_phi_integral(alpha).value < 0


class TestBinetF:
    def test_closed_form_at_one(self):
        assert abs(binet_F_quadrature(1.0, 1.0).value - binet_F_closed_form(1.0, 1.0)) <= 1e-10

    @pytest.mark.parametrize("a, t", [(0.3, 0.2), (2.0, 5.0), (1 / (2 * math.pi), 3.0)])
    def test_closed_form(self, a, t):
        assert abs(binet_F(a, t) - binet_F_closed_form(a, t)) <= 1e-10

    def test_small_t_limit(self):
        t = 1e-6
        for a in (1.0, 1 / (2 * math.pi), math.e):
            v = binet_F_quadrature(a, t).value - small_t_expansion(t)
            assert v == pytest.approx(-0.5 * math.log(2 * math.pi * a), abs=1e-10)

    def test_small_t_limit_vanishing_case(self):
        t = 1e-6
        assert abs(binet_F_closed_form(1 / (2 * math.pi), t) - small_t_expansion(t)) <= 1e-10

    def test_second_order_residual_at_1e4(self):
        # at t = 1e-4 the neglected O(t^2) term is about (pi^2/12) t^2, above 1e-9
        t = 1e-4
        v = binet_F_closed_form(1.0, t) - small_t_expansion(t) + 0.5 * LOG_TWO_PI
        assert v == pytest.approx(math.pi**2 / 12 * t * t, rel=1e-2)


def test_defaults_are_shared_config():
    assert xi_integral(2.0, DEFAULT_CONFIG).value == xi_integral(2.0).value
