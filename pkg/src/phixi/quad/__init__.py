from .engines import (
    integrate_log_endpoint,
    DecayHint,
    OscillatorySpec,
    QuadratureResult,
    algebraic,
    euler_average,
    exponential,
    gauss_kronrod15,
    integrate_adaptive,
    integrate_oscillatory_cos,
    integrate_semi_infinite,
)
from .integrals import (
    binet_F,
    binet_F_closed_form,
    binet_F_quadrature,
    binet_log_gamma,
    cosine_transform,
    exp_kernel_integral,
    frullani_integral,
    gamma_integral,
    gamma_log_integral,
    kernel,
    kernel_plus_half,
    psi_log_integral,
    log_integral,
    phi_integral,
    ramanujan_x_integral,
    small_t_expansion,
    sum_phi_integral,
    xi_cosine_integral,
    xi_integral,
)
