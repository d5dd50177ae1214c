"""Digamma modular relations, the Riemann Xi integral, and numerical checks of both."""

from .config import DEFAULT_CONFIG, Approximation, EvalConfig
from .errors import (
    DepthExhausted,
    DomainError,
    HintViolation,
    NonAlternatingPanels,
    NumericalError,
    PhixiError,
    RangeError,
    SectorError,
    ToleranceNotMet,
)
from .series import guinand_side, left_side, sum_phi
from .specfun import (
    EULER_GAMMA,
    LOG_TWO_PI,
    digamma,
    log_gamma,
    phi,
    trigamma,
    xi_on_line,
    xi_weight,
    zeta_critical,
)

__version__ = "0.1.0"
