"""Point-process variance growth, Dirichlet energy and Rayleigh-quotient numerics.

Closed forms, an independent quadrature oracle, sine-kernel / Poisson
sampling with Monte Carlo estimators, and a finite Dyson Brownian motion
simulator, all cross-verifying each other.
"""

__version__ = "0.1.0"

from .testfn import Configuration, GaussianBump, TestFunction, eval_du, eval_u, linear_statistic, square_field_1d
from .closedform import (
    ClosedFormReport,
    closed_form_report,
    energy_exact,
    energy_upper_bound,
    eq5,
    gap_criterion_ratio,
    gaussian_cosine_integral,
    poisson_variance,
    rayleigh_upper_bound,
    term_I,
    term_II_lower_bound,
    u_l2_norm_sq,
    var_lower_bound,
)
from .quadrature import (
    DEFAULT_SPEC,
    DEFAULT_SPEC_2D,
    IntegralResult,
    J_integral,
    NonFiniteIntegrand,
    QuadratureSpec,
    RouteDisagreement,
    ToleranceNotMet,
    energy_quadrature,
    integrate_1d,
    number_variance_exact,
    var_exact_sine,
    var_exact_sine_cross_checked,
)
