"""Closed-form values for variances, energies and Rayleigh-quotient bounds.

Every function here is an explicit formula in the width parameter sigma of
the test function u_sigma(x) = x exp(-x^2/(2 sigma^2)).  The quadrature
module recomputes each of them by numerical integration; the two routes are
cross-checked in the verification suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

_SQRT_PI = math.sqrt(math.pi)
_SQRT_2 = math.sqrt(2.0)


def _check_sigma(sigma: float) -> float:
    sigma = float(sigma)
    if not (sigma > 0.0 and math.isfinite(sigma)):
        raise ValueError(f"sigma must be a positive finite real, got {sigma}")
    return sigma


def eq5(sigma: float) -> float:
    """sigma (1 - exp(-4 pi^2 sigma^2)) / (sqrt(2) pi^{3/2}).

    The value of the damped oscillation integral
    int exp(-u^2/(2 sigma^2)) sin^2(sqrt(2) pi u) / pi^2 du, written in the
    cancellation-free form (the product form with exp(+4 pi^2 sigma^2)
    overflows for sigma above ~4).
    """
    sigma = _check_sigma(sigma)
    return sigma * (-math.expm1(-4.0 * math.pi ** 2 * sigma ** 2)) / (_SQRT_2 * math.pi ** 1.5)


def gaussian_cosine_integral(a: float, b: float) -> float:
    """int exp(-b u^2) cos(a u) du = sqrt(pi/b) exp(-a^2/(4b)) for b > 0."""
    a = float(a)
    b = float(b)
    if not (b > 0.0 and math.isfinite(b)):
        raise ValueError(f"b must be a positive finite real, got {b}")
    if a < 0.0:
        raise ValueError(f"a must be nonnegative, got {a}")
    return math.sqrt(math.pi / b) * math.exp(-a * a / (4.0 * b))


def term_I(sigma: float) -> float:
    """sigma^2 (1 - exp(-4 pi^2 sigma^2)) / (4 pi)."""
    sigma = _check_sigma(sigma)
    return sigma ** 2 * (-math.expm1(-4.0 * math.pi ** 2 * sigma ** 2)) / (4.0 * math.pi)


def u_l2_norm_sq(sigma: float) -> float:
    """int u_sigma(x)^2 dx = sqrt(pi) sigma^3 / 2."""
    sigma = _check_sigma(sigma)
    return _SQRT_PI * sigma ** 3 / 2.0


def term_II_lower_bound(sigma: float) -> float:
    """Lower bound -sqrt(pi) sigma^3 / 2 for the cross-correlation term.

    Exactly -u_l2_norm_sq(sigma): the diagonal term cancels against this
    bound, which is what leaves the sigma^2 growth in var_lower_bound.
    """
    return -u_l2_norm_sq(sigma)


def var_lower_bound(sigma: float) -> float:
    """Lower bound on the sine-process variance of u_sigma^*; equals term_I."""
    return term_I(sigma)


def energy_exact(sigma: float) -> float:
    """Dirichlet energy (1/2) int (u_sigma')^2 dx = (3 sqrt(pi)/8) sigma."""
    sigma = _check_sigma(sigma)
    return 3.0 * _SQRT_PI * sigma / 8.0


def energy_upper_bound(sigma: float) -> float:
    """(7 sqrt(pi)/4) sigma, from bounding (u')^2 <= 2 e^{-x^2/s^2} (1 + x^4/s^4)."""
    sigma = _check_sigma(sigma)
    return 7.0 * _SQRT_PI * sigma / 4.0


def rayleigh_upper_bound(sigma: float) -> float:
    """energy_upper_bound / var_lower_bound = 7 pi^{3/2} / (sigma (1 - e^{-4 pi^2 sigma^2})).

    Decays like 1/sigma, which is the whole point: the quotient can be made
    arbitrarily small, so the form has no spectral gap.
    """
    sigma = _check_sigma(sigma)
    return energy_upper_bound(sigma) / var_lower_bound(sigma)


def poisson_variance(sigma: float) -> float:
    """Variance of u_sigma^* under the unit-intensity Poisson process: sqrt(pi) sigma^3/2."""
    return u_l2_norm_sq(sigma)


def gap_criterion_ratio(sigma: float, variance: float) -> float:
    """sigma / variance; a spectral gap is ruled out when this tends to 0."""
    sigma = _check_sigma(sigma)
    variance = float(variance)
    if not (variance > 0.0 and math.isfinite(variance)):
        raise ValueError(f"variance must be a positive finite real, got {variance}")
    return sigma / variance


@dataclass(frozen=True)
class ClosedFormReport:
    """All closed forms at one sigma, as computed quantities."""

    sigma: float
    eq5: float
    term_I: float
    term_II_lb: float
    u_l2_sq: float
    var_lb: float
    energy_ub: float
    energy_exact: float
    rayleigh_ub: float
    poisson_var: float


def closed_form_report(sigma: float) -> ClosedFormReport:
    """Evaluate every closed form at sigma."""
    sigma = _check_sigma(sigma)
    return ClosedFormReport(
        sigma=sigma,
        eq5=eq5(sigma),
        term_I=term_I(sigma),
        term_II_lb=term_II_lower_bound(sigma),
        u_l2_sq=u_l2_norm_sq(sigma),
        var_lb=var_lower_bound(sigma),
        energy_ub=energy_upper_bound(sigma),
        energy_exact=energy_exact(sigma),
        rayleigh_ub=rayleigh_upper_bound(sigma),
        poisson_var=poisson_variance(sigma),
    )
