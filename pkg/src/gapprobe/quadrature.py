"""Numerical integration oracles for every closed form in this package.

Three whole-line rules are provided behind :func:`integrate_1d`:

``adaptive_simpson``
    Composite Simpson on dyadic segments [U, 2U] growing outward from the
    origin, each segment refined by panel doubling until two consecutive
    agreements, then confirmed against a two-point Gauss rule on the same
    panels (the Gauss nodes are off the dyadic lattice, so an aliased value
    on an under-resolved oscillation cannot pass both rules).  Tails with
    1/u^2 decay are finished with one Richardson step in the truncation
    radius, so slowly decaying oscillatory integrands such as sin^2(cu)/u^2
    still converge to full tolerance.
``gauss_hermite_mapped``
    Gauss-Hermite quadrature with dilated nodes, order escalated until two
    consecutive agreements.  Intended for integrands with Gaussian decay.
``tanh_sinh``
    Double-exponential transform x = sinh((pi/2) sinh t) with trapezoid
    halving.  For smooth, rapidly decaying, non-oscillatory integrands.

Integrands must be vectorized (ndarray in, ndarray out).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .closedform import term_I, u_l2_norm_sq
from .util import sinc_sq

_RULES = ("adaptive_simpson", "gauss_hermite_mapped", "tanh_sinh")


class QuadratureError(Exception):
    """Base class for integration failures."""


class ToleranceNotMet(QuadratureError):
    """The error estimate still exceeds the tolerance at the work cap."""


class NonFiniteIntegrand(QuadratureError):
    """The integrand produced a NaN or infinity."""


class RouteDisagreement(QuadratureError):
    """Two independent routes to the same integral disagree beyond tolerance."""


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and rule selection for :func:`integrate_1d`.

    ``max_subdivisions`` caps the total number of refinement passes
    (panel doublings / order escalations) spent on one integral.
    """

    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_subdivisions: int = 2000
    rule: str = "adaptive_simpson"

    def __post_init__(self):
        if not (self.abs_tol > 0.0):
            raise ValueError("abs_tol must be positive")
        if not (self.rel_tol > 0.0):
            raise ValueError("rel_tol must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")
        if self.rule not in _RULES:
            raise ValueError(f"rule must be one of {_RULES}, got {self.rule!r}")


DEFAULT_SPEC = QuadratureSpec()
# 2D integrals are cross-checks of analytic values, not primary oracles;
# a looser relative target keeps them cheap.
DEFAULT_SPEC_2D = QuadratureSpec(abs_tol=1e-10, rel_tol=1e-8)


@dataclass(frozen=True)
class IntegralResult:
    value: float
    error_estimate: float
    evaluations: int


class _Budget:
    """Counts refinement passes and function evaluations."""

    def __init__(self, passes: int):
        self.passes = passes
        self.evaluations = 0

    def spend_pass(self):
        self.passes -= 1
        if self.passes < 0:
            raise ToleranceNotMet("refinement budget exhausted (max_subdivisions)")


def _eval(f: Callable, x: np.ndarray, budget: _Budget) -> np.ndarray:
    y = np.asarray(f(x), dtype=float)
    if y.shape != x.shape:
        y = np.broadcast_to(y, x.shape).astype(float)
    budget.evaluations += x.size
    if not np.all(np.isfinite(y)):
        bad = x[~np.isfinite(y)]
        raise NonFiniteIntegrand(f"integrand not finite near x={bad.flat[0]:.6g}")
    return y


_MACHINE_FLOOR = 1e-15


def _simpson_segment(f, a: float, b: float, tol: float, budget: _Budget,
                     m0: int = 8, max_panels: int = 1 << 21) -> tuple[float, float]:
    """Composite Simpson on [a, b] with doubling and alias confirmation.

    Returns (value, error_estimate).  Acceptance requires two consecutive
    doublings to agree within ``tol`` with a fourth-order decay signature,
    then a composite two-point Gauss rule on the final panels to agree as
    well; the Gauss nodes break any sampling resonance with an oscillatory
    integrand that the dyadic Simpson lattice might hit.
    """
    vals: list[float] = []
    m = m0
    d1 = d2 = math.inf
    while m <= max_panels:
        budget.spend_pass()
        x = np.linspace(a, b, 2 * m + 1)
        fx = _eval(f, x, budget)
        h = (b - a) / (2 * m)
        val = h / 3.0 * (fx[0] + fx[-1] + 4.0 * fx[1:-1:2].sum() + 2.0 * fx[2:-2:2].sum())
        vals.append(val)
        if len(vals) >= 3:
            d1 = abs(vals[-1] - vals[-2])
            d2 = abs(vals[-2] - vals[-3])
            floor = _MACHINE_FLOOR * max(abs(val), 1e-300)
            order_ok = d1 <= floor or d2 >= 6.0 * d1
            if d1 <= tol and d2 <= 16.0 * tol and order_ok:
                mid = (x[:-1] + x[1:]) / 2.0
                off = h / (2.0 * math.sqrt(3.0))
                g = _eval(f, mid - off, budget) + _eval(f, mid + off, budget)
                gauss2 = h / 2.0 * float(np.sum(g))
                if abs(gauss2 - val) <= max(4.0 * tol, 8.0 * floor):
                    return float(val), float(max(d1, floor))
        m *= 2
    raise ToleranceNotMet(
        f"segment [{a:.3g}, {b:.3g}] did not reach tol={tol:.3g} (last diff {d1:.3g})")


def _integrate_simpson_ladder(f, spec: QuadratureSpec, scale: float,
                              budget: _Budget) -> IntegralResult:
    """Dyadic segments outward from the origin with a Richardson tail step.

    Partial integrals S_k over [-U_k, U_k] with U_k = scale * 2^k satisfy
    I - S_k ~ a/U_k for 1/u^2 tails (and ~0 for fast decay), so
    R_k = 2 S_k - S_{k-1} removes the leading tail term in both cases.
    Stops when consecutive Richardson values settle within tolerance.
    """
    k_max = 22
    base = float(scale)
    seg_err = 0.0
    cum, e = _simpson_segment(f, -base, base, spec.abs_tol, budget)
    seg_err += e
    partials = [cum]
    richardson: list[float] = []
    U = base
    for k in range(1, k_max + 1):
        tol_k = max(spec.abs_tol, spec.rel_tol * abs(cum)) / (4.0 * k_max)
        vr, er = _simpson_segment(f, U, 2.0 * U, tol_k / 2.0, budget)
        vl, el = _simpson_segment(f, -2.0 * U, -U, tol_k / 2.0, budget)
        seg_err += er + el
        cum += vr + vl
        U *= 2.0
        partials.append(cum)
        richardson.append(2.0 * partials[-1] - partials[-2])
        if len(richardson) >= 3:
            R = richardson[-1]
            tol = max(spec.abs_tol, spec.rel_tol * abs(R))
            d1 = abs(richardson[-1] - richardson[-2])
            d2 = abs(richardson[-2] - richardson[-3])
            if d1 + seg_err <= 0.25 * tol and d2 <= tol:
                return IntegralResult(R, d1 + seg_err, budget.evaluations)
    R = richardson[-1]
    err = abs(richardson[-1] - richardson[-2]) + seg_err
    if err <= max(spec.abs_tol, spec.rel_tol * abs(R)):
        return IntegralResult(R, err, budget.evaluations)
    raise ToleranceNotMet(
        f"tail ladder stalled at |x|={U:.3g}: estimate {err:.3g} above tolerance")


@lru_cache(maxsize=16)
def _hermgauss(order: int):
    x, w = np.polynomial.hermite.hermgauss(order)
    # total weights w_i e^{x_i^2} assembled in log space; safe up to order ~300
    return x, np.exp(np.log(w) + x * x)


def _integrate_gauss_hermite(f, spec: QuadratureSpec, scale: float,
                             budget: _Budget) -> IntegralResult:
    orders = (24, 32, 48, 64, 96, 128, 192, 256)
    prev = None
    diff_prev = math.inf
    for order in orders:
        budget.spend_pass()
        x, tw = _hermgauss(order)
        fx = _eval(f, scale * x, budget)
        # exact summation: heavily cancelling sums (damped cosines with
        # near-zero integrals) would otherwise be limited to ~1e-15 absolute
        val = scale * math.fsum((tw * fx).tolist())
        if prev is not None:
            diff = abs(val - prev)
            tol = max(spec.abs_tol, spec.rel_tol * abs(val))
            if diff <= tol and diff_prev <= 16.0 * tol:
                return IntegralResult(val, diff, budget.evaluations)
            diff_prev = diff
        prev = val
    raise ToleranceNotMet(
        f"Gauss-Hermite did not converge by order {orders[-1]} (last diff {diff_prev:.3g})")


def _integrate_tanh_sinh(f, spec: QuadratureSpec, scale: float,
                         budget: _Budget) -> IntegralResult:
    # x = scale*sinh(c sinh t); t capped where |x| ~ 2e15, beyond which any
    # admissible integrand contributes nothing representable.
    c = math.pi / 2.0
    t_max = math.asinh(36.0 / c)

    def nodes(ts: np.ndarray):
        s = c * np.sinh(ts)
        x = scale * np.sinh(s)
        w = scale * c * np.cosh(ts) * np.cosh(s)
        return x, w

    h = 0.5
    ts = np.arange(-t_max, t_max + h / 2, h)
    x, w = nodes(ts)
    budget.spend_pass()
    total = float(np.sum(w * _eval(f, x, budget)))
    prev = h * total
    diff_prev = math.inf
    for _ in range(14):
        budget.spend_pass()
        h /= 2.0
        ts_new = np.arange(-t_max + h, t_max, 2 * h)
        x, w = nodes(ts_new)
        total += float(np.sum(w * _eval(f, x, budget)))
        val = h * total
        diff = abs(val - prev)
        tol = max(spec.abs_tol, spec.rel_tol * abs(val))
        if diff <= tol and diff_prev <= 16.0 * tol:
            return IntegralResult(val, diff, budget.evaluations)
        diff_prev = diff
        prev = val
    raise ToleranceNotMet(f"tanh-sinh did not converge (last diff {diff_prev:.3g})")


def integrate_1d(f: Callable, spec: QuadratureSpec | None = None,
                 scale: float = 1.0) -> IntegralResult:
    """Integrate a vectorized integrand over the whole real line.

    ``scale`` is the characteristic width of the integrand (node dilation
    for the Hermite and tanh-sinh rules, the innermost segment size for the
    Simpson ladder); the default 1.0 is fine for O(1)-width integrands.

    Raises :class:`ToleranceNotMet` if the requested tolerance cannot be
    certified within the work cap, :class:`NonFiniteIntegrand` on NaN/inf.
    """
    spec = spec or DEFAULT_SPEC
    if not (scale > 0.0 and math.isfinite(scale)):
        raise ValueError(f"scale must be a positive finite real, got {scale}")
    budget = _Budget(spec.max_subdivisions)
    if spec.rule == "adaptive_simpson":
        return _integrate_simpson_ladder(f, spec, scale, budget)
    if spec.rule == "gauss_hermite_mapped":
        return _integrate_gauss_hermite(f, spec, scale, budget)
    return _integrate_tanh_sinh(f, spec, scale, budget)


# ---------------------------------------------------------------------------
# Named integrals


_SQRT2PI_FREQ = math.sqrt(2.0) * math.pi  # frequency of the squared sine factor


def _damped_sinc_sq(sigma: float):
    """Integrand e^{-u^2/(2 s^2)} sin^2(sqrt(2) pi u) / (pi^2 u^2).

    Equals 2 sinc_sq(sqrt(2) pi u) times the Gaussian, with limit value 2
    at u = 0 coming from the series patch inside sinc_sq.
    """

    def f(u):
        u = np.asarray(u, dtype=float)
        t = np.minimum(u * u / (2.0 * sigma * sigma), 1e6)
        return np.exp(-t) * 2.0 * sinc_sq(_SQRT2PI_FREQ * u)

    return f


def J_integral(sigma: float, spec: QuadratureSpec | None = None) -> IntegralResult:
    """J(sigma) = int e^{-u^2/(2 sigma^2)} sin^2(sqrt(2) pi u)/(pi^2 u^2) du.

    Strictly increasing in sigma with limit sqrt(2); the Gaussian envelope
    makes the Simpson ladder terminate after a few octaves.
    """
    sigma = float(sigma)
    if not (sigma > 0.0 and math.isfinite(sigma)):
        raise ValueError(f"sigma must be a positive finite real, got {sigma}")
    spec = spec or DEFAULT_SPEC
    return integrate_1d(_damped_sinc_sq(sigma), spec, scale=max(1.0, sigma))


def energy_quadrature(sigma: float, spec: QuadratureSpec | None = None) -> IntegralResult:
    """(1/2) int (u_sigma'(x))^2 dx by quadrature."""
    sigma = float(sigma)
    if not (sigma > 0.0 and math.isfinite(sigma)):
        raise ValueError(f"sigma must be a positive finite real, got {sigma}")
    spec = spec or DEFAULT_SPEC

    def f(x):
        x = np.asarray(x, dtype=float)
        r = np.minimum(x * x / (sigma * sigma), 1e6)
        return 0.5 * np.exp(-r) * (1.0 - r) ** 2

    return integrate_1d(f, spec, scale=max(1.0, sigma))


_VAR_ROUTES = ("rotated", "direct2d")


def _var_rotated(sigma: float, spec: QuadratureSpec) -> IntegralResult:
    # diagonal term + product term + Gaussian-weighted oscillation integral
    j = J_integral(sigma, spec)
    coef = math.sqrt(2.0 * math.pi) * sigma ** 3 / 4.0
    value = u_l2_norm_sq(sigma) + term_I(sigma) - coef * j.value
    return IntegralResult(value, coef * j.error_estimate + _MACHINE_FLOOR * abs(value),
                          j.evaluations)


def _var_direct2d(sigma: float, spec: QuadratureSpec) -> IntegralResult:
    """Variance as int u^2 - iint u(x)u(y) K(x-y)^2 dx dy, iterated directly.

    Inner integral over y at fixed offset d = x - y: completing the square
    in the Gaussian weight gives
        C(d) = e^{-d^2/(4 s^2)} int (t^2 - d^2/4) e^{-t^2/s^2} dt,
    which dilated Gauss-Hermite nodes integrate exactly (the non-Gaussian
    factor is a quadratic polynomial).  The outer d-integral of
    sinc^2(pi d) C(d) runs through the Simpson ladder.  No use is made of
    the 45-degree rotation or of any closed form, so this is an
    independent route.
    """
    budget = _Budget(spec.max_subdivisions)
    xg, wg = np.polynomial.hermite.hermgauss(96)
    t = sigma * xg
    poly_moment = float(np.sum(wg * t * t))  # int t^2 e^{-t^2/s^2} dt / sigma
    w_sum = float(np.sum(wg))

    def autocorr_times_kernel(d):
        # C(d) = e^{-d^2/(4 s^2)} * sigma * sum_i w_i (t_i^2 - d^2/4)
        d = np.asarray(d, dtype=float)
        quad_part = poly_moment - (d * d / 4.0) * w_sum
        c = sigma * np.exp(-np.minimum(d * d / (4.0 * sigma * sigma), 1e6)) * quad_part
        return sinc_sq(math.pi * d) * c

    cross = _integrate_simpson_ladder(autocorr_times_kernel, spec,
                                      max(1.0, math.sqrt(2.0) * sigma), budget)

    def u_sq(x):
        x = np.asarray(x, dtype=float)
        return x * x * np.exp(-np.minimum(x * x / (sigma * sigma), 1e6))

    diag = integrate_1d(u_sq, spec, scale=max(1.0, sigma))
    value = diag.value - cross.value
    err = diag.error_estimate + cross.error_estimate + _MACHINE_FLOOR * abs(value)
    return IntegralResult(value, err, diag.evaluations + cross.evaluations)


def var_exact_sine(sigma: float, route: str = "rotated",
                   spec: QuadratureSpec | None = None) -> IntegralResult:
    """Exact (quadrature) variance of u_sigma^* under the sine-kernel process.

    ``rotated`` decomposes the two-point term along the diagonal direction
    and reduces it to the one-dimensional integral J(sigma); ``direct2d``
    integrates u(x) u(y) K(x-y)^2 as an iterated two-dimensional integral.
    The two routes share no intermediate quantities.
    """
    sigma = float(sigma)
    if not (sigma > 0.0 and math.isfinite(sigma)):
        raise ValueError(f"sigma must be a positive finite real, got {sigma}")
    if route not in _VAR_ROUTES:
        raise ValueError(f"route must be one of {_VAR_ROUTES}, got {route!r}")
    spec = spec or DEFAULT_SPEC
    if route == "rotated":
        return _var_rotated(sigma, spec)
    return _var_direct2d(sigma, spec)


def var_exact_sine_cross_checked(sigma: float,
                                 spec: QuadratureSpec | None = None) -> IntegralResult:
    """Both variance routes, raising :class:`RouteDisagreement` on mismatch.

    The mismatch threshold is 10 times the summed error estimates.  Returns
    the rotated-route value with the combined error estimate.
    """
    spec = spec or DEFAULT_SPEC
    rot = var_exact_sine(sigma, "rotated", spec)
    d2d = var_exact_sine(sigma, "direct2d", spec)
    gap = abs(rot.value - d2d.value)
    allowed = 10.0 * (rot.error_estimate + d2d.error_estimate)
    if gap > allowed:
        raise RouteDisagreement(
            f"sigma={sigma}: rotated={rot.value!r} vs direct2d={d2d.value!r} "
            f"(gap {gap:.3g} > {allowed:.3g})")
    return IntegralResult(rot.value, rot.error_estimate + gap,
                          rot.evaluations + d2d.evaluations)


def number_variance_exact(R: float, spec: QuadratureSpec | None = None) -> IntegralResult:
    """Count variance of the sine-kernel process on [-R, R].

    2R minus the double integral of K(x-y)^2 over the square, computed by a
    two-dimensional composite Simpson grid doubled until two consecutive
    agreements.  Sub-linear growth in R is the hyperuniformity signature.
    """
    R = float(R)
    if not (R > 0.0 and math.isfinite(R)):
        raise ValueError(f"R must be a positive finite real, got {R}")
    spec = spec or DEFAULT_SPEC_2D
    budget = _Budget(spec.max_subdivisions)

    def grid_value(m: int) -> float:
        budget.spend_pass()
        x = np.linspace(-R, R, m)
        h = 2.0 * R / (m - 1)
        w = np.ones(m)
        w[1:-1:2] = 4.0
        w[2:-2:2] = 2.0
        w *= h / 3.0
        total = 0.0
        chunk = max(1, (1 << 22) // m)
        for lo in range(0, m, chunk):
            rows = x[lo:lo + chunk]
            ksq = sinc_sq(math.pi * (rows[:, None] - x[None, :]))
            budget.evaluations += ksq.size
            total += float(w[lo:lo + chunk] @ ksq @ w)
        return total

    m = 257
    vals = []
    diff = math.inf
    while m <= (1 << 15) + 1:
        vals.append(grid_value(m))
        if len(vals) >= 3:
            diff = abs(vals[-1] - vals[-2])
            tol = max(spec.abs_tol, spec.rel_tol * abs(2.0 * R - vals[-1]))
            if diff <= tol and abs(vals[-2] - vals[-3]) <= 16.0 * tol:
                return IntegralResult(2.0 * R - vals[-1], diff, budget.evaluations)
        m = 2 * (m - 1) + 1
    raise ToleranceNotMet(f"2D grid for R={R} did not converge (last diff {diff:.3g})")
