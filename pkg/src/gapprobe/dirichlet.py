"""Cylinder functions, the configuration-space square field, and the Rayleigh sweep.

A cylinder function is Phi(u_1^*, ..., u_k^*): finitely many linear
statistics composed with a smooth outer map.  Its square field at a
configuration is the Gram quadratic form
sum_{i,j} d_i Phi d_j Phi sum_{x} u_i'(x) u_j'(x), evaluated here as the
squared norm of a single vector so nonnegativity is automatic.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Callable, IO, Sequence

import numpy as np

from . import closedform
from .pointproc import (
    EstimateWithCI,
    SampleBatch,
    WindowTooSmall,
    empirical_variance,
    mean_estimate,
)
from .quadrature import QuadratureSpec, var_exact_sine
from .testfn import Configuration, TestFunction
from .util import fmt17, parallel_map


@dataclass(frozen=True)
class CylinderFunction:
    """Phi applied to the linear statistics of ``bases``.

    Each base must expose ``value(x)`` and ``deriv(x)`` (vectorized);
    ``outer_value`` maps a length-k vector to a float and ``outer_grad``
    returns its gradient at that vector.
    """

    bases: tuple
    outer_value: Callable[[np.ndarray], float]
    outer_grad: Callable[[np.ndarray], np.ndarray]

    def __post_init__(self):
        if len(self.bases) < 1:
            raise ValueError("need at least one base function")

    def __add__(self, other: "CylinderFunction") -> "CylinderFunction":
        return _combine(self, other, 1.0)

    def __sub__(self, other: "CylinderFunction") -> "CylinderFunction":
        return _combine(self, other, -1.0)


def _combine(U: CylinderFunction, V: CylinderFunction, sign: float) -> CylinderFunction:
    ku = len(U.bases)

    def value(v: np.ndarray) -> float:
        return U.outer_value(v[:ku]) + sign * V.outer_value(v[ku:])

    def grad(v: np.ndarray) -> np.ndarray:
        return np.concatenate([U.outer_grad(v[:ku]), sign * V.outer_grad(v[ku:])])

    return CylinderFunction(bases=U.bases + V.bases, outer_value=value, outer_grad=grad)


def coordinate_cylinder(base) -> CylinderFunction:
    """The linear statistic of one base function as a cylinder function."""
    return CylinderFunction(
        bases=(base,),
        outer_value=lambda v: float(v[0]),
        outer_grad=lambda v: np.ones(1),
    )


def linear_statistics_vector(U: CylinderFunction, c: Configuration) -> np.ndarray:
    """The vector (u_1^*(c), ..., u_k^*(c))."""
    if len(c) == 0:
        return np.zeros(len(U.bases))
    return np.array([float(np.sum(b.value(c.points))) for b in U.bases])


def eval_cylinder(U: CylinderFunction, c: Configuration) -> float:
    """Phi evaluated at the linear statistics of the configuration."""
    return float(U.outer_value(linear_statistics_vector(U, c)))


def square_field_config(U: CylinderFunction, c: Configuration) -> float:
    """Square field of U at the configuration.

    With g the outer gradient at the statistics vector and B[i, x] = u_i'(x),
    the value is || B^T g ||^2, the Gram quadratic form of the chain rule.
    """
    if len(c) == 0:
        return 0.0
    v = linear_statistics_vector(U, c)
    g = np.asarray(U.outer_grad(v), dtype=float)
    B = np.stack([np.asarray(b.deriv(c.points), dtype=float) for b in U.bases])
    s = g @ B
    return float(np.dot(s, s))


def mc_dirichlet_energy(U: CylinderFunction, batch: SampleBatch) -> EstimateWithCI:
    """Monte Carlo mean of half the square field over the batch."""
    if len(batch) == 0:
        raise ValueError("batch is empty")
    vals = [0.5 * square_field_config(U, c) for c in batch.configurations]
    return mean_estimate(vals)


@dataclass(frozen=True)
class RayleighRow:
    """One width parameter of the sweep: variance and energy, bounds and estimates.

    ``ratio_ub`` = energy_ub / var_lb upper-bounds the Rayleigh quotient of
    u_sigma^*; any such quotient upper-bounds the spectral gap, and the
    sweep exhibits the family driving it to zero.
    """

    sigma: float
    var_lb: float
    var_exact: float
    energy_exact: float
    energy_ub: float
    ratio_ub: float
    ratio_exact: float
    var_mc: EstimateWithCI | None = None
    energy_mc: EstimateWithCI | None = None
    error: str | None = None


_SWEEP_MODES = ("analytic", "analytic_plus_mc")

SWEEP_CSV_HEADER = [
    "sigma", "var_lb", "var_exact", "var_mc", "var_mc_se",
    "energy_exact", "energy_ub", "energy_mc", "energy_mc_se",
    "ratio_ub", "ratio_exact",
]


def rayleigh_sweep(sigmas: Sequence[float], mode: str = "analytic",
                   mc_batch: SampleBatch | None = None,
                   spec: QuadratureSpec | None = None,
                   threads: int = 1) -> list[RayleighRow]:
    """Fill one RayleighRow per sigma; failed rows are marked, not fatal.

    ``analytic_plus_mc`` reuses one shared batch for every sigma (common
    random numbers), which requires the batch window to cover 12 times the
    largest sigma.
    """
    sig = [float(s) for s in sigmas]
    if not sig:
        raise ValueError("sigmas must be non-empty")
    if any(s <= 0.0 for s in sig):
        raise ValueError("sigmas must be positive")
    if sorted(sig) != sig:
        raise ValueError("sigmas must be increasing")
    if mode not in _SWEEP_MODES:
        raise ValueError(f"mode must be one of {_SWEEP_MODES}, got {mode!r}")
    if mode == "analytic_plus_mc":
        if mc_batch is None:
            raise ValueError("analytic_plus_mc mode needs a sample batch")
        if mc_batch.window < 12.0 * max(sig):
            raise WindowTooSmall(
                f"batch window {mc_batch.window} < 12 * max sigma = {12.0 * max(sig)}")

    def one_row(s: float) -> RayleighRow:
        try:
            var_lb = closedform.var_lower_bound(s)
            en_ex = closedform.energy_exact(s)
            en_ub = closedform.energy_upper_bound(s)
            var_ex = var_exact_sine(s, "rotated", spec).value
            var_mc = energy_mc = None
            if mode == "analytic_plus_mc":
                f = TestFunction(sigma=s)
                var_mc = empirical_variance(f, mc_batch)
                energy_mc = mc_dirichlet_energy(coordinate_cylinder(f), mc_batch)
            return RayleighRow(
                sigma=s, var_lb=var_lb, var_exact=var_ex,
                energy_exact=en_ex, energy_ub=en_ub,
                ratio_ub=en_ub / var_lb, ratio_exact=en_ex / var_ex,
                var_mc=var_mc, energy_mc=energy_mc)
        except Exception as exc:  # keep the sweep alive, mark the row
            return RayleighRow(sigma=s, var_lb=math.nan, var_exact=math.nan,
                               energy_exact=math.nan, energy_ub=math.nan,
                               ratio_ub=math.nan, ratio_exact=math.nan,
                               error=f"{type(exc).__name__}: {exc}")

    return parallel_map(one_row, sig, threads=threads)


def sweep_to_csv(rows: Sequence[RayleighRow], fh: IO[str]) -> None:
    """Write the sweep as CSV; missing optional fields are empty strings."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(SWEEP_CSV_HEADER)
    for r in rows:
        writer.writerow([
            fmt17(r.sigma), fmt17(r.var_lb), fmt17(r.var_exact),
            fmt17(r.var_mc.variance) if r.var_mc else "",
            fmt17(r.var_mc.std_error) if r.var_mc else "",
            fmt17(r.energy_exact), fmt17(r.energy_ub),
            fmt17(r.energy_mc.mean) if r.energy_mc else "",
            fmt17(r.energy_mc.std_error) if r.energy_mc else "",
            fmt17(r.ratio_ub), fmt17(r.ratio_exact),
        ])
