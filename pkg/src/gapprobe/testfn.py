"""Odd Gaussian-tapered test functions, finite point configurations, linear statistics.

The test-function family is u_sigma(x) = x * exp(-x^2 / (2 sigma^2)), the
one-parameter family whose linear statistics drive every variance and
energy computation in this package.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

# exp(-t) underflows to 0 below t ~ 745; clamping t avoids inf * 0 = nan
# in derivative expressions while leaving every representable value intact.
_EXP_CLAMP = 1e6


def _gauss_factor(x: np.ndarray, sigma: float) -> np.ndarray:
    t = np.minimum(x * x / (2.0 * sigma * sigma), _EXP_CLAMP)
    return np.exp(-t)


@dataclass(frozen=True)
class TestFunction:
    """u_sigma(x) = x exp(-x^2 / (2 sigma^2)); odd, peaked at x = sigma."""

    sigma: float

    def __post_init__(self):
        if not (self.sigma > 0.0 and np.isfinite(self.sigma)):
            raise ValueError(f"sigma must be a positive finite real, got {self.sigma}")

    def value(self, x):
        return eval_u(self, x)

    def deriv(self, x):
        return eval_du(self, x)


@dataclass(frozen=True)
class Configuration:
    """A finite point set (with multiplicity) inside the window [-L, L]."""

    points: np.ndarray
    window: float

    def __post_init__(self):
        pts = np.atleast_1d(np.asarray(self.points, dtype=float))
        if pts.ndim != 1:
            raise ValueError("points must be one-dimensional")
        if not (self.window > 0.0 and np.isfinite(self.window)):
            raise ValueError(f"window half-width must be positive, got {self.window}")
        if pts.size and not np.all(np.abs(pts) <= self.window):
            raise ValueError("all points must lie in [-window, window]")
        if pts.size and not np.all(np.isfinite(pts)):
            raise ValueError("points must be finite")
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return int(self.points.size)


def eval_u(f: TestFunction, x):
    """u_sigma(x) = x exp(-x^2 / (2 sigma^2)). Total on the reals."""
    x = np.asarray(x, dtype=float)
    out = x * _gauss_factor(x, f.sigma)
    return out if out.ndim else float(out)


def eval_du(f: TestFunction, x):
    """Derivative exp(-x^2/(2 sigma^2)) (1 - x^2/sigma^2)."""
    x = np.asarray(x, dtype=float)
    ratio = np.minimum(x * x / (f.sigma * f.sigma), 2.0 * _EXP_CLAMP)
    out = _gauss_factor(x, f.sigma) * (1.0 - ratio)
    return out if out.ndim else float(out)


def square_field_1d(f: TestFunction, g: TestFunction, x):
    """Square field on the line: product of the two derivatives at x."""
    x = np.asarray(x, dtype=float)
    out = eval_du(f, x) * eval_du(g, x)
    return out if out.ndim else float(out)


def linear_statistic(f: TestFunction, c: Configuration) -> float:
    """Sum of u_sigma over the configuration points; 0 for the empty configuration."""
    if len(c) == 0:
        return 0.0
    return float(np.sum(eval_u(f, c.points)))


@dataclass(frozen=True)
class GaussianBump:
    """exp(-(x-center)^2 / (2 width^2)); smooth base function with exact derivative."""

    center: float = 0.0
    width: float = 1.0

    def __post_init__(self):
        if not (self.width > 0.0 and np.isfinite(self.width)):
            raise ValueError(f"width must be positive, got {self.width}")

    def value(self, x):
        x = np.asarray(x, dtype=float)
        return _gauss_factor(x - self.center, self.width)

    def deriv(self, x):
        x = np.asarray(x, dtype=float)
        d = x - self.center
        return -d / (self.width * self.width) * _gauss_factor(d, self.width)
