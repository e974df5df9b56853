"""Finite truncation of Dyson Brownian motion with collision-aware stepping.

The drift on particle i is (beta/2) sum_{j != i} 1/(x_i - x_j).  Euler
steps can cross particles even though the continuous beta=2 dynamics never
does, so two schemes keep states strictly ordered:

``euler_maruyama_capped``
    caps each per-step displacement at just under half the smaller adjacent
    gap (two neighbours can then close at most their gap, strictly), and
    counts every cap activation;
``adaptive_halving``
    retries any order-violating step as two half steps with fresh noise of
    the correct variance, recursively, up to 40 halvings.

The integrator accumulates displacements from the initial state and forms
absolute positions only when recording: pairwise differences, and with
them every drift, cap and ordering decision, are then exactly invariant
under translations of the initial state.

Noise: one Gaussian stream per (replica, particle), derived from the seed
by a splitmix chain, so paths are reproducible one at a time or in
vectorized batches.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .pointproc import EstimateWithCI, variance_estimate
from .testfn import TestFunction, eval_u
from .util import derive_seed

_SCHEMES = ("euler_maruyama_capped", "adaptive_halving")

# strictly below 1/2 so simultaneous opposite caps cannot make neighbours touch
_CAP_FRACTION = 0.5 * (1.0 - 1e-9)

_MAX_HALVINGS = 40


class CoincidentParticles(ValueError):
    """Two particle coordinates coincide; the drift is singular there."""


class StepFloorReached(RuntimeError):
    """Forty halvings could not produce an order-preserving step."""

    def __init__(self, time: float, state: np.ndarray):
        self.time = time
        self.state = state
        super().__init__(f"step floor reached at t={time:.6g}")


def unit_spacing_initial(N: int) -> np.ndarray:
    """Centered unit-spaced start x_i = i - (N+1)/2, i = 1..N (intensity 1)."""
    return np.arange(1, N + 1, dtype=float) - (N + 1) / 2.0


@dataclass(frozen=True)
class DysonConfig:
    """Simulation parameters; ``initial`` defaults to the unit-spaced start.

    ``dt`` defaults to 1e-3 times the squared minimum initial gap, which
    keeps typical drift displacements small against the gaps.
    """

    N: int
    T: float = 1.0
    beta: float = 2.0
    dt: float | None = None
    scheme: str = "euler_maruyama_capped"
    initial: tuple = ()
    seed: int = 0

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be >= 1")
        if not (self.T > 0.0 and math.isfinite(self.T)):
            raise ValueError("T must be a positive finite real")
        if not (self.beta > 0.0 and math.isfinite(self.beta)):
            raise ValueError("beta must be positive")
        if self.scheme not in _SCHEMES:
            raise ValueError(f"scheme must be one of {_SCHEMES}, got {self.scheme!r}")
        init = np.asarray(self.initial if len(self.initial) else unit_spacing_initial(self.N),
                          dtype=float)
        if init.size != self.N:
            raise ValueError(f"initial must have length N={self.N}")
        if self.N > 1 and not np.all(np.diff(init) > 0.0):
            raise ValueError("initial must be strictly increasing")
        object.__setattr__(self, "initial", tuple(init))
        if self.dt is None:
            min_gap = float(np.min(np.diff(init))) if self.N > 1 else 1.0
            object.__setattr__(self, "dt", 1e-3 * min_gap * min_gap)
        if not (0.0 < self.dt < self.T):
            raise ValueError(f"need 0 < dt < T, got dt={self.dt}, T={self.T}")

    def initial_array(self) -> np.ndarray:
        return np.asarray(self.initial, dtype=float)


@dataclass(frozen=True)
class DysonPath:
    """Recorded trajectory: states are strictly increasing at every time.

    ``step_halvings`` counts interventions: halving recursions under
    ``adaptive_halving``, cap activations under ``euler_maruyama_capped``.
    ``displacements`` is states minus the initial state, accumulated in the
    integrator's own arithmetic (bitwise translation-invariant).
    """

    times: np.ndarray
    states: np.ndarray
    min_gap_seen: float
    step_halvings: int
    displacements: np.ndarray


def drift(state: Sequence[float], beta: float) -> np.ndarray:
    """(beta/2) sum_{j != i} 1/(x_i - x_j) for each i; coordinates must be distinct."""
    x = np.asarray(state, dtype=float)
    if x.ndim != 1:
        raise ValueError("state must be one-dimensional")
    d = x[:, None] - x[None, :]
    ii = np.arange(x.size)
    d[ii, ii] = 1.0
    if np.any(d == 0.0):
        raise CoincidentParticles("two coordinates coincide")
    inv = 1.0 / d
    inv[ii, ii] = 0.0
    return beta / 2.0 * inv.sum(axis=1)


def _drift_from_disp(init: np.ndarray, disp: np.ndarray, beta: float) -> np.ndarray:
    """Drift for positions init + disp, built from translation-exact differences."""
    d = (init[:, None] - init[None, :]) + (disp[:, None] - disp[None, :])
    ii = np.arange(init.size)
    d[ii, ii] = 1.0
    inv = 1.0 / d
    inv[ii, ii] = 0.0
    return beta / 2.0 * inv.sum(axis=1)


class ParticleStreams:
    """One Gaussian stream per particle for one replica."""

    def __init__(self, seed: int, replica: int, n_particles: int):
        self._gens = [
            np.random.Generator(np.random.PCG64(derive_seed(seed, replica, p)))
            for p in range(n_particles)
        ]

    def draw(self) -> np.ndarray:
        return np.array([g.standard_normal() for g in self._gens])


class MirroredStreams:
    """Particle-reversed, sign-flipped view of another noise source."""

    def __init__(self, inner):
        self._inner = inner

    def draw(self) -> np.ndarray:
        return -self._inner.draw()[::-1]


def _step_times(T: float, dt: float) -> np.ndarray:
    n_steps = max(1, math.ceil(T / dt - 1e-12))
    times = np.minimum(dt * np.arange(n_steps + 1), T)
    times[-1] = T
    return times


def simulate(cfg: DysonConfig, replica_index: int = 0, noise=None) -> DysonPath:
    """Integrate one path to the horizon; ordering holds at every recorded time."""
    init = cfg.initial_array()
    if noise is None:
        noise = ParticleStreams(cfg.seed, replica_index, cfg.N)
    times = _step_times(cfg.T, cfg.dt)
    disp = np.zeros(cfg.N)
    states = np.empty((times.size, cfg.N))
    disps = np.empty((times.size, cfg.N))
    states[0] = init
    disps[0] = disp
    min_gap = math.inf if cfg.N == 1 else float(np.min(np.diff(init)))
    interventions = 0

    for k in range(times.size - 1):
        h = float(times[k + 1] - times[k])
        if cfg.scheme == "euler_maruyama_capped":
            disp, caps = _capped_step(init, disp, h, cfg.beta, noise.draw())
            interventions += caps
        else:
            disp, halvings = _halving_step(init, disp, h, cfg.beta, noise,
                                           float(times[k]), 0)
            interventions += halvings
        states[k + 1] = init + disp
        disps[k + 1] = disp
        if cfg.N > 1:
            gaps = _gaps(init, disp)
            if np.any(gaps <= 0.0):
                raise CoincidentParticles(f"ordering lost at t={times[k + 1]:.6g}")
            min_gap = min(min_gap, float(gaps.min()))

    return DysonPath(times=times, states=states, min_gap_seen=min_gap,
                     step_halvings=interventions, displacements=disps)


def _gaps(init: np.ndarray, disp: np.ndarray) -> np.ndarray:
    return np.diff(init) + np.diff(disp)


def _capped_step(init, disp, h, beta, xi):
    step = _drift_from_disp(init, disp, beta) * h + math.sqrt(h) * xi
    if init.size == 1:
        return disp + step, 0
    gaps = _gaps(init, disp)
    cap = _CAP_FRACTION * np.minimum(
        np.concatenate([[np.inf], gaps]), np.concatenate([gaps, [np.inf]]))
    capped = np.clip(step, -cap, cap)
    n_caps = int(np.count_nonzero(capped != step))
    return disp + capped, n_caps


def _halving_step(init, disp, h, beta, noise, t, depth):
    proposal = disp + _drift_from_disp(init, disp, beta) * h + math.sqrt(h) * noise.draw()
    if init.size == 1 or np.all(_gaps(init, proposal) > 0.0):
        return proposal, 0
    if depth >= _MAX_HALVINGS:
        raise StepFloorReached(t, init + disp)
    d1, h1 = _halving_step(init, disp, h / 2.0, beta, noise, t, depth + 1)
    d2, h2 = _halving_step(init, d1, h / 2.0, beta, noise, t + h / 2.0, depth + 1)
    return d2, 1 + h1 + h2


# ---------------------------------------------------------------------------
# Batched runner (capped scheme): bit-identical to per-path simulate.


def _noise_table(seed: int, replicas: range, n_particles: int, n_steps: int) -> np.ndarray:
    """Pre-drawn noise, shape (len(replicas), n_steps, n_particles)."""
    out = np.empty((len(replicas), n_steps, n_particles))
    for a, r in enumerate(replicas):
        for p in range(n_particles):
            g = np.random.Generator(np.random.PCG64(derive_seed(seed, r, p)))
            out[a, :, p] = g.standard_normal(n_steps)
    return out


def _final_states_capped(cfg: DysonConfig, replicas: int,
                         chunk: int = 512) -> np.ndarray:
    """Final states of many replicas under the capped scheme, shape (replicas, N)."""
    init = cfg.initial_array()
    times = _step_times(cfg.T, cfg.dt)
    n_steps = times.size - 1
    ii = np.arange(cfg.N)
    out = np.empty((replicas, cfg.N))
    for lo in range(0, replicas, chunk):
        rng_block = range(lo, min(lo + chunk, replicas))
        xi = _noise_table(cfg.seed, rng_block, cfg.N, n_steps)
        disp = np.zeros((len(rng_block), cfg.N))
        for k in range(n_steps):
            h = float(times[k + 1] - times[k])
            d = (init[None, :, None] - init[None, None, :]) + \
                (disp[:, :, None] - disp[:, None, :])
            d[:, ii, ii] = 1.0
            inv = 1.0 / d
            inv[:, ii, ii] = 0.0
            step = cfg.beta / 2.0 * inv.sum(axis=2) * h + math.sqrt(h) * xi[:, k, :]
            if cfg.N > 1:
                gaps = np.diff(init)[None, :] + np.diff(disp, axis=1)
                big = np.full((len(rng_block), 1), np.inf)
                cap = _CAP_FRACTION * np.minimum(
                    np.concatenate([big, gaps], axis=1),
                    np.concatenate([gaps, big], axis=1))
                step = np.clip(step, -cap, cap)
            disp = disp + step
        out[lo:lo + len(rng_block)] = init[None, :] + disp
    return out


def com_variance_check(cfg: DysonConfig, replicas: int) -> EstimateWithCI:
    """Sample variance of the center of mass at the horizon; expected T/N.

    The pairwise drift cancels in the center of mass, which is therefore an
    average of N independent Brownian motions.
    """
    if replicas < 100:
        raise ValueError("need at least 100 replicas")
    if cfg.scheme == "euler_maruyama_capped":
        finals = _final_states_capped(cfg, replicas)
        coms = finals.mean(axis=1)
    else:
        coms_list = []
        failures = 0
        last_exc = None
        for r in range(replicas):
            try:
                coms_list.append(simulate(cfg, replica_index=r).states[-1].mean())
            except StepFloorReached as exc:
                failures += 1
                last_exc = exc
        if failures > 0.01 * replicas:
            raise last_exc
        coms = np.array(coms_list)
    return variance_estimate(coms)


def relaxation_probe(cfg: DysonConfig, f: TestFunction, replicas: int,
                     lag_grid: Sequence[float],
                     burn_in: float = 2.0) -> list[tuple[float, float, float]]:
    """Autocorrelation of the linear statistic along the path at given lags.

    Starts every replica from the unit-spaced configuration, discards
    ``burn_in`` time units, then averages the normalized empirical
    autocorrelation of t -> u_sigma^*(X_t) over replicas.  Returns
    (lag, autocorrelation, standard error) triples.
    """
    lags = [float(l) for l in lag_grid]
    if not lags or any(l < 0.0 or l > cfg.T for l in lags):
        raise ValueError("lags must lie within [0, T]")
    if replicas < 2:
        raise ValueError("need at least 2 replicas")
    init = unit_spacing_initial(cfg.N)
    times = _step_times(burn_in + cfg.T, cfg.dt)
    n_steps = times.size - 1
    ii = np.arange(cfg.N)
    keep = times >= burn_in - 1e-12
    kept_times = times[keep] - burn_in
    series = np.empty((replicas, int(keep.sum())))
    chunk = max(1, int(2e7 / max(1, n_steps * cfg.N)))
    chunk = min(chunk, 256)
    for lo in range(0, replicas, chunk):
        blk = range(lo, min(lo + chunk, replicas))
        xi = _noise_table(cfg.seed, blk, cfg.N, n_steps)
        disp = np.zeros((len(blk), cfg.N))
        col = 0
        if keep[0]:
            series[lo:lo + len(blk), col] = eval_u(f, init[None, :] + disp).sum(axis=1)
            col += 1
        for k in range(n_steps):
            h = float(times[k + 1] - times[k])
            d = (init[None, :, None] - init[None, None, :]) + \
                (disp[:, :, None] - disp[:, None, :])
            d[:, ii, ii] = 1.0
            inv = 1.0 / d
            inv[:, ii, ii] = 0.0
            step = cfg.beta / 2.0 * inv.sum(axis=2) * h + math.sqrt(h) * xi[:, k, :]
            if cfg.N > 1:
                gaps = np.diff(init)[None, :] + np.diff(disp, axis=1)
                big = np.full((len(blk), 1), np.inf)
                cap = _CAP_FRACTION * np.minimum(
                    np.concatenate([big, gaps], axis=1),
                    np.concatenate([gaps, big], axis=1))
                step = np.clip(step, -cap, cap)
            disp = disp + step
            if keep[k + 1]:
                series[lo:lo + len(blk), col] = eval_u(f, init[None, :] + disp).sum(axis=1)
                col += 1

    out = []
    centered = series - series.mean(axis=1, keepdims=True)
    denom = np.sum(centered ** 2, axis=1)
    for lag in lags:
        shift = int(round(lag / (kept_times[1] - kept_times[0]))) if kept_times.size > 1 else 0
        shift = min(shift, centered.shape[1] - 1)
        num = np.sum(centered[:, :centered.shape[1] - shift] * centered[:, shift:], axis=1)
        rho = num / np.maximum(denom, 1e-300)
        est = float(np.mean(rho))
        se = float(np.std(rho, ddof=1) / math.sqrt(replicas))
        out.append((lag, est, se))
    return out
