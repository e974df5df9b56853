"""Sine-kernel determinantal sampling, Poisson baseline, Monte Carlo estimators.

Sampling happens at quadrature nodes on a window [-L, L]: the kernel is
discretized by the Nystrom method on Gauss-Legendre nodes, eigenfunctions
are Bernoulli-selected with probability equal to their eigenvalue, and the
resulting projection process is sampled sequentially with Gram-Schmidt
downdating.  All randomness flows through per-replica streams derived from
one base seed, so batches are reproducible and order-independent.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import IO, Sequence

import numpy as np

from .testfn import Configuration, TestFunction, linear_statistic
from .util import derive_seed, fmt17, parallel_map, sinc

_PROCESSES = ("sine2", "poisson")


class InsufficientResolution(ValueError):
    """Node count too small for the requested window."""


class EigenFailure(RuntimeError):
    """Symmetric eigendecomposition did not converge."""


class NumericalDegeneracy(RuntimeError):
    """A conditional sampling density went negative beyond round-off."""


class WindowTooSmall(ValueError):
    """Window half-width below the truncation requirement for the statistic."""


class DegenerateFit(ValueError):
    """Growth-exponent fit with no spread in the abscissae."""


def sine_K(x, y):
    """Sine kernel sin(pi (x-y)) / (pi (x-y)), 1 on the diagonal."""
    d = np.asarray(x, dtype=float) - np.asarray(y, dtype=float)
    out = sinc(math.pi * d)
    return out if out.ndim else float(out)


def rho2(x, y):
    """Two-point correlation 1 - K(x,y)^2; vanishes at coincidence (repulsion)."""
    k = np.asarray(sine_K(x, y))
    out = 1.0 - k * k
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class DiscretizedKernel:
    """Nystrom eigensystem of the sine kernel on [-L, L].

    ``eigenfunction_values`` columns are orthonormal in the weighted inner
    product sum_i w_i phi_a(x_i) phi_b(x_i) = delta_ab; eigenvalues are
    clipped to [0, 1] and sorted in descending order.
    """

    half_width: float
    nodes: np.ndarray
    weights: np.ndarray
    eigenvalues: np.ndarray
    eigenfunction_values: np.ndarray
    clip_magnitude: float

    @property
    def node_count(self) -> int:
        return int(self.nodes.size)

    @property
    def trace(self) -> float:
        return float(np.sum(self.eigenvalues))

    def sampling_basis(self) -> np.ndarray:
        """Euclidean-orthonormal columns sqrt(w_i) phi_a(x_i) for the sampler."""
        return self.eigenfunction_values * np.sqrt(self.weights)[:, None]

    def reconstruct_kernel(self) -> np.ndarray:
        """Kernel values at node pairs implied by the clipped eigensystem."""
        phi = self.eigenfunction_values
        return (phi * self.eigenvalues) @ phi.T


def nystrom_discretize(L: float, n: int) -> DiscretizedKernel:
    """Discretize the sine kernel on [-L, L] with n Gauss-Legendre nodes.

    Requires n >= ceil(8 L) so the unit-wavelength kernel is resolved.
    The symmetrically weighted matrix W^{1/2} K W^{1/2} is diagonalized;
    eigenvalue overshoot outside [0, 1] (discretization error) is clipped
    and recorded in ``clip_magnitude``.
    """
    L = float(L)
    n = int(n)
    if not (L > 0.0 and math.isfinite(L)):
        raise ValueError(f"window half-width must be positive, got {L}")
    if n < math.ceil(8.0 * L):
        raise InsufficientResolution(
            f"need at least ceil(8 L) = {math.ceil(8 * L)} nodes for L = {L}, got {n}")
    xg, wg = np.polynomial.legendre.leggauss(n)
    nodes = L * xg
    weights = L * wg
    sw = np.sqrt(weights)
    A = sine_K(nodes[:, None], nodes[None, :]) * np.outer(sw, sw)
    try:
        evals, evecs = np.linalg.eigh(A)
    except np.linalg.LinAlgError as exc:
        raise EigenFailure(f"eigendecomposition failed for L={L}, n={n}: {exc}") from exc
    order = np.argsort(evals)[::-1]
    evals = evals[order]
    evecs = evecs[:, order]
    clipped = np.clip(evals, 0.0, 1.0)
    clip_magnitude = float(np.max(np.abs(evals - clipped))) if n else 0.0
    phi = evecs / sw[:, None]
    return DiscretizedKernel(
        half_width=L,
        nodes=nodes,
        weights=weights,
        eigenvalues=clipped,
        eigenfunction_values=phi,
        clip_magnitude=clip_magnitude,
    )


_DEGENERACY_FLOOR = -1e-9


def sample_dpp(kernel: DiscretizedKernel, rng_seed: int) -> Configuration:
    """Draw one sine-process sample on the kernel's window.

    Spectral sampling: each eigenfunction enters independently with
    probability equal to its eigenvalue (in fixed eigenvalue-descending
    order), then the selected projection process is sampled node by node,
    downdating the basis with one Gram-Schmidt step and re-orthonormalizing.
    Sampled positions are the quadrature nodes.
    """
    rng = np.random.Generator(np.random.PCG64(int(rng_seed) & 0xFFFFFFFFFFFFFFFF))
    lam = kernel.eigenvalues
    selected = rng.random(lam.size) < lam
    V = kernel.sampling_basis()[:, selected]
    m = V.shape[1]
    picked = np.empty(m, dtype=np.intp)
    for step in range(m):
        p = np.einsum("ij,ij->i", V, V)
        pmin = float(p.min()) if p.size else 0.0
        if pmin < _DEGENERACY_FLOOR:
            raise NumericalDegeneracy(
                f"conditional density hit {pmin:.3e} at step {step}")
        p = np.maximum(p, 0.0)
        total = p.sum()
        if total <= 0.0:
            raise NumericalDegeneracy(f"conditional density vanished at step {step}")
        cdf = np.cumsum(p / total)
        i = int(np.searchsorted(cdf, rng.random()))
        i = min(i, p.size - 1)
        picked[step] = i
        if step == m - 1:
            break
        j = int(np.argmax(np.abs(V[i, :])))
        V = V - np.outer(V[:, j] / V[i, j], V[i, :])
        V = np.delete(V, j, axis=1)
        V, _ = np.linalg.qr(V)
    pts = np.sort(kernel.nodes[picked])
    return Configuration(points=pts, window=kernel.half_width)


def sample_poisson(L: float, rng_seed: int) -> Configuration:
    """Unit-intensity Poisson sample on [-L, L]: Poisson(2L) count, uniform positions."""
    L = float(L)
    if not (L > 0.0 and math.isfinite(L)):
        raise ValueError(f"window half-width must be positive, got {L}")
    rng = np.random.Generator(np.random.PCG64(int(rng_seed) & 0xFFFFFFFFFFFFFFFF))
    count = int(rng.poisson(2.0 * L))
    pts = np.sort(rng.uniform(-L, L, size=count))
    return Configuration(points=pts, window=L)


@dataclass(frozen=True)
class SampleBatch:
    """Replicated samples of one process on one window, fully seeded."""

    configurations: tuple
    seed: int
    window: float
    process: str
    node_count: int | None = None

    def __len__(self) -> int:
        return len(self.configurations)

    def counts(self) -> np.ndarray:
        return np.array([len(c) for c in self.configurations], dtype=float)


def sample_batch(process: str, L: float, replicas: int, seed: int,
                 n: int | None = None, threads: int = 1,
                 kernel: DiscretizedKernel | None = None) -> SampleBatch:
    """Draw ``replicas`` independent configurations with derived per-replica streams.

    For ``sine2`` either pass a prebuilt kernel or the node count ``n``.
    Replica r uses the stream seed ``derive_seed(seed, r)``; results do not
    depend on ``threads``.
    """
    if process not in _PROCESSES:
        raise ValueError(f"process must be one of {_PROCESSES}, got {process!r}")
    if replicas < 1:
        raise ValueError("replicas must be >= 1")
    if process == "sine2":
        if kernel is None:
            if n is None:
                raise ValueError("sine2 sampling needs a node count n or a kernel")
            kernel = nystrom_discretize(L, n)
        draw = lambda r: sample_dpp(kernel, derive_seed(seed, r))
        node_count = kernel.node_count
    else:
        draw = lambda r: sample_poisson(L, derive_seed(seed, r))
        node_count = None
    configs = parallel_map(draw, range(int(replicas)), threads=threads)
    return SampleBatch(configurations=tuple(configs), seed=int(seed), window=float(L),
                       process=process, node_count=node_count)


@dataclass(frozen=True)
class EstimateWithCI:
    """A Monte Carlo estimate with its per-replica spread.

    ``mean`` and ``variance`` are the sample mean and unbiased sample
    variance of the per-replica statistic.  ``std_error`` belongs to
    whichever of the two is the headline estimate: sqrt(variance/replicas)
    for mean estimators, a jackknife standard error for variance
    estimators.
    """

    mean: float
    variance: float
    std_error: float
    replicas: int


def mean_estimate(values: Sequence[float]) -> EstimateWithCI:
    """Estimate of the mean of the per-replica statistic."""
    y = np.asarray(values, dtype=float)
    if y.size < 2:
        raise ValueError("need at least 2 replicas")
    var = float(np.var(y, ddof=1))
    return EstimateWithCI(mean=float(np.mean(y)), variance=var,
                          std_error=math.sqrt(var / y.size), replicas=int(y.size))


def variance_estimate(values: Sequence[float]) -> EstimateWithCI:
    """Estimate of the variance of the per-replica statistic, jackknife std error."""
    y = np.asarray(values, dtype=float)
    nrep = y.size
    if nrep < 3:
        raise ValueError("need at least 3 replicas for a jackknife variance estimate")
    s1 = float(np.sum(y))
    mean = s1 / nrep
    centered = y - mean
    ss = float(np.sum(centered ** 2))
    var = ss / (nrep - 1)
    # leave-one-out variances in closed form
    loo_ss = ss - centered ** 2 * nrep / (nrep - 1)
    loo_var = loo_ss / (nrep - 2)
    se = math.sqrt((nrep - 1) / nrep * float(np.sum((loo_var - loo_var.mean()) ** 2)))
    return EstimateWithCI(mean=mean, variance=var, std_error=se, replicas=int(nrep))


def empirical_variance(f: TestFunction, batch: SampleBatch) -> EstimateWithCI:
    """Sample variance of the linear statistic of ``f`` across the batch.

    Requires window >= 12 sigma so that the mass of u_sigma outside the
    window is negligible against the Monte Carlo error.
    """
    if len(batch) == 0:
        raise ValueError("batch is empty")
    if batch.window < 12.0 * f.sigma:
        raise WindowTooSmall(
            f"window {batch.window} < 12 sigma = {12.0 * f.sigma}; "
            "truncation bias would not be negligible")
    stats = [linear_statistic(f, c) for c in batch.configurations]
    return variance_estimate(stats)


@dataclass(frozen=True)
class GrowthFit:
    slope: float
    intercept: float
    r_squared: float


def growth_exponent(sigmas: Sequence[float], variances: Sequence[float]) -> GrowthFit:
    """Least-squares slope of log(variance) against log(sigma)."""
    s = np.asarray(sigmas, dtype=float)
    v = np.asarray(variances, dtype=float)
    if s.size < 3:
        raise ValueError("need at least 3 points")
    if s.size != v.size:
        raise ValueError("sigmas and variances must have equal length")
    if np.any(s <= 0.0) or np.any(v <= 0.0):
        raise ValueError("sigmas and variances must be positive")
    ls = np.log(s)
    lv = np.log(v)
    if np.ptp(ls) == 0.0:
        raise DegenerateFit("all sigmas equal")
    slope, intercept = np.polyfit(ls, lv, 1)
    fit = slope * ls + intercept
    ss_res = float(np.sum((lv - fit) ** 2))
    ss_tot = float(np.sum((lv - lv.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return GrowthFit(slope=float(slope), intercept=float(intercept), r_squared=r2)


# ---------------------------------------------------------------------------
# JSON-lines serialization: one header object, then one object per replica.


def write_batch_jsonl(batch: SampleBatch, fh: IO[str]) -> None:
    header = {
        "process": batch.process,
        "L": float(batch.window),
        "n": batch.node_count,
        "seed": int(batch.seed),
    }
    fh.write(json.dumps(header, sort_keys=True) + "\n")
    for i, cfg in enumerate(batch.configurations):
        pts = "[" + ", ".join(fmt17(p) for p in cfg.points) + "]"
        fh.write('{"seed_index": %d, "points": %s}\n' % (i, pts))


def read_batch_jsonl(fh: IO[str]) -> SampleBatch:
    header = json.loads(fh.readline())
    configs = []
    for line in fh:
        if not line.strip():
            continue
        row = json.loads(line)
        configs.append(Configuration(points=np.asarray(row["points"], dtype=float),
                                     window=float(header["L"])))
    return SampleBatch(configurations=tuple(configs), seed=int(header["seed"]),
                       window=float(header["L"]), process=header["process"],
                       node_count=header["n"])
