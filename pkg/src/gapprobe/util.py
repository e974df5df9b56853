"""Shared helpers: seed derivation, sinc series, float formatting, ordered parallel map."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Sequence

import numpy as np

_MASK64 = 0xFFFFFFFFFFFFFFFF


def splitmix64(x: int) -> int:
    """One splitmix64 output for the 64-bit input state."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def derive_seed(seed: int, *indices: int) -> int:
    """Derive an independent 64-bit stream seed from a base seed and indices.

    seed XOR a splitmix64 hash chain over the indices; equal inputs give
    equal outputs, so replica streams are reproducible and order-free.
    """
    h = 0
    for ix in indices:
        h = splitmix64(h ^ (int(ix) & _MASK64))
    return (int(seed) ^ h) & _MASK64


def rng_from(seed: int, *indices: int) -> np.random.Generator:
    """PCG64 generator seeded by :func:`derive_seed`."""
    return np.random.Generator(np.random.PCG64(derive_seed(seed, *indices)))


def sinc_sq(z: np.ndarray | float) -> np.ndarray:
    """(sin z / z)^2, patched with its Taylor series for |z| < 1e-4."""
    z = np.asarray(z, dtype=float)
    small = np.abs(z) < 1e-4
    zs = np.where(small, 1.0, z)
    series = 1.0 - z * z / 3.0 + 2.0 * z ** 4 / 45.0
    return np.where(small, series, (np.sin(zs) / zs) ** 2)


def sinc(z: np.ndarray | float) -> np.ndarray:
    """sin z / z, patched with its Taylor series for |z| < 1e-4."""
    z = np.asarray(z, dtype=float)
    small = np.abs(z) < 1e-4
    zs = np.where(small, 1.0, z)
    series = 1.0 - z * z / 6.0 + z ** 4 / 120.0
    return np.where(small, series, np.sin(zs) / zs)


def fmt17(x: float) -> str:
    """Format a float with 17 significant digits (lossless round trip)."""
    return format(float(x), ".17g")


def parallel_map(fn: Callable, items: Sequence, threads: int = 1) -> list:
    """Map preserving input order; results are independent of thread count."""
    if threads <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))
