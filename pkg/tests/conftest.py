"""Shared fixtures; the expensive sample batches are session-scoped."""

import numpy as np
import pytest

from gapprobe.pointproc import DiscretizedKernel, nystrom_discretize, sample_batch

# one fixed seed per heavy artifact keeps the whole suite deterministic
SINE_BATCH_SEED = 20240817
POISSON_SEED = 31415926


@pytest.fixture(scope="session")
def kernel_L15() -> DiscretizedKernel:
    return nystrom_discretize(15.0, 512)


@pytest.fixture(scope="session")
def sine_batch_10k(kernel_L15):
    """10^4 sine-kernel samples on [-15, 15]; the big calibration batch."""
    return sample_batch("sine2", 15.0, 10_000, SINE_BATCH_SEED,
                        kernel=kernel_L15, threads=4)


@pytest.fixture(scope="session")
def sine_batch_small():
    """2000 sine-kernel samples on [-10, 10] with 256 nodes."""
    return sample_batch("sine2", 10.0, 2000, SINE_BATCH_SEED + 1, n=256, threads=4)


@pytest.fixture(scope="session")
def poisson_batch_12():
    """10^4 Poisson samples on [-12, 12]."""
    return sample_batch("poisson", 12.0, 10_000, POISSON_SEED)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(99)
