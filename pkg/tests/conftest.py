"""Shared fixtures: seeded generators, random bases and synthetic snapshots."""

import numpy as np
import pytest

from sparsense.models import BasisSource, SnapshotMatrix, TailoredBasis
from sparsense.numerics.basis import random_orthonormal, synthetic_snapshots
from sparsense.storage import save_matrix


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def make_basis():
    """Factory for random orthonormal pod bases."""

    def factory(n: int, r: int, seed: int = 0, sigmas=None) -> TailoredBasis:
        modes = random_orthonormal(n, r, np.random.default_rng(seed))
        sigmas = np.linspace(r, 1, r) if sigmas is None else sigmas
        return TailoredBasis(modes=modes, sigmas=sigmas, source=BasisSource.POD)

    return factory


@pytest.fixture
def low_rank_snapshots():
    """Factory for exactly low-rank snapshot matrices."""

    def factory(n: int = 60, m: int = 40, rank: int = 5, seed: int = 0, noise: float = 0.0) -> SnapshotMatrix:
        return synthetic_snapshots(n, m, np.linspace(10.0, 1.0, rank), seed=seed, noise=noise)

    return factory


@pytest.fixture
def snapshot_file(tmp_path, low_rank_snapshots):
    """A rank-5 snapshot matrix written as SSP1 binary."""
    path = tmp_path / "snaps.ssp"
    save_matrix(low_rank_snapshots(n=60, m=40, rank=5, seed=3), path)
    return path
