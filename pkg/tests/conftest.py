import numpy as np
import pytest

from framemeasures import WhiteNoiseEnsemble, mercedes_benz_frame, orthonormal_basis_frame


@pytest.fixture(scope="session")
def mb():
    return mercedes_benz_frame()


@pytest.fixture(scope="session")
def onb2():
    return orthonormal_basis_frame(2)


@pytest.fixture(scope="session")
def ens_small():
    # shared medium ensemble for unit tests: D = 16, M = 2e5
    return WhiteNoiseEnsemble.generate(16, 200_000, seed=20240811)


def random_spanning_frame(rng, dim=None, n=None):
    dim = dim or int(rng.integers(2, 7))
    n = n or int(rng.integers(dim, dim + 6))
    return rng.normal(size=(n, dim))


def unit(v):
    v = np.asarray(v, dtype=float)
    return v / np.linalg.norm(v)
