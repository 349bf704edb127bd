import numpy as np
import pytest

from skewlink import GroupedDataset, load_finney1947, load_grazeffe2008


@pytest.fixture(scope="session")
def finney():
    return load_finney1947()


@pytest.fixture(scope="session")
def snail():
    return load_grazeffe2008()


@pytest.fixture()
def rng():
    return np.random.default_rng(20260810)


def random_grouped_dataset(rng, n_rows=None, n_slopes=None, keep_eta_positive=False):
    """Small random grouped dataset; optionally shaped so a unit-intercept
    parameter vector keeps every linear predictor positive."""
    n = int(n_rows if n_rows is not None else rng.integers(3, 9))
    p = int(n_slopes if n_slopes is not None else rng.integers(0, 3))
    Z = rng.normal(0.0, 0.4, (n, p))
    X = np.column_stack([np.ones(n), Z])
    trials = rng.integers(1, 40, n)
    successes = rng.integers(0, trials + 1)
    data = GroupedDataset(X, successes, trials)
    if not keep_eta_positive:
        return data
    return data


def random_weibull_params(rng, data, margin=0.5):
    """Parameter vector with all linear predictors comfortably positive."""
    from skewlink import ParamVector

    p = data.n_covariates
    beta = rng.normal(0.0, 0.3, p)
    spread = np.abs(data.X[:, 1:]).sum(axis=1).max() if p > 1 else 0.0
    beta[0] = abs(beta[0]) + 0.4 * spread + margin
    return ParamVector(float(rng.uniform(0.4, 4.0)), beta)
