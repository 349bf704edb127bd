"""Containers for grouped binomial and multinomial observations."""

from __future__ import annotations

import hashlib
import warnings
from dataclasses import dataclass, field

import numpy as np

__all__ = ["GroupedDataset", "MultinomialDataset"]


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.flags.writeable = False
    return a


def _check_design(X: np.ndarray, names) -> None:
    if X.ndim != 2:
        raise ValueError(f"design matrix must be 2-D, got shape {X.shape}")
    if not np.all(np.isfinite(X)):
        raise ValueError("design matrix contains non-finite values")
    if X.shape[0] and not np.all(X[:, 0] == 1.0):
        raise ValueError("first design column must be the all-ones intercept")
    if len(names) != X.shape[1]:
        raise ValueError(f"{len(names)} covariate names for {X.shape[1]} columns")
    if X.shape[0] >= X.shape[1] and X.shape[0]:
        rank = np.linalg.matrix_rank(X)
        if rank < X.shape[1]:
            warnings.warn(
                f"design matrix is rank deficient (rank {rank} < {X.shape[1]} columns)",
                stacklevel=3,
            )


@dataclass(frozen=True)
class GroupedDataset:
    """Rows of (covariate vector with leading 1, successes, trials)."""

    X: np.ndarray
    successes: np.ndarray
    trials: np.ndarray
    covariate_names: tuple = field(default=())

    def __post_init__(self):
        X = np.asarray(self.X, dtype=float)
        s = np.asarray(self.successes)
        t = np.asarray(self.trials)
        names = tuple(self.covariate_names) or tuple(
            "intercept" if j == 0 else f"x{j}" for j in range(X.shape[1])
        )
        if s.shape != (X.shape[0],) or t.shape != (X.shape[0],):
            raise ValueError("successes/trials must be vectors matching the design rows")
        if np.any(s != np.floor(s)) or np.any(t != np.floor(t)):
            raise ValueError("successes and trials must be integers")
        s = s.astype(np.int64)
        t = t.astype(np.int64)
        if np.any(t < 1):
            raise ValueError("every row needs at least one trial")
        if np.any(s < 0) or np.any(s > t):
            raise ValueError("successes must satisfy 0 <= successes <= trials")
        _check_design(X, names)
        object.__setattr__(self, "X", _frozen(X))
        object.__setattr__(self, "successes", _frozen(s))
        object.__setattr__(self, "trials", _frozen(t))
        object.__setattr__(self, "covariate_names", names)

    @classmethod
    def from_covariates(cls, covariates, successes, trials, names=None):
        """Prepend the intercept column and build the dataset."""
        Z = np.atleast_2d(np.asarray(covariates, dtype=float))
        if Z.shape[0] == 1 and np.size(successes) != 1:
            Z = Z.T
        X = np.column_stack([np.ones(Z.shape[0]), Z])
        if names is not None:
            names = ("intercept",) + tuple(names)
        else:
            names = ()
        return cls(X, np.asarray(successes), np.asarray(trials), names)

    @property
    def n_rows(self) -> int:
        return self.X.shape[0]

    @property
    def n_covariates(self) -> int:
        return self.X.shape[1]

    @property
    def n_trials(self) -> int:
        """Total Bernoulli trials; the n that information criteria use."""
        return int(self.trials.sum())

    @property
    def failures(self) -> np.ndarray:
        return self.trials - self.successes

    def observed_proportions(self) -> np.ndarray:
        return self.successes / self.trials

    def fingerprint(self) -> str:
        h = hashlib.sha256()
        h.update(np.ascontiguousarray(self.X).tobytes())
        h.update(np.ascontiguousarray(self.successes).tobytes())
        h.update(np.ascontiguousarray(self.trials).tobytes())
        h.update("|".join(self.covariate_names).encode())
        return h.hexdigest()


@dataclass(frozen=True)
class MultinomialDataset:
    """Rows of (covariate vector with leading 1, counts over K categories)."""

    X: np.ndarray
    counts: np.ndarray
    covariate_names: tuple = field(default=())
    category_labels: tuple = field(default=())

    def __post_init__(self):
        X = np.asarray(self.X, dtype=float)
        C = np.asarray(self.counts)
        names = tuple(self.covariate_names) or tuple(
            "intercept" if j == 0 else f"x{j}" for j in range(X.shape[1])
        )
        if C.ndim != 2 or C.shape[0] != X.shape[0]:
            raise ValueError("counts must be an (n_rows, K) matrix")
        if C.shape[1] < 2:
            raise ValueError("need at least two categories")
        if np.any(C != np.floor(C)) or np.any(C < 0):
            raise ValueError("counts must be nonnegative integers")
        C = C.astype(np.int64)
        if np.any(C.sum(axis=1) < 1):
            raise ValueError("every row needs at least one observation")
        labels = tuple(self.category_labels) or tuple(
            f"cat{k + 1}" for k in range(C.shape[1])
        )
        if len(labels) != C.shape[1]:
            raise ValueError(f"{len(labels)} category labels for {C.shape[1]} categories")
        _check_design(X, names)
        object.__setattr__(self, "X", _frozen(X))
        object.__setattr__(self, "counts", _frozen(C))
        object.__setattr__(self, "covariate_names", names)
        object.__setattr__(self, "category_labels", labels)

    @classmethod
    def from_covariates(cls, covariates, counts, names=None, labels=None):
        Z = np.atleast_2d(np.asarray(covariates, dtype=float))
        counts = np.asarray(counts)
        if Z.shape[0] == 1 and counts.shape[0] != 1:
            Z = Z.T
        X = np.column_stack([np.ones(Z.shape[0]), Z])
        if names is not None:
            names = ("intercept",) + tuple(names)
        else:
            names = ()
        return cls(X, counts, names, tuple(labels) if labels else ())

    @property
    def n_rows(self) -> int:
        return self.X.shape[0]

    @property
    def n_categories(self) -> int:
        return self.counts.shape[1]

    @property
    def n_total(self) -> int:
        return int(self.counts.sum())

    def observed_frequencies(self) -> np.ndarray:
        """Relative frequency of each category per row, shape (n_rows, K)."""
        return self.counts / self.counts.sum(axis=1, keepdims=True)

    def fingerprint(self) -> str:
        h = hashlib.sha256()
        h.update(np.ascontiguousarray(self.X).tobytes())
        h.update(np.ascontiguousarray(self.counts).tobytes())
        h.update("|".join(self.covariate_names).encode())
        h.update("|".join(self.category_labels).encode())
        return h.hexdigest()
