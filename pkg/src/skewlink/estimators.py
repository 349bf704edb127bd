"""Scikit-learn style estimator fronts for the fitting pipelines.

These wrap the functional layer (``fit_mle``, ``fit_bayes``,
``fit_multinomial``) behind ``fit``/``predict_proba``/``get_params`` so the
models drop into sklearn pipelines, grid search, and clones.  Grouped
binomial targets follow the statsmodels convention: ``y`` may be a binary
vector or a two-column (successes, trials) array.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator

from .bayes import fit_bayes
from .data import GroupedDataset, MultinomialDataset
from .links import inverse_link, make_link
from .mle import FitOptions, fit_mle
from .multinomial import category_prob_matrix, fit_multinomial

__all__ = [
    "BinomialRegression",
    "BayesianBinomialRegression",
    "MultinomialRegression",
    "check_design",
    "check_binomial_target",
]


def check_design(X, n_features: int | None = None) -> np.ndarray:
    """Validate a raw covariate matrix (no intercept column expected)."""
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X[:, None]
    if X.ndim != 2:
        raise ValueError(f"X must be 2-D, got shape {X.shape}")
    if not np.all(np.isfinite(X)):
        raise ValueError("X contains non-finite values")
    if n_features is not None and X.shape[1] != n_features:
        raise ValueError(f"X has {X.shape[1]} features, expected {n_features}")
    return X


def check_binomial_target(y, n_rows: int) -> tuple[np.ndarray, np.ndarray]:
    """Accept binary labels or a (successes, trials) pair of columns."""
    y = np.asarray(y)
    if y.ndim == 1:
        uniq = np.unique(y)
        if not np.all(np.isin(uniq, (0, 1))):
            raise ValueError("1-D targets must be binary 0/1; pass (successes, trials) columns otherwise")
        return y.astype(np.int64), np.ones(y.size, dtype=np.int64)
    if y.ndim == 2 and y.shape[1] == 2:
        return y[:, 0].astype(np.int64), y[:, 1].astype(np.int64)
    raise ValueError(f"y must be binary labels or an (n, 2) successes/trials array, got shape {y.shape}")


class BinomialRegression(BaseEstimator):
    """Binomial regression by maximum likelihood under a chosen link.

    Parameters
    ----------
    link : str, one of {"weibull", "reflected_weibull", "logit", "probit",
        "cloglog", "loglog"}.  The Weibull kinds carry a shape parameter
        that is estimated unless ``gamma`` pins it.
    gamma : float or None.  Fixed shape for the Weibull kinds; None lets
        the fit estimate it.
    seed : int.  Drives the deterministic restart perturbations.

    Attributes
    ----------
    coef_ : slope coefficients (excluding the intercept).
    intercept_ : fitted intercept.
    shape_ : estimated or fixed shape, None for fixed-shape links.
    se_ : standard errors in (shape, intercept, slopes) order, or None.
    log_lik_, aic_, bic_ : fit statistics.
    result_ : the underlying FitResult with everything else.
    """

    def __init__(self, link="weibull", gamma=None, tol_f=1e-10, tol_x=1e-8,
                 max_evals=50_000, n_restarts=5, seed=0, compute_se=True):
        self.link = link
        self.gamma = gamma
        self.tol_f = tol_f
        self.tol_x = tol_x
        self.max_evals = max_evals
        self.n_restarts = n_restarts
        self.seed = seed
        self.compute_se = compute_se

    def _options(self) -> FitOptions:
        return FitOptions(tol_f=self.tol_f, tol_x=self.tol_x,
                          max_evals=self.max_evals, n_restarts=self.n_restarts,
                          seed=self.seed, compute_se=self.compute_se)

    def fit(self, X, y):
        X = check_design(X)
        successes, trials = check_binomial_target(y, X.shape[0])
        data = GroupedDataset.from_covariates(X, successes, trials)
        result = fit_mle(data, make_link(self.link, self.gamma), self._options())
        self.result_ = result
        self.n_features_in_ = X.shape[1]
        self.intercept_ = float(result.params.beta[0])
        self.coef_ = result.params.beta[1:].copy()
        self.shape_ = result.params.gamma
        self.se_ = result.std_errors
        self.log_lik_ = result.log_lik
        from .model_selection import aic, bic

        self.aic_ = aic(result.log_lik, result.n_params)
        self.bic_ = bic(result.log_lik, result.n_params, result.n_obs)
        self.converged_ = result.converged
        return self

    def predict_proba(self, X):
        self._check_fitted()
        X = check_design(X, self.n_features_in_)
        eta = self.intercept_ + X @ self.coef_
        mu = np.atleast_1d(inverse_link(self.result_.link, eta))
        return np.column_stack([1.0 - mu, mu])

    def predict(self, X):
        return (self.predict_proba(X)[:, 1] >= 0.5).astype(int)

    def _check_fitted(self):
        if not hasattr(self, "result_"):
            raise RuntimeError("this estimator has not been fitted yet")


class BayesianBinomialRegression(BaseEstimator):
    """Posterior sampling for the same model family.

    ``prior`` may be "hierarchical" (gamma-normal hierarchy, means from
    Monte-Carlo EM unless given explicitly) or "noninformative" (improper
    shape-decaying prior, proper posterior for c > 1).

    Attributes after ``fit``: ``chain_`` (PosteriorChain), ``summary_``,
    ``dic_``, ``p_d_``, ``posterior_mean_``, ``eb_``, ``result_``.
    """

    def __init__(self, link="weibull", prior="hierarchical", c=2.0,
                 v_gamma=100.0, v_beta=25.0, use_empirical_bayes=True,
                 seed=0, n_burn=10_000, n_keep=50_000, thin=5):
        self.link = link
        self.prior = prior
        self.c = c
        self.v_gamma = v_gamma
        self.v_beta = v_beta
        self.use_empirical_bayes = use_empirical_bayes
        self.seed = seed
        self.n_burn = n_burn
        self.n_keep = n_keep
        self.thin = thin

    def fit(self, X, y):
        X = check_design(X)
        successes, trials = check_binomial_target(y, X.shape[0])
        data = GroupedDataset.from_covariates(X, successes, trials)
        result = fit_bayes(
            data, make_link(self.link),
            prior=self.prior, seed=self.seed, n_burn=self.n_burn,
            n_keep=self.n_keep, thin=self.thin, c=self.c,
            v_gamma=self.v_gamma, v_beta=self.v_beta,
            use_empirical_bayes=self.use_empirical_bayes,
        )
        self.result_ = result
        self.n_features_in_ = X.shape[1]
        self.chain_ = result.chain
        self.summary_ = result.summary
        self.dic_ = result.dic
        self.p_d_ = result.p_d
        self.posterior_mean_ = result.params
        self.eb_ = result.eb
        return self

    def predict_proba(self, X):
        if not hasattr(self, "result_"):
            raise RuntimeError("this estimator has not been fitted yet")
        X = check_design(X, self.n_features_in_)
        eta = self.posterior_mean_.beta[0] + X @ self.posterior_mean_.beta[1:]
        mu = np.atleast_1d(inverse_link(self.result_.link, eta))
        return np.column_stack([1.0 - mu, mu])


class MultinomialRegression(BaseEstimator):
    """Continuation-ratio multinomial regression.

    ``y`` in ``fit`` is an (n, K) count matrix (grouped data) or a 1-D
    label vector that gets one-hot expanded.  ``predict_proba`` returns the
    K category probabilities per row.
    """

    def __init__(self, link="reflected_weibull", gamma=None, method="mle",
                 seed=0, max_evals=50_000, n_restarts=5, **bayes_kwargs):
        self.link = link
        self.gamma = gamma
        self.method = method
        self.seed = seed
        self.max_evals = max_evals
        self.n_restarts = n_restarts
        self.bayes_kwargs = bayes_kwargs

    def fit(self, X, y):
        X = check_design(X)
        y = np.asarray(y)
        if y.ndim == 1:
            labels = np.unique(y)
            counts = (y[:, None] == labels[None, :]).astype(np.int64)
            self.classes_ = labels
        elif y.ndim == 2:
            counts = y
            self.classes_ = np.arange(1, y.shape[1] + 1)
        else:
            raise ValueError(f"y must be labels or an (n, K) count matrix, got shape {y.shape}")
        data = MultinomialDataset.from_covariates(X, counts)
        if self.method == "mle":
            options = FitOptions(max_evals=self.max_evals,
                                 n_restarts=self.n_restarts, seed=self.seed)
            self.result_ = fit_multinomial(data, make_link(self.link, self.gamma),
                                           method="mle", options=options)
        else:
            self.result_ = fit_multinomial(data, make_link(self.link, self.gamma),
                                           method="bayes", seed=self.seed,
                                           **self.bayes_kwargs)
        self.n_features_in_ = X.shape[1]
        self.converged_ = self.result_.converged
        return self

    def predict_proba(self, X):
        if not hasattr(self, "result_"):
            raise RuntimeError("this estimator has not been fitted yet")
        X = check_design(X, self.n_features_in_)
        design = np.column_stack([np.ones(X.shape[0]), X])
        return category_prob_matrix(self.result_, design)

    def predict(self, X):
        return self.classes_[np.argmax(self.predict_proba(X), axis=1)]
