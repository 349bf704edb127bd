"""Multi-category fitting by sequential binary decomposition.

A K-category response splits into K-1 conditional binary problems: the
k-th asks "category k, given not in any earlier category".  Each binary
problem is an ordinary grouped fit with any link in the catalogue, and the
category probabilities reassemble through the stick-breaking cascade
``p_1 = theta_1``, ``p_k = theta_k * prod_{l<k}(1 - theta_l)``,
``p_K = prod(1 - theta_l)``.  The binary likelihoods multiply back into
exactly the multinomial likelihood, so nothing is lost in the split.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .data import GroupedDataset, MultinomialDataset
from .links import LinkFamily, inverse_link
from .mle import FitOptions, fit_mle
from .parallel import worker_count

__all__ = [
    "MultinomialFit",
    "decompose",
    "fit_multinomial",
    "category_probs",
    "category_prob_matrix",
    "multinomial_metrics",
    "category_probs_from_conditionals",
    "conditionals_from_category_probs",
]


def decompose(data: MultinomialDataset) -> list[GroupedDataset]:
    """The K-1 conditional binary datasets.

    Dataset k has successes = counts in category k and trials = counts in
    category k and beyond; rows whose remaining total is zero drop out.
    """
    out = []
    remaining = data.counts.sum(axis=1)
    for k in range(data.n_categories - 1):
        keep = remaining > 0
        out.append(
            GroupedDataset(
                data.X[keep],
                data.counts[keep, k],
                remaining[keep],
                data.covariate_names,
            )
        )
        remaining = remaining - data.counts[:, k]
    return out


def category_probs_from_conditionals(theta) -> np.ndarray:
    """Stick-breaking cascade from K-1 conditionals to K probabilities."""
    theta = np.asarray(theta, dtype=float)
    survivors = np.cumprod(1.0 - theta)
    p = np.empty(theta.size + 1)
    p[0] = theta[0]
    p[1:-1] = theta[1:] * survivors[:-1]
    p[-1] = survivors[-1]
    return p


def conditionals_from_category_probs(p) -> np.ndarray:
    """Inverse cascade: theta_k = p_k / (1 - sum of earlier p)."""
    p = np.asarray(p, dtype=float)
    head = np.concatenate([[0.0], np.cumsum(p[:-1])])[:-1]
    return p[:-1] / (1.0 - head)


@dataclass(frozen=True)
class MultinomialFit:
    """K-1 fitted binary models plus the reassembly rule."""

    sub_fits: tuple
    link: LinkFamily
    category_labels: tuple
    covariate_names: tuple

    @property
    def converged(self) -> bool:
        return all(f.converged for f in self.sub_fits)

    @property
    def n_categories(self) -> int:
        return len(self.sub_fits) + 1

    @property
    def n_params(self) -> int:
        return sum(f.n_params for f in self.sub_fits)

    def comparison_row(self, name: str, data: MultinomialDataset):
        from .model_selection import ComparisonRow

        log_lik, aic_value, ks, mae = multinomial_metrics(self, data)
        return ComparisonRow(
            model_name=name,
            log_lik=log_lik,
            aic=aic_value,
            bic=None,
            dic=None,
            ks=ks,
            mae=mae,
            n_params=self.n_params,
            n_obs=data.n_total,
        )


def fit_multinomial(data: MultinomialDataset, link: LinkFamily,
                    method: str = "mle",
                    options: FitOptions | None = None,
                    **bayes_kwargs) -> MultinomialFit:
    """Fit all K-1 conditional models with one link family.

    Sub-fits are independent and run on a thread pool sized by
    SKEWLINK_THREADS.  Any sub-fit that fails to converge marks the whole
    fit as non-converged; errors in a sub-fit propagate with the component
    index attached.
    """
    parts = decompose(data)
    if method == "mle":
        options = options or FitOptions()

        def fit_one(idx, part):
            return fit_mle(part, link, options)

    elif method == "bayes":
        from .bayes import fit_bayes

        def fit_one(idx, part):
            kw = dict(bayes_kwargs)
            kw["seed"] = kw.get("seed", 0) + idx  # chains stay independent
            return fit_bayes(part, link, **kw)

    else:
        raise ValueError(f"method must be 'mle' or 'bayes', got {method!r}")

    def guarded(idx_part):
        idx, part = idx_part
        try:
            return fit_one(idx, part)
        except Exception as exc:
            raise RuntimeError(f"conditional model {idx + 1} failed: {exc}") from exc

    with ThreadPoolExecutor(max_workers=worker_count(len(parts))) as pool:
        fits = list(pool.map(guarded, enumerate(parts)))
    return MultinomialFit(
        sub_fits=tuple(fits),
        link=link,
        category_labels=data.category_labels,
        covariate_names=data.covariate_names,
    )


def _conditional_matrix(fit: MultinomialFit, X: np.ndarray) -> np.ndarray:
    """theta_k at every design row, shape (n, K-1)."""
    cols = [
        np.atleast_1d(inverse_link(sub.link, X @ sub.params.beta))
        for sub in fit.sub_fits
    ]
    return np.column_stack(cols)


def category_prob_matrix(fit: MultinomialFit, X: np.ndarray) -> np.ndarray:
    """Category probabilities at every design row, shape (n, K)."""
    theta = _conditional_matrix(fit, X)
    survivors = np.cumprod(1.0 - theta, axis=1)
    p = np.empty((X.shape[0], theta.shape[1] + 1))
    p[:, 0] = theta[:, 0]
    p[:, 1:-1] = theta[:, 1:] * survivors[:, :-1]
    p[:, -1] = survivors[:, -1]
    return p


def category_probs(fit: MultinomialFit, x) -> np.ndarray:
    """Probability vector over the K categories at one covariate point.

    ``x`` is the raw covariate vector; the intercept 1 is prepended when
    it is not already there.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    p_design = len(fit.covariate_names)
    if x.size == p_design - 1:
        x = np.concatenate([[1.0], x])
    elif x.size != p_design:
        raise ValueError(f"covariate vector of length {x.size} does not match design width {p_design}")
    return category_prob_matrix(fit, x[None, :])[0]


def multinomial_metrics(fit: MultinomialFit, data: MultinomialDataset):
    """(total log-likelihood, AIC, KS, MAE) on the fitting data.

    The log-likelihood is the multinomial kernel ``sum count * log p``;
    a zero predicted probability against a positive count yields -inf.
    KS/MAE cells are the (row, category) relative frequencies.
    """
    from .model_selection import aic as aic_fn
    from .model_selection import ks_mae

    P = category_prob_matrix(fit, data.X)
    counts = data.counts
    with np.errstate(divide="ignore", invalid="ignore"):
        logp = np.where(counts > 0, counts * np.log(P), 0.0)
    log_lik = float(np.sum(logp))
    ks, mae = ks_mae(data, P)
    return log_lik, aic_fn(log_lik, fit.n_params), ks, mae
