"""Information criteria and grouped-cell fit statistics.

KS and MAE here follow the grouped-cell convention: one cell per dataset
row (binomial) or per row/category pair (multinomial), observed value the
cell's relative frequency, predicted value the model probability.  That is
the convention under which the reference magnitudes (~0.05 mean error on
the insecticide data) are attainable; per-Bernoulli residuals would sit
near 0.3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .data import GroupedDataset, MultinomialDataset

__all__ = ["aic", "bic", "ks_mae", "ComparisonRow", "compare"]


def aic(log_lik: float, n_params: int) -> float:
    return -2.0 * log_lik + 2.0 * n_params


def bic(log_lik: float, n_params: int, n_obs: int) -> float:
    """n_obs counts individual Bernoulli trials, not grouped rows."""
    return -2.0 * log_lik + n_params * math.log(n_obs)


def ks_mae(observed, predicted) -> tuple[float, float]:
    """Max and mean absolute gap between observed cell frequencies and
    predicted probabilities.  Accepts a GroupedDataset, a MultinomialDataset,
    or a plain array of observed frequencies."""
    if isinstance(observed, GroupedDataset):
        obs = observed.observed_proportions()
    elif isinstance(observed, MultinomialDataset):
        obs = observed.observed_frequencies()
    else:
        obs = np.asarray(observed, dtype=float)
    pred = np.asarray(predicted, dtype=float)
    if obs.shape != pred.shape:
        raise ValueError(f"observed {obs.shape} and predicted {pred.shape} shapes differ")
    gaps = np.abs(obs - pred)
    return float(gaps.max()), float(gaps.mean())


@dataclass(frozen=True)
class ComparisonRow:
    model_name: str
    log_lik: float
    aic: float | None
    bic: float | None
    dic: float | None
    ks: float
    mae: float
    n_params: int
    n_obs: int

    def as_dict(self) -> dict:
        return {
            "model": self.model_name,
            "log_lik": self.log_lik,
            "aic": self.aic,
            "bic": self.bic,
            "dic": self.dic,
            "ks": self.ks,
            "mae": self.mae,
            "n_params": self.n_params,
            "n_obs": self.n_obs,
        }


def compare(fits, data) -> list[ComparisonRow]:
    """Assemble a sorted comparison table for fits of one dataset.

    ``fits`` maps names to fitted models: binomial FitResult, MultinomialFit,
    or BayesFit objects (anything exposing ``comparison_row(name, data)``).
    Rows sort by AIC when every row has one, otherwise by DIC; ties break
    on the model name so the output is stable under input permutation.
    """
    items = fits.items() if isinstance(fits, dict) else list(fits)
    rows = []
    for name, fit in items:
        row = fit.comparison_row(name, data)
        if row.n_obs != _data_total(data):
            raise ValueError(
                f"fit {name!r} was made on a dataset with {row.n_obs} observations, "
                f"this dataset has {_data_total(data)}"
            )
        rows.append(row)
    if all(r.aic is not None for r in rows):
        def key(r):
            return (r.aic, r.model_name)
    else:
        def key(r):
            return (r.dic if r.dic is not None else math.inf, r.model_name)
    return sorted(rows, key=key)


def _data_total(data) -> int:
    if isinstance(data, GroupedDataset):
        return data.n_trials
    if isinstance(data, MultinomialDataset):
        return data.n_total
    raise TypeError(f"unsupported dataset type {type(data).__name__}")
