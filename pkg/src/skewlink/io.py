"""CSV ingestion for grouped binomial and multinomial tables."""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .data import GroupedDataset, MultinomialDataset

__all__ = ["parse_binomial_csv", "parse_multinomial_csv"]


def _read_rows(path):
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"data file not found: {path}")
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise ValueError(f"{path}: empty file, expected a CSV header row")
        rows = list(reader)
    if not rows:
        raise ValueError(f"{path}: no data rows after the header")
    return reader.fieldnames, rows


def _cell(row, col, row_idx, path):
    if col not in row or row[col] is None:
        raise ValueError(f"{path}: row {row_idx}: missing column {col!r}")
    raw = row[col].strip()
    try:
        return float(raw)
    except ValueError:
        raise ValueError(
            f"{path}: row {row_idx}: column {col!r} is not numeric: {raw!r}"
        ) from None


def parse_binomial_csv(path, covariate_cols, success_col, trial_col) -> GroupedDataset:
    """Grouped binomial CSV: named covariate columns plus successes and
    trials.  Row order is preserved; the intercept column is prepended.
    Violations (missing column, non-numeric cell, successes > trials) name
    the offending row and column."""
    header, rows = _read_rows(path)
    for col in [*covariate_cols, success_col, trial_col]:
        if col not in header:
            raise ValueError(f"{path}: no column named {col!r} (header: {header})")
    Z = np.empty((len(rows), len(covariate_cols)))
    s = np.empty(len(rows))
    t = np.empty(len(rows))
    for i, row in enumerate(rows, start=1):
        for j, col in enumerate(covariate_cols):
            Z[i - 1, j] = _cell(row, col, i, path)
        s[i - 1] = _cell(row, success_col, i, path)
        t[i - 1] = _cell(row, trial_col, i, path)
        if s[i - 1] > t[i - 1]:
            raise ValueError(
                f"{path}: row {i}: successes ({s[i-1]:g}) exceed trials ({t[i-1]:g})"
            )
        if s[i - 1] < 0 or t[i - 1] < 1:
            raise ValueError(f"{path}: row {i}: need successes >= 0 and trials >= 1")
    return GroupedDataset.from_covariates(Z, s, t, names=tuple(covariate_cols))


def parse_multinomial_csv(path, covariate_cols, count_cols) -> MultinomialDataset:
    """Multinomial CSV: covariate columns then one count column per
    category, in category order."""
    if len(count_cols) < 2:
        raise ValueError("need at least two count columns")
    header, rows = _read_rows(path)
    for col in [*covariate_cols, *count_cols]:
        if col not in header:
            raise ValueError(f"{path}: no column named {col!r} (header: {header})")
    Z = np.empty((len(rows), len(covariate_cols)))
    C = np.empty((len(rows), len(count_cols)))
    for i, row in enumerate(rows, start=1):
        for j, col in enumerate(covariate_cols):
            Z[i - 1, j] = _cell(row, col, i, path)
        for k, col in enumerate(count_cols):
            v = _cell(row, col, i, path)
            if v < 0:
                raise ValueError(f"{path}: row {i}: column {col!r} has a negative count")
            C[i - 1, k] = v
    return MultinomialDataset.from_covariates(
        Z, C, names=tuple(covariate_cols), labels=tuple(count_cols)
    )
