"""Embedded reference datasets.

``finney1947``: the classic insecticide potency assay.  Seventeen grouped
binomial cells; covariates are log dose plus indicators for the rotenone
and deguelin preparations (the mixture is the reference level).

``grazeffe2008``: comet-assay DNA damage scores for irradiated snails.
Five dose groups, four ordered damage categories.  The conventional model
uses dose and dose squared as covariates.
"""

from __future__ import annotations

import numpy as np

from .data import GroupedDataset, MultinomialDataset

__all__ = ["load_finney1947", "load_grazeffe2008", "load_binomial", "load_multinomial",
           "BINOMIAL_BUILTINS", "MULTINOMIAL_BUILTINS"]

# (log dose, rotenone flag, deguelin flag, dead, treated)
_FINNEY_ROWS = (
    (1.01, 1, 0, 44, 50),
    (0.89, 1, 0, 42, 49),
    (0.71, 1, 0, 24, 46),
    (0.58, 1, 0, 16, 48),
    (0.41, 1, 0, 6, 50),
    (1.70, 0, 1, 48, 48),
    (1.61, 0, 1, 47, 50),
    (1.48, 0, 1, 47, 49),
    (1.31, 0, 1, 34, 48),
    (1.00, 0, 1, 18, 48),
    (0.71, 0, 1, 16, 49),
    (1.40, 0, 0, 48, 50),
    (1.31, 0, 0, 43, 46),
    (1.18, 0, 0, 38, 48),
    (1.00, 0, 0, 27, 46),
    (0.71, 0, 0, 22, 46),
    (0.40, 0, 0, 7, 47),
)

# (dose in Gy, counts for damage classes 1..4)
_GRAZEFFE_ROWS = (
    (0.0, 654, 125, 72, 249),
    (2.5, 442, 178, 105, 175),
    (5.0, 197, 253, 173, 277),
    (10.0, 159, 296, 264, 281),
    (20.0, 58, 49, 133, 660),
)


def load_finney1947() -> GroupedDataset:
    rows = np.asarray(_FINNEY_ROWS, dtype=float)
    return GroupedDataset.from_covariates(
        rows[:, :3], rows[:, 3], rows[:, 4], names=("logdose", "rotenone", "deguelin")
    )


def load_grazeffe2008(dose_scale: float = 1.0) -> MultinomialDataset:
    """Snail irradiation data with (dose, dose^2) covariates.

    ``dose_scale`` divides the dose column before the quadratic expansion,
    for fits on a rescaled dose axis; the default keeps raw Gy units.
    """
    rows = np.asarray(_GRAZEFFE_ROWS, dtype=float)
    dose = rows[:, 0] / dose_scale
    return MultinomialDataset.from_covariates(
        np.column_stack([dose, dose**2]),
        rows[:, 1:],
        names=("dose", "dose2"),
        labels=("none", "low", "intermediate", "high"),
    )


BINOMIAL_BUILTINS = {"finney1947": load_finney1947}
MULTINOMIAL_BUILTINS = {"grazeffe2008": load_grazeffe2008}


def load_binomial(name: str) -> GroupedDataset:
    try:
        return BINOMIAL_BUILTINS[name]()
    except KeyError:
        raise KeyError(f"no builtin binomial dataset named {name!r}") from None


def load_multinomial(name: str, **kwargs) -> MultinomialDataset:
    try:
        return MULTINOMIAL_BUILTINS[name](**kwargs)
    except KeyError:
        raise KeyError(f"no builtin multinomial dataset named {name!r}") from None
