"""Grouped-binomial log-likelihood and its Weibull-link derivatives.

Conventions used throughout:

* Parameter order is (gamma, beta_0, ..., beta_r); fixed-shape links drop
  the leading slot.
* Sums run over grouped cells: a cell with ``s`` successes out of ``t``
  trials contributes ``s`` copies of the success term and ``t - s`` copies
  of the failure term, which is algebraically identical to expanding the
  data to individual Bernoulli rows.
* Impossible configurations (a success where the link pins the mean to 0,
  or a failure where it pins the mean to 1) make the log-likelihood -inf
  rather than raising, so derivative-free search stays total.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._special import log1mexp, log1pexp
from .data import GroupedDataset
from .links import LinkFamily, inverse_link, power_positive

__all__ = ["ParamVector", "log_likelihood", "gradient", "hessian", "linear_predictor"]

_EXP_CAP = 700.0
# below this the log eta factors in the derivatives are numerically useless
_ETA_FLOOR = 1e-300


@dataclass(frozen=True)
class ParamVector:
    """Shape parameter plus regression coefficients for one binary model."""

    gamma: float | None
    beta: np.ndarray

    def __post_init__(self):
        beta = np.asarray(self.beta, dtype=float)
        if beta.ndim != 1 or beta.size == 0:
            raise ValueError("beta must be a nonempty vector")
        if self.gamma is not None and not (math.isfinite(self.gamma) and self.gamma > 0):
            raise ValueError(f"gamma must be a positive finite real, got {self.gamma}")
        object.__setattr__(self, "beta", beta)

    @property
    def n_params(self) -> int:
        return self.beta.size + (0 if self.gamma is None else 1)

    def packed(self) -> np.ndarray:
        """(gamma, beta...) as one flat array; beta alone if gamma is None."""
        if self.gamma is None:
            return self.beta.copy()
        return np.concatenate([[self.gamma], self.beta])


def linear_predictor(data: GroupedDataset, beta: np.ndarray) -> np.ndarray:
    return data.X @ np.asarray(beta, dtype=float)


def _log_prob_pair(link: LinkFamily, gamma, eta):
    """Stable (log mu, log(1 - mu)) for every link kind, elementwise."""
    kind = link.kind
    with np.errstate(over="ignore", under="ignore", invalid="ignore", divide="ignore"):
        if kind == "weibull":
            pos = eta > 0
            u = power_positive(np.where(pos, eta, 1.0), gamma)
            log_mu = np.where(pos, log1mexp(u), -np.inf)
            log_1m = np.where(pos, -u, 0.0)
        elif kind == "reflected_weibull":
            pos = eta > 0
            u = power_positive(np.where(pos, eta, 1.0), gamma)
            log_mu = np.where(pos, -u, 0.0)
            log_1m = np.where(pos, log1mexp(u), -np.inf)
        elif kind == "logit":
            log_mu = -log1pexp(-eta)
            log_1m = -log1pexp(eta)
        elif kind == "probit":
            mu = inverse_link(link, eta)
            log_mu = np.log(mu)
            log_1m = np.log1p(-mu)
        elif kind == "cloglog":
            e = np.exp(np.minimum(eta, _EXP_CAP))
            log_mu = log1mexp(e)
            log_1m = -e
        else:  # loglog
            e = np.exp(np.minimum(-eta, _EXP_CAP))
            log_mu = -e
            log_1m = log1mexp(e)
    return np.asarray(log_mu), np.asarray(log_1m)


def log_likelihood(params: ParamVector, data: GroupedDataset, link: LinkFamily) -> float:
    """Grouped binomial log-likelihood; -inf encodes impossibility.

    For the Weibull kinds the shape is taken from ``params.gamma``.
    """
    if link.is_weibull_kind and params.gamma is None:
        raise ValueError("Weibull-kind likelihood needs params.gamma")
    eta = linear_predictor(data, params.beta)
    log_mu, log_1m = _log_prob_pair(link, params.gamma, eta)
    s = data.successes
    f = data.failures
    # 0 * -inf must contribute 0, not nan
    with np.errstate(invalid="ignore"):
        terms = np.where(s > 0, s * log_mu, 0.0) + np.where(f > 0, f * log_1m, 0.0)
    return float(np.sum(terms))


def _weibull_counts(params: ParamVector, data: GroupedDataset, link: LinkFamily):
    """Common setup for the analytic derivatives.

    The reflected link satisfies mean_reflected = 1 - mean_weibull at the
    same (gamma, beta), so its derivatives are the Weibull ones with the
    success and failure counts swapped.
    """
    if link.kind == "weibull":
        s, f = data.successes, data.failures
    elif link.kind == "reflected_weibull":
        s, f = data.failures, data.successes
    else:
        raise ValueError(f"analytic derivatives exist only for Weibull kinds, not {link.kind!r}")
    if params.gamma is None:
        raise ValueError("derivatives need a concrete shape in params.gamma")
    eta = linear_predictor(data, params.beta)
    if np.any(eta <= _ETA_FLOOR):
        raise ValueError(
            f"linear predictor must stay above {_ETA_FLOOR} for the analytic derivatives "
            f"(min eta = {eta.min():g})"
        )
    return s.astype(float), f.astype(float), eta


def gradient(params: ParamVector, data: GroupedDataset,
             link: LinkFamily = LinkFamily("weibull")) -> np.ndarray:
    """Score vector in (gamma, beta) order for the Weibull-kind likelihood."""
    s, f, eta = _weibull_counts(params, data, link)
    gamma = params.gamma
    log_eta = np.log(eta)
    u = power_positive(eta, gamma)
    with np.errstate(over="ignore", under="ignore"):
        # xi1/(1 - xi1) = 1/(exp(u) - 1), which expm1 keeps stable for small u
        ratio = 1.0 / np.expm1(u)
        common = -f + s * ratio
        g_gamma = np.sum(log_eta * u * common)
        g_beta = data.X.T @ (gamma * (u / eta) * common)
    return np.concatenate([[g_gamma], g_beta])


def hessian(params: ParamVector, data: GroupedDataset,
            link: LinkFamily = LinkFamily("weibull")) -> np.ndarray:
    """Second-derivative matrix in (gamma, beta) order, symmetric by
    construction; the squared occupancy terms use the identity
    xi2 = xi1**2 rather than a second exponential."""
    s, f, eta = _weibull_counts(params, data, link)
    gamma = params.gamma
    log_eta = np.log(eta)
    u = power_positive(eta, gamma)
    with np.errstate(over="ignore", under="ignore"):
        ratio = 1.0 / np.expm1(u)      # xi1 / (1 - xi1)
        ratio2 = ratio * ratio         # xi2 / (1 - xi1)^2
        # d2/dgamma2
        h_gg = np.sum(
            -f * log_eta**2 * u
            + s * log_eta**2 * (u - u * u) * ratio
            - s * log_eta**2 * u * u * ratio2
        )
        # d2/(dgamma dbeta): weight per row, then through the design
        b = (
            -f * (1.0 + gamma * log_eta) * (u / eta)
            + s * (1.0 + gamma * log_eta * (1.0 - u)) * (u / eta) * ratio
            - s * gamma * log_eta * (u * u / eta) * ratio2
        )
        h_gb = data.X.T @ b
        # d2/(dbeta dbeta'): X' diag(a) X
        a = (
            -f * (gamma - 1.0) * gamma * (u / eta**2)
            + s * ((gamma - 1.0) - gamma * u) * gamma * (u / eta**2) * ratio
            - s * gamma**2 * (u * u / eta**2) * ratio2
        )
        h_bb = (data.X * a[:, None]).T @ data.X
    p = params.beta.size
    H = np.empty((p + 1, p + 1))
    H[0, 0] = h_gg
    H[0, 1:] = h_gb
    H[1:, 0] = h_gb
    H[1:, 1:] = 0.5 * (h_bb + h_bb.T)  # exact symmetry despite float reduction order
    return H
