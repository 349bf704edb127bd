"""Link families for binary regression, including the Weibull-cdf pair.

The Weibull link maps a linear predictor eta to a mean through the Weibull
cdf, ``mu = 1 - exp(-eta**gamma)`` for ``eta > 0`` and exactly 0 otherwise;
the threshold is absorbed into the regression intercept, so the indicator
at 0 is part of the link itself.  The reflected variant uses the decreasing
survival form ``exp(-eta**gamma)`` and covers negative skewness beyond the
Weibull floor.  Four fixed-shape classics (logit, probit, cloglog, loglog)
round out the family; cloglog and loglog arise from the Weibull pair as
shape -> infinity, and specific shape values make it track probit or logit
closely (see the *_APPROX constants).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._special import log1pexp, norm_cdf, norm_pdf, norm_ppf

__all__ = [
    "LINK_KINDS",
    "LinkFamily",
    "SkewnessReport",
    "make_link",
    "inverse_link",
    "forward_link",
    "link_density",
    "moment_skewness",
    "ag_skewness",
    "skewness_report",
    "cloglog_limit_gap",
    "shifted_weibull_cdf",
    "sigmoid",
    "PROBIT_APPROX",
    "LOGIT_APPROX",
]

LINK_KINDS = ("weibull", "reflected_weibull", "logit", "probit", "cloglog", "loglog")
_SHAPE_KINDS = ("weibull", "reflected_weibull")

# Shape/intercept/slope triples for which the Weibull cdf tracks the normal
# and logistic cdfs; stored as constants, never refit.
PROBIT_APPROX = {"intercept": 0.90114, "slope": 0.27787, "gamma": 3.60235}
LOGIT_APPROX = {"intercept": 0.89864, "slope": 0.16957, "gamma": 3.50215}

# exp(t) saturates double precision past |t| ~ 709; beyond +-700 the power
# eta**gamma is treated as inf/0 outright.
_EXP_CAP = 700.0


@dataclass(frozen=True)
class LinkFamily:
    """One member of the link catalogue.

    ``gamma`` is the Weibull shape.  For the two Weibull kinds it may be a
    positive float (fixed shape) or None (shape to be estimated by the
    fitter); for the fixed-shape kinds it must be None.
    """

    kind: str
    gamma: float | None = None

    def __post_init__(self):
        if self.kind not in LINK_KINDS:
            raise ValueError(f"unknown link kind {self.kind!r}; expected one of {LINK_KINDS}")
        if self.kind in _SHAPE_KINDS:
            if self.gamma is not None and not (math.isfinite(self.gamma) and self.gamma > 0):
                raise ValueError(f"shape parameter must be a positive finite real, got {self.gamma}")
        elif self.gamma is not None:
            raise ValueError(f"link {self.kind!r} takes no shape parameter")

    @property
    def has_free_shape(self) -> bool:
        return self.kind in _SHAPE_KINDS and self.gamma is None

    @property
    def is_weibull_kind(self) -> bool:
        return self.kind in _SHAPE_KINDS

    def inverse(self, eta):
        return inverse_link(self, eta)

    def forward(self, mu):
        return forward_link(self, mu)

    def density(self, eta):
        return link_density(self, eta)


def make_link(kind: str, gamma: float | None = None) -> LinkFamily:
    """Build a LinkFamily, accepting e.g. ``make_link("weibull", 2.5)``."""
    return LinkFamily(kind=kind, gamma=gamma)


def _require_shape(link: LinkFamily) -> float:
    if link.gamma is None:
        raise ValueError(f"link {link.kind!r} needs a concrete shape parameter here")
    return link.gamma


def power_positive(eta, gamma):
    """eta**gamma for eta > 0 as exp(gamma*log eta), with inf/0 shortcuts
    once the exponent leaves [-700, 700].  eta <= 0 yields nan."""
    eta = np.asarray(eta, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore", under="ignore"):
        t = gamma * np.log(eta)
        u = np.where(t > _EXP_CAP, np.inf, np.exp(np.minimum(t, _EXP_CAP)))
        u = np.where(t < -_EXP_CAP, 0.0, u)
    return u


def inverse_link(link: LinkFamily, eta):
    """Mean response in [0, 1] for a finite linear predictor (elementwise)."""
    eta = np.asarray(eta, dtype=float)
    kind = link.kind
    with np.errstate(over="ignore", under="ignore", invalid="ignore"):
        if kind == "weibull":
            gamma = _require_shape(link)
            u = power_positive(np.where(eta > 0, eta, 1.0), gamma)
            out = np.where(eta > 0, -np.expm1(-u), 0.0)
        elif kind == "reflected_weibull":
            gamma = _require_shape(link)
            u = power_positive(np.where(eta > 0, eta, 1.0), gamma)
            out = np.where(eta > 0, np.exp(-u), 1.0)
        elif kind == "logit":
            out = np.where(eta >= 0,
                           1.0 / (1.0 + np.exp(-np.abs(eta))),
                           np.exp(-np.abs(eta)) / (1.0 + np.exp(-np.abs(eta))))
        elif kind == "probit":
            out = norm_cdf(eta)
        elif kind == "cloglog":
            out = -np.expm1(-np.exp(np.minimum(eta, _EXP_CAP)))
        else:  # loglog
            out = np.exp(-np.exp(np.minimum(-eta, _EXP_CAP)))
    out = np.asarray(out)
    if out.ndim == 0:
        return float(out)
    return out


def forward_link(link: LinkFamily, mu):
    """Linear predictor reproducing mean ``mu``; domain is the open (0, 1)."""
    mu_arr = np.asarray(mu, dtype=float)
    if np.any(mu_arr <= 0.0) or np.any(mu_arr >= 1.0):
        raise ValueError("forward link requires mu strictly inside (0, 1)")
    kind = link.kind
    if kind == "weibull":
        gamma = _require_shape(link)
        out = np.exp(np.log(-np.log1p(-mu_arr)) / gamma)
    elif kind == "reflected_weibull":
        gamma = _require_shape(link)
        out = np.exp(np.log(-np.log(mu_arr)) / gamma)
    elif kind == "logit":
        out = np.log(mu_arr) - np.log1p(-mu_arr)
    elif kind == "probit":
        if mu_arr.ndim == 0:
            out = norm_ppf(float(mu_arr))
        else:
            out = np.array([norm_ppf(v) for v in mu_arr.ravel()]).reshape(mu_arr.shape)
    elif kind == "cloglog":
        out = np.log(-np.log1p(-mu_arr))
    else:  # loglog
        out = -np.log(-np.log(mu_arr))
    out = np.asarray(out)
    if out.ndim == 0:
        return float(out)
    return out


def link_density(link: LinkFamily, eta):
    """Magnitude of d(mu)/d(eta): the density of the latent cdf.

    For the reflected Weibull the inverse link is decreasing, so this is
    the absolute slope; all other kinds return the derivative itself.
    """
    eta = np.asarray(eta, dtype=float)
    kind = link.kind
    with np.errstate(over="ignore", under="ignore", invalid="ignore"):
        if kind in _SHAPE_KINDS:
            gamma = _require_shape(link)
            pos = eta > 0
            safe = np.where(pos, eta, 1.0)
            u = power_positive(safe, gamma)
            dens = gamma * (u / safe) * np.exp(-np.minimum(u, _EXP_CAP))
            out = np.where(pos, dens, 0.0)
        elif kind == "logit":
            p = inverse_link(link, eta)
            out = p * (1.0 - p)
        elif kind == "probit":
            out = norm_pdf(eta)
        elif kind == "cloglog":
            out = np.exp(eta - np.exp(np.minimum(eta, _EXP_CAP)))
        else:  # loglog
            out = np.exp(-eta - np.exp(np.minimum(-eta, _EXP_CAP)))
    out = np.asarray(out)
    if out.ndim == 0:
        return float(out)
    return out


def moment_skewness(gamma: float) -> float:
    """Third standardized moment of the Weibull with shape ``gamma``.

    Uses moment ratios normalized by the first moment so that the log-gamma
    differences stay representable down to very small shapes.  The value is
    2 at gamma = 1 (exponential) and decreases to about -1.1395 as the
    shape grows.
    """
    if not gamma > 0:
        raise ValueError(f"shape must be positive, got {gamma}")
    lg1 = math.lgamma(1.0 + 1.0 / gamma)
    lg2 = math.lgamma(1.0 + 2.0 / gamma)
    lg3 = math.lgamma(1.0 + 3.0 / gamma)
    r2 = math.exp(lg2 - 2.0 * lg1)  # E[X^2] / E[X]^2
    r3 = math.exp(lg3 - 3.0 * lg1)  # E[X^3] / E[X]^3
    return (r3 - 3.0 * r2 + 2.0) / (r2 - 1.0) ** 1.5


def ag_skewness(gamma: float) -> float:
    """Arnold-Groeneveld (mode-based) skewness, 2*exp((1-gamma)/gamma) - 1."""
    if not gamma > 0:
        raise ValueError(f"shape must be positive, got {gamma}")
    return 2.0 * math.exp((1.0 - gamma) / gamma) - 1.0


@dataclass(frozen=True)
class SkewnessReport:
    gamma: float
    moment_skewness: float
    ag_skewness: float


def skewness_report(gamma: float) -> SkewnessReport:
    return SkewnessReport(gamma, moment_skewness(gamma), ag_skewness(gamma))


def cloglog_limit_gap(eta: float, gamma: float) -> float:
    """|Weibull-in-limit-form minus cloglog| at one point.

    Evaluates ``1 - exp(-(1 + eta/gamma)**gamma)`` against the cloglog cdf;
    the gap shrinks to 0 as the shape grows, which is how cloglog arises as
    a limiting member of the family.  Requires ``1 + eta/gamma > 0``.
    """
    if not gamma > 0:
        raise ValueError(f"shape must be positive, got {gamma}")
    base = 1.0 + eta / gamma
    if base <= 0.0:
        raise ValueError(f"1 + eta/gamma must be positive, got {base}")
    # gamma*log1p keeps full precision for the enormous shapes the limit needs
    w = gamma * math.log1p(eta / gamma)
    weib = -math.expm1(-math.exp(min(w, _EXP_CAP)))
    cll = -math.expm1(-math.exp(min(eta, _EXP_CAP)))
    return abs(weib - cll)


def shifted_weibull_cdf(eta, intercept: float, slope: float, gamma: float):
    """Weibull cdf applied to an affine predictor, clamped to 0 where the
    shifted base is nonpositive.  Used to check the probit/logit mimics."""
    base = intercept + slope * np.asarray(eta, dtype=float)
    link = LinkFamily("weibull", gamma)
    return inverse_link(link, base)


def sigmoid(eta):
    """Logistic cdf; exposed for tests and the logit comparisons."""
    eta = np.asarray(eta, dtype=float)
    out = np.exp(eta - log1pexp(eta))
    if np.ndim(out) == 0:
        return float(out)
    return out
