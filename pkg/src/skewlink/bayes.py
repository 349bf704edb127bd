"""Posterior sampling, empirical-Bayes hyperparameters, and DIC.

The sampler is a component-wise Gaussian random-walk Metropolis on
(log shape, coefficients).  During burn-in each coordinate's proposal
scale adapts by Robbins-Monro toward a 0.30-0.45 acceptance window and is
then frozen, so the kept draws come from a valid fixed-kernel chain.
Sampling the shape on the log axis needs the log-Jacobian added to the
target so the chain still represents the posterior of the shape itself.

The hierarchical prior puts a gamma distribution (given mean and variance)
on the shape and independent normals on the coefficients.  Its mean
hyperparameters can be estimated by Monte-Carlo EM: the E-step runs a
short chain under the current means, the M-step maximizes the expected
log-prior (closed form posterior mean for the normal part; a 1-D root
solve for the gamma part, whose maximizer is not the posterior mean
because the variance is held fixed).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._special import digamma, log1mexp
from .data import GroupedDataset
from .likelihood import ParamVector, log_likelihood
from .links import LinkFamily, inverse_link, make_link, power_positive
from .mle import FitOptions, initial_guess

__all__ = [
    "PriorSpec",
    "PosteriorChain",
    "McmcOptions",
    "log_prior",
    "log_posterior",
    "run_chain",
    "run_mcmc",
    "empirical_bayes",
    "EBResult",
    "dic",
    "posterior_summary",
    "fit_bayes",
    "BayesFit",
]


@dataclass(frozen=True)
class PriorSpec:
    """Either the hierarchical (gamma x normal) prior or the improper
    shape-decaying prior 1/shape**c restricted to shape > 1."""

    kind: str
    m_gamma: float | None = None
    v_gamma: float | None = None
    m_beta: np.ndarray | None = None
    v_beta: float | None = None
    c: float | None = None

    def __post_init__(self):
        if self.kind == "hierarchical":
            if self.m_gamma is None or self.m_gamma <= 0:
                raise ValueError("hierarchical prior needs m_gamma > 0")
            if self.v_gamma is None or self.v_gamma <= 0:
                raise ValueError("hierarchical prior needs v_gamma > 0")
            if self.v_beta is None or self.v_beta <= 0:
                raise ValueError("hierarchical prior needs v_beta > 0")
            if self.m_beta is None:
                raise ValueError("hierarchical prior needs the m_beta vector")
            object.__setattr__(self, "m_beta", np.asarray(self.m_beta, dtype=float))
        elif self.kind == "noninformative":
            if self.c is None or not self.c > 1:
                raise ValueError("noninformative prior needs c > 1 for a proper posterior")
        else:
            raise ValueError(f"unknown prior kind {self.kind!r}")

    @classmethod
    def hierarchical(cls, m_gamma, v_gamma, m_beta, v_beta) -> "PriorSpec":
        return cls("hierarchical", m_gamma=m_gamma, v_gamma=v_gamma,
                   m_beta=np.asarray(m_beta, dtype=float), v_beta=v_beta)

    @classmethod
    def noninformative(cls, c: float = 2.0) -> "PriorSpec":
        return cls("noninformative", c=c)


def _gamma_logpdf(x: float, mean: float, var: float) -> float:
    """Gamma density parameterized by mean and variance: shape = mean^2/var,
    scale = var/mean."""
    if x <= 0:
        return -math.inf
    shape = mean * mean / var
    scale = var / mean
    return (shape - 1.0) * math.log(x) - x / scale - shape * math.log(scale) - math.lgamma(shape)


def _log_prior_raw(gamma: float | None, beta: np.ndarray, prior: PriorSpec) -> float:
    if prior.kind == "noninformative":
        if gamma is None:
            return 0.0
        if gamma <= 1.0:
            return -math.inf
        return -prior.c * math.log(gamma)
    total = 0.0
    if gamma is not None:
        total += _gamma_logpdf(gamma, prior.m_gamma, prior.v_gamma)
    m = prior.m_beta
    if m.size != beta.size:
        raise ValueError(f"m_beta has {m.size} entries for {beta.size} coefficients")
    resid = beta - m
    total += -0.5 * float(resid @ resid) / prior.v_beta
    total += -0.5 * beta.size * math.log(2.0 * math.pi * prior.v_beta)
    return total


def log_prior(params: ParamVector, prior: PriorSpec) -> float:
    """Log prior density; -inf outside the support."""
    return _log_prior_raw(params.gamma, params.beta, prior)


def log_posterior(params: ParamVector, data: GroupedDataset, link: LinkFamily,
                  prior: PriorSpec) -> float:
    lp = log_prior(params, prior)
    if lp == -math.inf:
        return -math.inf
    return log_likelihood(params, data, link) + lp


@dataclass(frozen=True)
class McmcOptions:
    seed: int
    n_burn: int = 10_000
    n_keep: int = 50_000
    thin: int = 5
    init: ParamVector | None = None
    target_accept: float = 0.40
    initial_scale: float = 0.25

    def __post_init__(self):
        if self.n_keep < 1 or self.thin < 1 or self.n_burn < 0:
            raise ValueError("need n_keep >= 1, thin >= 1, n_burn >= 0")


@dataclass(frozen=True)
class PosteriorChain:
    """Kept draws, one row per draw, columns in (shape, coefficients) order."""

    draws: np.ndarray
    seed: int
    burn_in: int
    thin: int
    acceptance_rate: float
    proposal_scales: np.ndarray
    param_names: tuple

    @property
    def n_draws(self) -> int:
        return self.draws.shape[0]

    @property
    def dim(self) -> int:
        return self.draws.shape[1]

    def to_csv(self, path) -> None:
        """One row per kept draw, header = parameter names."""
        header = ",".join(self.param_names)
        np.savetxt(path, self.draws, delimiter=",", header=header, comments="")


def run_chain(log_target, z0, options: McmcOptions):
    """Adaptive component-wise random-walk Metropolis on an arbitrary
    log-density.  Returns (kept draws of z, acceptance rate, final scales).

    Adaptation runs only during burn-in; afterwards the proposal scales are
    frozen so the kept portion is a genuine Metropolis chain.
    """
    z = np.asarray(z0, dtype=float).copy()
    dim = z.size
    lp = float(log_target(z))
    if not np.isfinite(lp):
        raise ValueError(
            "log target is not finite at the starting point; "
            "start the chain from the MLE initializer or another feasible point"
        )
    rng = np.random.default_rng(options.seed)
    log_scales = np.full(dim, math.log(options.initial_scale))
    kept = np.empty((options.n_keep, dim))
    n_kept = 0
    accepted = 0
    proposed = 0
    total_sweeps = options.n_burn + options.n_keep * options.thin
    for sweep in range(total_sweeps):
        burning = sweep < options.n_burn
        for j in range(dim):
            step = math.exp(log_scales[j]) * rng.standard_normal()
            z_prop = z.copy()
            z_prop[j] += step
            lp_prop = float(log_target(z_prop))
            delta = lp_prop - lp
            alpha = math.exp(min(delta, 0.0))
            if math.log(rng.random()) < delta:
                z = z_prop
                lp = lp_prop
                if not burning:
                    accepted += 1
            if not burning:
                proposed += 1
            else:
                gain = 1.0 / (sweep + 1.0) ** 0.6
                log_scales[j] += gain * (alpha - options.target_accept)
        if not burning and (sweep - options.n_burn + 1) % options.thin == 0:
            kept[n_kept] = z
            n_kept += 1
    rate = accepted / proposed if proposed else 0.0
    return kept, rate, np.exp(log_scales)


def _make_z_target(data, link, prior):
    """Target over the sampling coordinates z; weibull kinds put log shape
    first and need the +z[0] Jacobian.

    Specialized closures skip per-evaluation container construction; the
    Weibull fast path inlines the stable likelihood for the all-positive
    predictor region and falls back to the general form at the boundary.
    """
    X = data.X
    s = data.successes.astype(float)
    f = data.failures.astype(float)
    if link.kind == "reflected_weibull":
        s, f = f, s
    s_pos = s > 0
    f_pos = f > 0
    s_nz = s[s_pos]
    f_nz = f[f_pos]

    if link.is_weibull_kind:

        def target(z):
            gamma = math.exp(z[0])
            beta = z[1:]
            lp = _log_prior_raw(gamma, beta, prior)
            if lp == -math.inf:
                return -math.inf
            eta = X @ beta
            if eta.size == 0:
                return lp + z[0]
            if eta.min() <= 0.0:
                if np.any(s_pos & (eta <= 0.0)):
                    return -math.inf
                # rare boundary mix: fall back to the general evaluation
                ll = log_likelihood(ParamVector(gamma, beta), data, link)
            else:
                u = power_positive(eta, gamma)
                ll = float((s_nz * log1mexp(u[s_pos])).sum()
                           - (f_nz * u[f_pos]).sum())
            return ll + lp + z[0]

        return target

    def target(z):
        lp = _log_prior_raw(None, z, prior)
        if lp == -math.inf:
            return -math.inf
        return log_likelihood(ParamVector(None, z), data, link) + lp

    return target


def _default_init(data, link, prior) -> ParamVector:
    if data.n_rows > 0:
        return initial_guess(data, link, FitOptions(compute_se=False))
    if prior.kind == "hierarchical":
        return ParamVector(prior.m_gamma if link.is_weibull_kind else None,
                           prior.m_beta.copy())
    return ParamVector(2.0 if link.is_weibull_kind else None,
                       np.zeros(max(data.n_covariates, 1)))


def run_mcmc(data: GroupedDataset, link: LinkFamily, prior: PriorSpec,
             options: McmcOptions) -> PosteriorChain:
    """Posterior sample of (shape, coefficients); deterministic per seed."""
    init = options.init or _default_init(data, link, prior)
    if link.is_weibull_kind:
        if init.gamma is None:
            raise ValueError("initial point needs a concrete shape")
        z0 = np.concatenate([[math.log(init.gamma)], init.beta])
        names = ("gamma",) + tuple(
            data.covariate_names[: init.beta.size]
            or tuple(f"beta{j}" for j in range(init.beta.size))
        )
    else:
        z0 = init.beta.copy()
        names = tuple(data.covariate_names[: init.beta.size]) or tuple(
            f"beta{j}" for j in range(init.beta.size)
        )
    target = _make_z_target(data, link, prior)
    kept_z, rate, scales = run_chain(target, z0, options)
    draws = kept_z.copy()
    if link.is_weibull_kind:
        draws[:, 0] = np.exp(draws[:, 0])
    return PosteriorChain(
        draws=draws,
        seed=options.seed,
        burn_in=options.n_burn,
        thin=options.thin,
        acceptance_rate=rate,
        proposal_scales=scales,
        param_names=names,
    )


def posterior_summary(chain: PosteriorChain) -> dict:
    """Mean, population sd (divisor n), and 2.5/50/97.5% quantiles per
    parameter, keyed by parameter name."""
    if chain.n_draws == 0:
        raise ValueError("empty chain")
    q = np.percentile(chain.draws, [2.5, 50.0, 97.5], axis=0)
    out = {}
    for j, name in enumerate(chain.param_names):
        col = chain.draws[:, j]
        out[name] = {
            "mean": float(col.mean()),
            "sd": float(col.std(ddof=0)),
            "q2.5": float(q[0, j]),
            "q50": float(q[1, j]),
            "q97.5": float(q[2, j]),
        }
    return out


def _chain_params(chain: PosteriorChain, link: LinkFamily, row) -> ParamVector:
    if link.is_weibull_kind:
        return ParamVector(float(row[0]), np.asarray(row[1:], dtype=float))
    return ParamVector(None, np.asarray(row, dtype=float))


def dic(chain: PosteriorChain, data: GroupedDataset, link: LinkFamily):
    """(DIC, p_D): posterior-mean deviance plus effective parameter count.

    D = -2 log-likelihood; p_D = mean(D) - D(posterior means).  The
    posterior mean must itself have a finite likelihood.
    """
    if chain.n_draws == 0:
        raise ValueError("empty chain")
    deviances = np.empty(chain.n_draws)
    for i in range(chain.n_draws):
        deviances[i] = -2.0 * log_likelihood(
            _chain_params(chain, link, chain.draws[i]), data, link
        )
    mean_dev = float(deviances.mean())
    at_mean = _chain_params(chain, link, chain.draws.mean(axis=0))
    plug_in = -2.0 * log_likelihood(at_mean, data, link)
    if not np.isfinite(plug_in):
        raise ValueError(
            "posterior-mean parameters have zero likelihood; the chain mean "
            "sits outside the feasible region, so DIC is undefined here"
        )
    p_d = mean_dev - plug_in
    return mean_dev + p_d, p_d


@dataclass(frozen=True)
class EBResult:
    m_gamma: float
    m_beta: np.ndarray
    converged: bool
    n_iterations: int
    history: tuple = field(default=(), repr=False)


def _gamma_mean_mstep(gamma_draws: np.ndarray, v_gamma: float) -> float:
    """Maximize the expected log gamma-density over the prior mean, with the
    variance held fixed.  Solves dQ/dm = 0 by bisection."""
    e_gamma = float(gamma_draws.mean())
    e_log = float(np.log(gamma_draws).mean())
    v = v_gamma

    def slope(m):
        return (2.0 * m / v) * (e_log + math.log(m / v) - digamma(m * m / v)) \
            + (m - e_gamma) / v

    lo = 1e-6
    hi = max(2.0 * e_gamma, 1.0)
    while slope(hi) > 0:
        hi *= 2.0
        if hi > 1e8:
            return hi
    if slope(lo) < 0:
        return lo
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if slope(mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def empirical_bayes(data: GroupedDataset, link: LinkFamily,
                    v_gamma: float, v_beta: float,
                    seed: int = 0,
                    start: ParamVector | None = None,
                    n_burn: int = 2_000, n_keep: int = 8_000,
                    tol: float = 1e-2, max_iterations: int = 30) -> EBResult:
    """Monte-Carlo EM for the hierarchical prior means.

    Each iteration draws a fresh chain under the current means (E-step) and
    re-solves for the means (M-step).  Stops when both hyper-means move
    less than ``tol`` or after ``max_iterations``.  With no data the prior
    means are already a fixed point and come straight back.
    """
    if start is None:
        if data.n_rows == 0:
            raise ValueError("empirical Bayes on an empty dataset needs explicit start means")
        start = initial_guess(data, link, FitOptions(compute_se=False))
    m_gamma = float(start.gamma) if start.gamma is not None else 1.0
    m_beta = start.beta.copy()
    if data.n_rows == 0:
        return EBResult(m_gamma, m_beta, True, 0, ((m_gamma, m_beta.copy()),))

    history = [(m_gamma, m_beta.copy())]
    converged = False
    iteration = 0
    for iteration in range(1, max_iterations + 1):
        prior = PriorSpec.hierarchical(m_gamma, v_gamma, m_beta, v_beta)
        chain = run_mcmc(
            data, link, prior,
            McmcOptions(seed=seed + iteration, n_burn=n_burn, n_keep=n_keep, thin=1,
                        init=ParamVector(m_gamma if link.is_weibull_kind else None,
                                         m_beta.copy())),
        )
        new_beta = chain.draws[:, 1:].mean(axis=0) if link.is_weibull_kind \
            else chain.draws.mean(axis=0)
        if link.is_weibull_kind:
            new_gamma = _gamma_mean_mstep(chain.draws[:, 0], v_gamma)
        else:
            new_gamma = m_gamma
        move = max(abs(new_gamma - m_gamma), float(np.max(np.abs(new_beta - m_beta))))
        m_gamma, m_beta = new_gamma, new_beta
        history.append((m_gamma, m_beta.copy()))
        if move < tol:
            converged = True
            break
    return EBResult(m_gamma, m_beta, converged, iteration, tuple(history))


@dataclass(frozen=True)
class BayesFit:
    """Chain plus plug-in summaries at the posterior mean, shaped so it can
    sit in comparison tables next to MLE fits."""

    link: LinkFamily
    params: ParamVector
    chain: PosteriorChain
    prior: PriorSpec
    eb: EBResult | None
    dic: float
    p_d: float
    summary: dict
    fitted: np.ndarray
    log_lik: float
    n_obs: int
    converged: bool

    @property
    def n_params(self) -> int:
        return self.chain.dim

    def comparison_row(self, name: str, data: GroupedDataset):
        from .model_selection import ComparisonRow, ks_mae

        ks, mae = ks_mae(data, self.fitted)
        return ComparisonRow(
            model_name=name,
            log_lik=self.log_lik,
            aic=None,
            bic=None,
            dic=self.dic,
            ks=ks,
            mae=mae,
            n_params=self.n_params,
            n_obs=self.n_obs,
        )


def fit_bayes(data: GroupedDataset, link: LinkFamily,
              prior: PriorSpec | str | None = None, *,
              seed: int = 0, n_burn: int = 10_000, n_keep: int = 50_000,
              thin: int = 5, c: float = 2.0,
              v_gamma: float = 100.0, v_beta: float = 25.0,
              use_empirical_bayes: bool = True,
              eb_kwargs: dict | None = None) -> BayesFit:
    """One-call Bayesian fit.

    With no explicit prior this reproduces the reference pipeline: a
    hierarchical prior with weak variances (v_gamma=100, v_beta=25) whose
    means come from Monte-Carlo EM on the same data.
    """
    eb = None
    if isinstance(prior, str):
        if prior == "noninformative":
            prior = PriorSpec.noninformative(c)
        elif prior == "hierarchical":
            prior = None
        else:
            raise ValueError(f"unknown prior name {prior!r}")
    if prior is None:
        if use_empirical_bayes:
            eb = empirical_bayes(data, link, v_gamma, v_beta, seed=seed,
                                 **(eb_kwargs or {}))
            m_gamma, m_beta = eb.m_gamma, eb.m_beta
        else:
            start = _default_init(data, link,
                                  PriorSpec.noninformative(2.0))
            m_gamma = start.gamma if start.gamma is not None else 1.0
            m_beta = start.beta
        prior = PriorSpec.hierarchical(m_gamma, v_gamma, m_beta, v_beta)

    chain = run_mcmc(data, link, prior,
                     McmcOptions(seed=seed, n_burn=n_burn, n_keep=n_keep, thin=thin))
    mean_row = chain.draws.mean(axis=0)
    params = _chain_params(chain, link, mean_row)
    fitted_link = make_link(link.kind, params.gamma) if link.is_weibull_kind else link
    fitted = np.atleast_1d(inverse_link(fitted_link, data.X @ params.beta))
    dic_value, p_d = dic(chain, data, link)
    plug_in_ll = log_likelihood(params, data, link)
    return BayesFit(
        link=fitted_link,
        params=params,
        chain=chain,
        prior=prior,
        eb=eb,
        dic=dic_value,
        p_d=p_d,
        summary=posterior_summary(chain),
        fitted=fitted,
        log_lik=plug_in_ll,
        n_obs=data.n_trials,
        converged=bool(0.0 < chain.acceptance_rate < 1.0),
    )
