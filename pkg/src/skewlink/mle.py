"""Maximum-likelihood fitting for every link kind.

The Weibull-kind fits search over (log shape, coefficients) so positivity
of the shape never needs explicit handling; fixed-shape links search over
the coefficients alone.  Starting values come from a probit fit: its slope
coefficients carry over and the intercept is shifted so the smallest
starting linear predictor is exactly 0.001, which keeps the Weibull
threshold indicator away from every observation.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace

import numpy as np

from ._special import norm_ppf
from .data import GroupedDataset
from .likelihood import ParamVector, hessian, linear_predictor, log_likelihood
from .links import LinkFamily, inverse_link, make_link
from .optimize import SimplexOptions, minimize_simplex

__all__ = [
    "FitOptions",
    "FitResult",
    "fit_probit",
    "initial_guess",
    "fit_mle",
    "standard_errors",
]

_PROBIT_SHAPE = 3.60235  # Weibull shape at which the link mimics probit
_SEPARATION_BOUND = 1e3
# free-shape fits scan these starting shapes before the main descent; the
# profile likelihood in the shape is routinely multimodal (an interior basin
# below 1 plus a flat ridge toward the cloglog/loglog limit)
_SHAPE_START_GRID = (0.15, 0.6, 1.5, _PROBIT_SHAPE, 8.0)


@dataclass(frozen=True)
class FitOptions:
    tol_f: float = 1e-10
    tol_x: float = 1e-8
    max_evals: int = 50_000
    n_restarts: int = 5
    restart_scale: float = 0.10
    f_progress_tol: float = 1e-6
    seed: int = 0
    compute_se: bool = True

    def simplex(self) -> SimplexOptions:
        return SimplexOptions(
            tol_f=self.tol_f,
            tol_x=self.tol_x,
            max_evals=self.max_evals,
            n_restarts=self.n_restarts,
            restart_scale=self.restart_scale,
            f_progress_tol=self.f_progress_tol,
            seed=self.seed,
        )


@dataclass(frozen=True)
class FitResult:
    link: LinkFamily
    params: ParamVector
    std_errors: np.ndarray | None
    log_lik: float
    n_obs: int
    n_params: int
    converged: bool
    n_evals: int
    fitted: np.ndarray
    se_note: str = ""

    @property
    def shape_estimated(self) -> bool:
        return self.params.gamma is not None and self.n_params > self.params.beta.size

    def param_names(self, data_names=None) -> tuple:
        """Names in estimation order, shape first when it was estimated."""
        betas = tuple(data_names) if data_names else tuple(
            "intercept" if j == 0 else f"beta{j}" for j in range(self.params.beta.size)
        )
        if self.shape_estimated:
            return ("gamma",) + betas
        return betas

    def comparison_row(self, name: str, data: GroupedDataset):
        from .model_selection import ComparisonRow, aic, bic, ks_mae

        ks, mae = ks_mae(data, self.fitted)
        return ComparisonRow(
            model_name=name,
            log_lik=self.log_lik,
            aic=aic(self.log_lik, self.n_params),
            bic=bic(self.log_lik, self.n_params, self.n_obs),
            dic=None,
            ks=ks,
            mae=mae,
            n_params=self.n_params,
            n_obs=self.n_obs,
        )


def _require_full_rank(data: GroupedDataset) -> None:
    rank = np.linalg.matrix_rank(data.X)
    if rank < data.X.shape[1]:
        raise ValueError(
            f"design matrix is rank deficient (rank {rank} < {data.X.shape[1]}); "
            "drop or combine collinear covariates"
        )


def _finish(data, link, params, result, n_params, options) -> FitResult:
    fitted = np.atleast_1d(inverse_link(link, linear_predictor(data, params.beta)))
    converged = result.converged and bool(np.max(np.abs(params.beta)) < _SEPARATION_BOUND)
    fit = FitResult(
        link=link,
        params=params,
        std_errors=None,
        log_lik=-result.fun,
        n_obs=data.n_trials,
        n_params=n_params,
        converged=converged,
        n_evals=result.n_evals,
        fitted=fitted,
    )
    if options.compute_se and converged:
        se, note = _standard_errors_impl(fit, data)
        fit = replace(fit, std_errors=se, se_note=note)
    return fit


def fit_probit(data: GroupedDataset, options: FitOptions = FitOptions()) -> FitResult:
    """Probit MLE; also the source of starting values for the other links."""
    _require_full_rank(data)
    link = make_link("probit")
    rate = min(max(data.successes.sum() / data.n_trials, 1e-6), 1 - 1e-6)
    beta0 = np.zeros(data.n_covariates)
    beta0[0] = norm_ppf(rate)

    def objective(beta):
        return -log_likelihood(ParamVector(None, beta), data, link)

    res = minimize_simplex(objective, beta0, options.simplex())
    params = ParamVector(None, res.x)
    return _finish(data, link, params, res, params.beta.size, options)


def initial_guess(data: GroupedDataset, link: LinkFamily = LinkFamily("weibull"),
                  options: FitOptions = FitOptions(),
                  probit_fit: FitResult | None = None) -> ParamVector:
    """Probit-based start for a Weibull-kind fit.

    Slope coefficients are taken from the probit fit (negated for the
    reflected kind, whose inverse link decreases); the intercept is chosen
    so the smallest starting predictor equals 0.001 exactly, guaranteeing
    feasibility under the threshold indicator.  The shape starts at the
    probit-mimicking value 3.60235.
    """
    if probit_fit is None:
        probit_fit = fit_probit(data, replace(options, compute_se=False))
    slopes = probit_fit.params.beta[1:]
    partial = data.X[:, 1:] @ slopes if slopes.size else np.zeros(data.n_rows)
    if link.kind == "reflected_weibull":
        slopes = -slopes
        partial = -partial
    beta0 = -float(partial.min()) + 0.001 if partial.size else 0.001
    beta = np.concatenate([[beta0], slopes])
    return ParamVector(_PROBIT_SHAPE, beta)


def fit_mle(data: GroupedDataset, link: LinkFamily,
            options: FitOptions = FitOptions()) -> FitResult:
    """MLE for any link kind.

    Weibull kinds with ``link.gamma is None`` estimate the shape jointly
    with the coefficients; a concrete ``link.gamma`` is held fixed.  The
    objective maps -inf log-likelihoods to +inf so the simplex simply
    backs away from infeasible corners.
    """
    _require_full_rank(data)
    probit = fit_probit(data, replace(options, compute_se=False))
    if link.kind == "probit":
        if not options.compute_se:
            return probit
        return _refit_probit_with_se(data, probit, options)

    if link.is_weibull_kind:
        start = initial_guess(data, link, options, probit_fit=probit)
        if link.has_free_shape:

            def objective(z):
                return -log_likelihood(ParamVector(math.exp(z[0]), z[1:]), data, link)

            res = _multistart_free_shape(objective, data, link, start, options)
            gamma_hat = math.exp(res.x[0])
            params = ParamVector(gamma_hat, res.x[1:])
            fitted_link = make_link(link.kind, gamma_hat)
            return _finish(data, fitted_link, params, res, params.beta.size + 1, options)

        def objective(beta):
            return -log_likelihood(ParamVector(link.gamma, beta), data, link)

        res = minimize_simplex(objective, start.beta, options.simplex())
        params = ParamVector(link.gamma, res.x)
        return _finish(data, link, params, res, params.beta.size, options)

    # remaining fixed links start from the probit coefficients
    def objective(beta):
        return -log_likelihood(ParamVector(None, beta), data, link)

    res = minimize_simplex(objective, probit.params.beta, options.simplex())
    params = ParamVector(None, res.x)
    return _finish(data, link, params, res, params.beta.size, options)


def _multistart_free_shape(objective, data, link, probit_start, options):
    """Scan a grid of starting shapes, then run the full descent from the
    best scout.  Each shape gets two coefficient starts: the probit-based
    slopes and a flat intercept matching the pooled success rate; both keep
    every starting predictor strictly positive."""
    from .links import forward_link

    rate = min(max(data.successes.sum() / data.n_trials, 1e-3), 1.0 - 1e-3)
    starts = []
    for g0 in _SHAPE_START_GRID:
        starts.append(np.concatenate([[math.log(g0)], probit_start.beta]))
        flat0 = float(forward_link(make_link(link.kind, g0), rate))
        flat = np.concatenate([[flat0], np.zeros(data.n_covariates - 1)])
        starts.append(np.concatenate([[math.log(g0)], flat]))

    scout_budget = max(options.max_evals // (3 * len(starts)), 20 * (data.n_covariates + 2))
    scout_opts = replace(options.simplex(), max_evals=scout_budget, n_restarts=0)
    scouted = []
    used = 0
    for z0 in starts:
        r = minimize_simplex(objective, z0, scout_opts)
        used += r.n_evals
        scouted.append(r)
    best = min(range(len(scouted)), key=lambda i: (scouted[i].fun, i))

    main_budget = max(options.max_evals - used, 10 * (data.n_covariates + 2))
    main_opts = replace(options.simplex(), max_evals=main_budget)
    res = minimize_simplex(objective, scouted[best].x, main_opts)
    res.n_evals += used
    return res


def _refit_probit_with_se(data, probit, options):
    if options.compute_se and probit.std_errors is None and probit.converged:
        se, note = _standard_errors_impl(probit, data)
        return replace(probit, std_errors=se, se_note=note)
    return probit


def _numeric_hessian(f, x, rel_step=1e-5):
    n = x.size
    h = rel_step * np.maximum(np.abs(x), 1.0)
    H = np.empty((n, n))
    for i in range(n):
        for j in range(i, n):
            ei = np.zeros(n)
            ej = np.zeros(n)
            ei[i] = h[i]
            ej[j] = h[j]
            v = (
                f(x + ei + ej) - f(x + ei - ej) - f(x - ei + ej) + f(x - ei - ej)
            ) / (4.0 * h[i] * h[j])
            H[i, j] = v
            H[j, i] = v
    return H


def se_from_neg_hessian(neg_H: np.ndarray):
    """Standard errors from an observed-information matrix.

    Cholesky-based inversion; raises ``np.linalg.LinAlgError`` when the
    matrix is not positive definite.  Returns (se, condition_number).
    """
    neg_H = np.asarray(neg_H, dtype=float)
    L = np.linalg.cholesky(neg_H)
    inv = np.linalg.inv(L.T) @ np.linalg.inv(L)
    cond = float(np.linalg.cond(neg_H))
    return np.sqrt(np.diag(inv)), cond


def _standard_errors_impl(fit: FitResult, data: GroupedDataset):
    link = fit.link
    if link.is_weibull_kind:
        eta = linear_predictor(data, fit.params.beta)
        if np.any(eta <= 0):
            return None, "analytic curvature undefined: some linear predictors are nonpositive"
        H = hessian(fit.params, data, link)
        if not fit.shape_estimated:
            H = H[1:, 1:]
    else:
        def ll(beta):
            return log_likelihood(ParamVector(None, beta), data, link)

        H = _numeric_hessian(ll, fit.params.beta)
    try:
        se, cond = se_from_neg_hessian(-H)
    except np.linalg.LinAlgError:
        return None, "observed information is not positive definite (flat ridge or boundary)"
    note = f"observed-information inversion, condition number {cond:.3g}"
    return se, note


def standard_errors(fit: FitResult, data: GroupedDataset) -> np.ndarray | None:
    """Observed-information standard errors at the fitted parameters.

    Returns None (with a warning carrying the diagnostic) when the negated
    Hessian cannot be inverted as a positive-definite matrix, which is the
    expected behaviour on the flat shape ridge.
    """
    se, note = _standard_errors_impl(fit, data)
    if se is None:
        warnings.warn(f"standard errors unavailable: {note}", stacklevel=2)
    return se
