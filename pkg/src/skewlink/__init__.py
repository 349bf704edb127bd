"""Binomial and multinomial regression under skewed Weibull-type links.

The Weibull cdf used as an inverse link gives a one-parameter family of
response curves whose skewness the shape parameter controls; logit,
probit, cloglog, and loglog behaviour all live inside or on the boundary
of the family.  The package fits grouped binomial data by maximum
likelihood or MCMC, extends to multi-category responses through the
sequential-binary decomposition, and ships the classic insecticide and
snail-irradiation reference datasets with a CLI that regenerates the
published comparison tables.
"""

from .bayes import (
    BayesFit,
    EBResult,
    McmcOptions,
    PosteriorChain,
    PriorSpec,
    dic,
    empirical_bayes,
    fit_bayes,
    log_posterior,
    log_prior,
    posterior_summary,
    run_chain,
    run_mcmc,
)
from .data import GroupedDataset, MultinomialDataset
from .datasets import load_binomial, load_finney1947, load_grazeffe2008, load_multinomial
from .estimators import (
    BayesianBinomialRegression,
    BinomialRegression,
    MultinomialRegression,
)
from .io import parse_binomial_csv, parse_multinomial_csv
from .likelihood import ParamVector, gradient, hessian, linear_predictor, log_likelihood
from .links import (
    LINK_KINDS,
    LOGIT_APPROX,
    PROBIT_APPROX,
    LinkFamily,
    SkewnessReport,
    ag_skewness,
    cloglog_limit_gap,
    forward_link,
    inverse_link,
    link_density,
    make_link,
    moment_skewness,
    shifted_weibull_cdf,
    sigmoid,
    skewness_report,
)
from .mle import (
    FitOptions,
    FitResult,
    fit_mle,
    fit_probit,
    initial_guess,
    standard_errors,
)
from .model_selection import ComparisonRow, aic, bic, compare, ks_mae
from .multinomial import (
    MultinomialFit,
    category_prob_matrix,
    category_probs,
    category_probs_from_conditionals,
    conditionals_from_category_probs,
    decompose,
    fit_multinomial,
    multinomial_metrics,
)
from .optimize import SimplexOptions, SimplexResult, minimize_simplex

__version__ = "0.1.0"

__all__ = [
    "BayesFit",
    "BayesianBinomialRegression",
    "BinomialRegression",
    "ComparisonRow",
    "EBResult",
    "FitOptions",
    "FitResult",
    "GroupedDataset",
    "LINK_KINDS",
    "LOGIT_APPROX",
    "LinkFamily",
    "McmcOptions",
    "MultinomialDataset",
    "MultinomialFit",
    "MultinomialRegression",
    "ParamVector",
    "PosteriorChain",
    "PriorSpec",
    "PROBIT_APPROX",
    "SimplexOptions",
    "SimplexResult",
    "SkewnessReport",
    "ag_skewness",
    "aic",
    "bic",
    "category_prob_matrix",
    "category_probs",
    "category_probs_from_conditionals",
    "cloglog_limit_gap",
    "compare",
    "conditionals_from_category_probs",
    "decompose",
    "dic",
    "empirical_bayes",
    "fit_bayes",
    "fit_mle",
    "fit_multinomial",
    "fit_probit",
    "forward_link",
    "gradient",
    "hessian",
    "initial_guess",
    "inverse_link",
    "ks_mae",
    "linear_predictor",
    "link_density",
    "load_binomial",
    "load_finney1947",
    "load_grazeffe2008",
    "load_multinomial",
    "log_likelihood",
    "log_posterior",
    "log_prior",
    "make_link",
    "minimize_simplex",
    "moment_skewness",
    "multinomial_metrics",
    "parse_binomial_csv",
    "parse_multinomial_csv",
    "posterior_summary",
    "run_chain",
    "run_mcmc",
    "shifted_weibull_cdf",
    "sigmoid",
    "skewness_report",
    "standard_errors",
]
