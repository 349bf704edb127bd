"""Command-line interface.

Subcommands: ``fit`` (MLE, one link), ``bayes`` (posterior sampling),
``multinomial`` (sequential-binary fit), ``compare`` (several links on one
dataset), ``reproduce`` (regenerate the reference tables for a builtin
dataset).  Exit codes: 0 success, 1 configuration or load error, 2 a fit
failed to converge.

JSON reports are deterministic for a given configuration and seed: they
carry estimates, standard errors, fit criteria, settings, and a content
hash of the dataset, and no timestamps.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from .bayes import fit_bayes
from .data import GroupedDataset, MultinomialDataset
from .datasets import BINOMIAL_BUILTINS, MULTINOMIAL_BUILTINS, load_binomial, load_multinomial
from .io import parse_binomial_csv, parse_multinomial_csv
from .links import LINK_KINDS, make_link
from .mle import FitOptions, fit_mle
from .model_selection import compare, ks_mae
from .multinomial import category_prob_matrix, fit_multinomial, multinomial_metrics

__all__ = ["RunConfig", "run", "main"]

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NOT_CONVERGED = 2


@dataclass
class RunConfig:
    command: str
    data: str
    link: str = "weibull"
    links: tuple = ()
    gamma_fixed: float | None = None
    covariates: tuple = ()
    success_col: str = "successes"
    trial_col: str = "trials"
    count_cols: tuple = ()
    method: str = "mle"
    prior: str = "hierarchical"
    c: float = 2.0
    v_gamma: float = 100.0
    v_beta: float = 25.0
    eb: bool = True
    seed: int | None = None
    burn: int = 10_000
    keep: int = 50_000
    thin: int = 5
    max_evals: int = 50_000
    dose_scale: float = 1.0
    out: str | None = None
    chain_out: str | None = None
    format: str = "text"


class ConfigError(Exception):
    pass


def _load_grouped(config: RunConfig) -> tuple[GroupedDataset, str]:
    if config.data in BINOMIAL_BUILTINS:
        return load_binomial(config.data), config.data
    if config.data in MULTINOMIAL_BUILTINS:
        raise ConfigError(f"{config.data!r} is a multinomial dataset; use the multinomial command")
    if not config.covariates:
        raise ConfigError("CSV input needs --covariates naming the covariate columns")
    try:
        data = parse_binomial_csv(config.data, config.covariates,
                                  config.success_col, config.trial_col)
    except (OSError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
    return data, config.data


def _load_multinomial(config: RunConfig) -> tuple[MultinomialDataset, str]:
    if config.data in MULTINOMIAL_BUILTINS:
        return load_multinomial(config.data, dose_scale=config.dose_scale), config.data
    if not config.covariates or not config.count_cols:
        raise ConfigError("CSV input needs --covariates and --count-cols")
    try:
        data = parse_multinomial_csv(config.data, config.covariates, config.count_cols)
    except (OSError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
    return data, config.data


def _make_cli_link(config: RunConfig):
    if config.link not in LINK_KINDS:
        raise ConfigError(f"unknown link {config.link!r}; choose from {LINK_KINDS}")
    try:
        return make_link(config.link, config.gamma_fixed)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _fit_options(config: RunConfig) -> FitOptions:
    return FitOptions(seed=config.seed or 0, max_evals=config.max_evals)


def _emit(report: dict, text: str, config: RunConfig) -> None:
    print(text)
    if config.out:
        if config.format == "json":
            payload = json.dumps(report, sort_keys=True, indent=2) + "\n"
        elif config.format == "csv":
            payload = _report_csv(report)
        else:
            payload = text + "\n"
        with open(config.out, "w", encoding="utf-8") as fh:
            fh.write(payload)


def _report_csv(report: dict) -> str:
    lines = []
    if "comparison" in report:
        lines.append("model,log_lik,aic,bic,dic,ks,mae,n_params,n_obs")
        for row in report["comparison"]:
            lines.append(",".join(
                "" if row[k] is None else f"{row[k]}"
                for k in ("model", "log_lik", "aic", "bic", "dic", "ks", "mae", "n_params", "n_obs")
            ))
    elif "estimates" in report:
        lines.append("parameter,estimate,std_error")
        se = report.get("std_errors")
        for i, (name, value) in enumerate(report["estimates"].items()):
            s = "" if se is None else f"{se[i]}"
            lines.append(f"{name},{value},{s}")
    return "\n".join(lines) + "\n"


def _fmt_table(header, rows) -> str:
    cols = [len(h) for h in header]
    srows = []
    for row in rows:
        srow = [cell if isinstance(cell, str) else _num(cell) for cell in row]
        cols = [max(c, len(s)) for c, s in zip(cols, srow)]
        srows.append(srow)
    fmt = "  ".join(f"{{:>{c}}}" for c in cols)
    out = [fmt.format(*header)]
    out += [fmt.format(*r) for r in srows]
    return "\n".join(out)


def _num(v) -> str:
    if v is None:
        return "--"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return f"{v:.4f}"


def _dataset_block(data, name: str) -> dict:
    block = {"name": name, "fingerprint": data.fingerprint()}
    if isinstance(data, GroupedDataset):
        block.update(n_rows=data.n_rows, n_obs=data.n_trials)
    else:
        block.update(n_rows=data.n_rows, n_obs=data.n_total,
                     n_categories=data.n_categories)
    return block


def _estimates_block(fit, data) -> dict:
    names = fit.param_names(data.covariate_names)
    values = fit.params.packed() if fit.shape_estimated else fit.params.beta
    return {name: float(v) for name, v in zip(names, values)}


def _fit_report(fit, data, name, config) -> dict:
    from .model_selection import aic, bic

    ks, mae = ks_mae(data, fit.fitted)
    return {
        "command": config.command,
        "dataset": _dataset_block(data, name),
        "link": {"kind": fit.link.kind, "gamma": fit.link.gamma},
        "estimates": _estimates_block(fit, data),
        "std_errors": None if fit.std_errors is None else [float(v) for v in fit.std_errors],
        "se_note": fit.se_note,
        "log_lik": fit.log_lik,
        "n_params": fit.n_params,
        "n_obs": fit.n_obs,
        "aic": aic(fit.log_lik, fit.n_params),
        "bic": bic(fit.log_lik, fit.n_params, fit.n_obs),
        "ks": ks,
        "mae": mae,
        "fitted": [float(v) for v in fit.fitted],
        "converged": fit.converged,
        "n_evals": fit.n_evals,
        "settings": {"seed": config.seed or 0, "max_evals": config.max_evals,
                     "gamma_fixed": config.gamma_fixed},
    }


def _cmd_fit(config: RunConfig) -> int:
    data, name = _load_grouped(config)
    link = _make_cli_link(config)
    fit = fit_mle(data, link, _fit_options(config))
    report = _fit_report(fit, data, name, config)
    names = fit.param_names(data.covariate_names)
    se = fit.std_errors
    rows = [
        (n, v, None if se is None else se[i])
        for i, (n, v) in enumerate(report["estimates"].items())
    ]
    text = "\n".join([
        f"{config.link} fit of {name}: logL = {fit.log_lik:.4f}, "
        f"AIC = {report['aic']:.4f}, BIC = {report['bic']:.4f}",
        f"KS = {report['ks']:.4f}, MAE = {report['mae']:.4f}, "
        f"converged = {fit.converged}",
        _fmt_table(("parameter", "estimate", "std_error"), rows),
    ])
    _emit(report, text, config)
    return EXIT_OK if fit.converged else EXIT_NOT_CONVERGED


def _cmd_compare(config: RunConfig) -> int:
    data, name = _load_grouped(config)
    links = config.links or ("weibull", "cloglog", "probit", "logit")
    fits = []
    for kind in links:
        if kind not in LINK_KINDS:
            raise ConfigError(f"unknown link {kind!r} in --links")
        fits.append((kind, fit_mle(data, make_link(kind), _fit_options(config))))
    rows = compare(fits, data)
    report = {
        "command": "compare",
        "dataset": _dataset_block(data, name),
        "comparison": [r.as_dict() for r in rows],
        "settings": {"seed": config.seed or 0, "links": list(links)},
    }
    table = _fmt_table(
        ("model", "logL", "AIC", "BIC", "KS", "MAE"),
        [(r.model_name, r.log_lik, r.aic, r.bic, r.ks, r.mae) for r in rows],
    )
    _emit(report, f"model comparison on {name} (sorted by AIC)\n" + table, config)
    ok = all(f.converged for _, f in fits)
    return EXIT_OK if ok else EXIT_NOT_CONVERGED


def _cmd_bayes(config: RunConfig) -> int:
    if config.seed is None:
        raise ConfigError("bayes runs need an explicit --seed")
    data, name = _load_grouped(config)
    link = _make_cli_link(config)
    prior_name = {"noninf": "noninformative"}.get(config.prior, config.prior)
    result = fit_bayes(
        data, link, prior=prior_name, seed=config.seed,
        n_burn=config.burn, n_keep=config.keep, thin=config.thin,
        c=config.c, v_gamma=config.v_gamma, v_beta=config.v_beta,
        use_empirical_bayes=config.eb,
    )
    if config.chain_out:
        result.chain.to_csv(config.chain_out)
    ks, mae = ks_mae(data, result.fitted)
    report = {
        "command": "bayes",
        "dataset": _dataset_block(data, name),
        "link": {"kind": link.kind, "gamma": link.gamma},
        "prior": {
            "kind": result.prior.kind,
            "c": result.prior.c,
            "m_gamma": result.prior.m_gamma,
            "v_gamma": result.prior.v_gamma,
            "m_beta": None if result.prior.m_beta is None else [float(v) for v in result.prior.m_beta],
            "v_beta": result.prior.v_beta,
        },
        "empirical_bayes": None if result.eb is None else {
            "m_gamma": result.eb.m_gamma,
            "m_beta": [float(v) for v in result.eb.m_beta],
            "converged": result.eb.converged,
            "n_iterations": result.eb.n_iterations,
        },
        "posterior": result.summary,
        "dic": result.dic,
        "p_d": result.p_d,
        "ks": ks,
        "mae": mae,
        "acceptance_rate": result.chain.acceptance_rate,
        "settings": {"seed": config.seed, "burn": config.burn,
                     "keep": config.keep, "thin": config.thin},
    }
    rows = [
        (p, s["mean"], s["sd"], s["q2.5"], s["q50"], s["q97.5"])
        for p, s in result.summary.items()
    ]
    flag = "" if result.p_d >= -0.5 else "  [flag: p_D below -0.5, skewed posterior]"
    text = "\n".join([
        f"Bayesian {link.kind} fit of {name} (seed {config.seed})",
        f"DIC = {result.dic:.2f}, p_D = {result.p_d:.2f}, KS = {ks:.4f}, "
        f"MAE = {mae:.4f}, acceptance = {result.chain.acceptance_rate:.3f}{flag}",
        _fmt_table(("parameter", "mean", "sd", "q2.5", "q50", "q97.5"), rows),
    ])
    if result.eb is not None:
        text += (f"\nempirical-Bayes hyper-means: m_gamma = {result.eb.m_gamma:.4f}, "
                 f"m_beta = {np.round(result.eb.m_beta, 4).tolist()}")
    _emit(report, text, config)
    return EXIT_OK if result.converged else EXIT_NOT_CONVERGED


def _cmd_multinomial(config: RunConfig) -> int:
    data, name = _load_multinomial(config)
    link = _make_cli_link(config)
    if config.method == "bayes":
        if config.seed is None:
            raise ConfigError("bayes runs need an explicit --seed")
        fit = fit_multinomial(data, link, method="bayes", seed=config.seed,
                              n_burn=config.burn, n_keep=config.keep,
                              thin=config.thin, v_gamma=config.v_gamma,
                              v_beta=config.v_beta,
                              use_empirical_bayes=config.eb)
    else:
        fit = fit_multinomial(data, link, method="mle", options=_fit_options(config))
    log_lik, aic_value, ks, mae = multinomial_metrics(fit, data)
    P = category_prob_matrix(fit, data.X)
    report = {
        "command": "multinomial",
        "dataset": _dataset_block(data, name),
        "link": {"kind": link.kind, "gamma": link.gamma},
        "method": config.method,
        "log_lik": log_lik,
        "aic": aic_value,
        "ks": ks,
        "mae": mae,
        "n_params": fit.n_params,
        "converged": fit.converged,
        "components": [
            {
                "category": data.category_labels[i],
                "estimates": _estimates_block(sub, data),
                "std_errors": None if getattr(sub, "std_errors", None) is None
                else [float(v) for v in sub.std_errors],
                "log_lik": sub.log_lik,
            }
            for i, sub in enumerate(fit.sub_fits)
        ],
        "fitted_frequencies": [[float(v) for v in row] for row in P],
        "settings": {"seed": config.seed or 0, "method": config.method,
                     "dose_scale": config.dose_scale},
    }
    obs = data.observed_frequencies()
    rows = []
    for i in range(data.n_rows):
        rows.append((f"row {i + 1} observed", *obs[i]))
        rows.append((f"row {i + 1} fitted", *P[i]))
    text = "\n".join([
        f"{config.method} {link.kind} multinomial fit of {name}: "
        f"logL = {log_lik:.3f}, AIC = {aic_value:.2f}, KS = {ks:.4f}, MAE = {mae:.4f}",
        _fmt_table(("cells", *data.category_labels), rows),
    ])
    _emit(report, text, config)
    return EXIT_OK if fit.converged else EXIT_NOT_CONVERGED


def _cmd_reproduce(config: RunConfig) -> int:
    if config.data == "finney1947":
        return _reproduce_finney(config)
    if config.data == "grazeffe2008":
        return _reproduce_grazeffe(config)
    raise ConfigError("reproduce expects a builtin dataset name: finney1947 or grazeffe2008")


def _reproduce_finney(config: RunConfig) -> int:
    data, name = load_binomial("finney1947"), "finney1947"
    seed = config.seed if config.seed is not None else 1
    options = FitOptions(seed=seed, max_evals=config.max_evals)
    fits = [(kind, fit_mle(data, make_link(kind), options))
            for kind in ("weibull", "cloglog", "probit", "logit")]
    rows = compare(fits, data)
    by_name = dict(fits)
    bayes_result = fit_bayes(
        data, make_link("weibull"), prior=None, seed=seed,
        n_burn=config.burn, n_keep=config.keep, thin=config.thin,
        v_gamma=config.v_gamma, v_beta=config.v_beta,
        use_empirical_bayes=config.eb,
    )
    b_ks, b_mae = ks_mae(data, bayes_result.fitted)
    report = {
        "command": "reproduce",
        "dataset": _dataset_block(data, name),
        "comparison": [r.as_dict() for r in rows],
        "mle_estimates": {
            kind: {
                "estimates": _estimates_block(fit, data),
                "std_errors": None if fit.std_errors is None
                else [float(v) for v in fit.std_errors],
                "converged": fit.converged,
            }
            for kind, fit in fits
        },
        "bayes": {
            "posterior": bayes_result.summary,
            "dic": bayes_result.dic,
            "p_d": bayes_result.p_d,
            "ks": b_ks,
            "mae": b_mae,
            "empirical_bayes": None if bayes_result.eb is None else {
                "m_gamma": bayes_result.eb.m_gamma,
                "m_beta": [float(v) for v in bayes_result.eb.m_beta],
            },
            "acceptance_rate": bayes_result.chain.acceptance_rate,
        },
        "settings": {"seed": seed, "burn": config.burn, "keep": config.keep,
                     "thin": config.thin},
    }
    table = _fmt_table(
        ("model", "logL", "AIC", "BIC", "KS", "MAE"),
        [(r.model_name, r.log_lik, r.aic, r.bic, r.ks, r.mae) for r in rows],
    )
    wb, pb = by_name["weibull"], by_name["probit"]
    est_rows = []
    wb_names = wb.param_names(data.covariate_names)
    pb_names = pb.param_names(data.covariate_names)
    for i, pname in enumerate(wb_names):
        est_rows.append((f"weibull {pname}", wb.params.packed()[i],
                         None if wb.std_errors is None else wb.std_errors[i]))
    for i, pname in enumerate(pb_names):
        est_rows.append((f"probit {pname}", pb.params.beta[i],
                         None if pb.std_errors is None else pb.std_errors[i]))
    post_rows = [(p, s["mean"], s["sd"]) for p, s in bayes_result.summary.items()]
    text = "\n".join([
        f"reference tables for {name}",
        "",
        "model comparison (MLE):",
        table,
        "",
        "parameter estimates (MLE):",
        _fmt_table(("parameter", "estimate", "std_error"), est_rows),
        "",
        f"Bayesian weibull fit: DIC = {bayes_result.dic:.2f}, p_D = {bayes_result.p_d:.2f}, "
        f"KS = {b_ks:.4f}, MAE = {b_mae:.4f}",
        _fmt_table(("parameter", "post. mean", "post. sd"), post_rows),
    ])
    if bayes_result.eb is not None:
        text += (f"\nempirical-Bayes hyper-means: m_gamma = {bayes_result.eb.m_gamma:.4f}, "
                 f"m_beta = {np.round(bayes_result.eb.m_beta, 4).tolist()}")
    _emit(report, text, config)
    ok = all(f.converged for _, f in fits) and bayes_result.converged
    return EXIT_OK if ok else EXIT_NOT_CONVERGED


def _reproduce_grazeffe(config: RunConfig) -> int:
    data, name = load_multinomial("grazeffe2008", dose_scale=config.dose_scale), "grazeffe2008"
    seed = config.seed if config.seed is not None else 1
    options = FitOptions(seed=seed, max_evals=config.max_evals)
    fits = [
        ("reflected_weibull", fit_multinomial(data, make_link("reflected_weibull"), options=options)),
        ("logit", fit_multinomial(data, make_link("logit"), options=options)),
    ]
    rows = compare(fits, data)
    obs = data.observed_frequencies()
    freq_tables = {}
    for kind, fit in fits:
        freq_tables[kind] = category_prob_matrix(fit, data.X)
    report = {
        "command": "reproduce",
        "dataset": _dataset_block(data, name),
        "comparison": [r.as_dict() for r in rows],
        "observed_frequencies": [[float(v) for v in row] for row in obs],
        "fitted_frequencies": {
            kind: [[float(v) for v in row] for row in tab]
            for kind, tab in freq_tables.items()
        },
        "settings": {"seed": seed, "dose_scale": config.dose_scale},
    }
    table = _fmt_table(
        ("model", "logL", "AIC", "KS", "MAE"),
        [(r.model_name, r.log_lik, r.aic, r.ks, r.mae) for r in rows],
    )
    frows = []
    doses = data.X[:, 1]
    for i in range(data.n_rows):
        frows.append((f"dose {doses[i]:g} observed", *obs[i]))
        for kind in ("reflected_weibull", "logit"):
            frows.append((f"dose {doses[i]:g} {kind}", *freq_tables[kind][i]))
    text = "\n".join([
        f"reference tables for {name}",
        "",
        "model comparison (multinomial MLE):",
        table,
        "",
        "damage-class frequencies:",
        _fmt_table(("cells", *data.category_labels), frows),
    ])
    _emit(report, text, config)
    ok = all(f.converged for _, f in fits)
    return EXIT_OK if ok else EXIT_NOT_CONVERGED


_COMMANDS = {
    "fit": _cmd_fit,
    "bayes": _cmd_bayes,
    "multinomial": _cmd_multinomial,
    "compare": _cmd_compare,
    "reproduce": _cmd_reproduce,
}


def run(config: RunConfig) -> int:
    """Execute one command; returns the process exit code."""
    try:
        handler = _COMMANDS[config.command]
    except KeyError:
        raise ConfigError(f"unknown command {config.command!r}") from None
    return handler(config)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skewlink",
        description="binomial/multinomial regression under Weibull-type links",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, data_positional=False):
        if data_positional:
            p.add_argument("data", help="builtin dataset name")
        else:
            p.add_argument("--data", required=True, help="builtin name or CSV path")
        p.add_argument("--covariates", default="", help="comma-separated covariate columns (CSV input)")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--max-evals", type=int, default=50_000)
        p.add_argument("--out", default=None, help="write the report to this path")
        p.add_argument("--format", choices=("text", "csv", "json"), default="text")

    p_fit = sub.add_parser("fit", help="maximum-likelihood fit of one link")
    common(p_fit)
    p_fit.add_argument("--link", default="weibull", choices=LINK_KINDS)
    p_fit.add_argument("--gamma-fixed", type=float, default=None)
    p_fit.add_argument("--success-col", default="successes")
    p_fit.add_argument("--trial-col", default="trials")

    p_cmp = sub.add_parser("compare", help="fit several links and tabulate")
    common(p_cmp)
    p_cmp.add_argument("--links", default="weibull,cloglog,probit,logit")
    p_cmp.add_argument("--success-col", default="successes")
    p_cmp.add_argument("--trial-col", default="trials")

    p_bay = sub.add_parser("bayes", help="posterior sampling for one link")
    common(p_bay)
    p_bay.add_argument("--link", default="weibull", choices=LINK_KINDS)
    p_bay.add_argument("--gamma-fixed", type=float, default=None)
    p_bay.add_argument("--success-col", default="successes")
    p_bay.add_argument("--trial-col", default="trials")
    p_bay.add_argument("--prior", choices=("hierarchical", "noninf"), default="hierarchical")
    p_bay.add_argument("--c", type=float, default=2.0)
    p_bay.add_argument("--v-gamma", type=float, default=100.0)
    p_bay.add_argument("--v-beta", type=float, default=25.0)
    p_bay.add_argument("--eb", action=argparse.BooleanOptionalAction, default=True,
                       help="estimate hierarchical prior means by Monte-Carlo EM")
    p_bay.add_argument("--burn", type=int, default=10_000)
    p_bay.add_argument("--keep", type=int, default=50_000)
    p_bay.add_argument("--thin", type=int, default=5)
    p_bay.add_argument("--chain-out", default=None, help="write kept draws as CSV")

    p_mul = sub.add_parser("multinomial", help="sequential-binary multinomial fit")
    common(p_mul)
    p_mul.add_argument("--link", default="reflected_weibull", choices=LINK_KINDS)
    p_mul.add_argument("--gamma-fixed", type=float, default=None)
    p_mul.add_argument("--count-cols", default="", help="comma-separated count columns")
    p_mul.add_argument("--method", choices=("mle", "bayes"), default="mle")
    p_mul.add_argument("--prior", choices=("hierarchical", "noninf"), default="hierarchical")
    p_mul.add_argument("--c", type=float, default=2.0)
    p_mul.add_argument("--v-gamma", type=float, default=100.0)
    p_mul.add_argument("--v-beta", type=float, default=25.0)
    p_mul.add_argument("--eb", action=argparse.BooleanOptionalAction, default=True)
    p_mul.add_argument("--burn", type=int, default=10_000)
    p_mul.add_argument("--keep", type=int, default=50_000)
    p_mul.add_argument("--thin", type=int, default=5)
    p_mul.add_argument("--dose-scale", type=float, default=1.0,
                       help="divide the builtin dose column before the quadratic expansion")

    p_rep = sub.add_parser("reproduce", help="regenerate the reference tables")
    common(p_rep, data_positional=True)
    p_rep.add_argument("--burn", type=int, default=10_000)
    p_rep.add_argument("--keep", type=int, default=50_000)
    p_rep.add_argument("--thin", type=int, default=5)
    p_rep.add_argument("--v-gamma", type=float, default=100.0)
    p_rep.add_argument("--v-beta", type=float, default=25.0)
    p_rep.add_argument("--eb", action=argparse.BooleanOptionalAction, default=True)
    p_rep.add_argument("--dose-scale", type=float, default=1.0)
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    def split(v):
        return tuple(s.strip() for s in v.split(",") if s.strip()) if v else ()

    return RunConfig(
        command=args.command,
        data=args.data,
        link=getattr(args, "link", "weibull"),
        links=split(getattr(args, "links", "")),
        gamma_fixed=getattr(args, "gamma_fixed", None),
        covariates=split(args.covariates),
        success_col=getattr(args, "success_col", "successes"),
        trial_col=getattr(args, "trial_col", "trials"),
        count_cols=split(getattr(args, "count_cols", "")),
        method=getattr(args, "method", "mle"),
        prior=getattr(args, "prior", "hierarchical"),
        c=getattr(args, "c", 2.0),
        v_gamma=getattr(args, "v_gamma", 100.0),
        v_beta=getattr(args, "v_beta", 25.0),
        eb=getattr(args, "eb", True),
        seed=args.seed,
        burn=getattr(args, "burn", 10_000),
        keep=getattr(args, "keep", 50_000),
        thin=getattr(args, "thin", 5),
        max_evals=args.max_evals,
        dose_scale=getattr(args, "dose_scale", 1.0),
        out=args.out,
        chain_out=getattr(args, "chain_out", None),
        format=args.format,
    )


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return run(_config_from_args(args))
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
