"""Priors, the Metropolis engine, DIC, and Monte-Carlo EM on scales small
enough to run in seconds; the full reference-table reproduction lives in
the acceptance suite."""

import math

import numpy as np
import pytest

from skewlink import (
    GroupedDataset,
    McmcOptions,
    ParamVector,
    PosteriorChain,
    PriorSpec,
    dic,
    empirical_bayes,
    log_likelihood,
    log_posterior,
    log_prior,
    make_link,
    posterior_summary,
    run_chain,
    run_mcmc,
)

WEIBULL = make_link("weibull")
TABLE_WEIBULL = ParamVector(114.5084, np.array([0.9735, 0.0266, 0.0053, -0.0051]))


def empty_dataset(p=3):
    names = ("intercept",) + tuple(f"x{j}" for j in range(1, p))
    return GroupedDataset(np.empty((0, p)), np.empty(0), np.empty(0), names)


class TestPriors:
    def test_noninformative_support(self):
        prior = PriorSpec.noninformative(2.0)
        assert log_prior(ParamVector(0.5, np.zeros(2)), prior) == -math.inf
        assert log_prior(ParamVector(1.0, np.zeros(2)), prior) == -math.inf
        assert log_prior(ParamVector(math.e, np.zeros(2)), prior) == pytest.approx(-2.0)

    def test_noninformative_requires_c_above_one(self):
        with pytest.raises(ValueError):
            PriorSpec.noninformative(1.0)

    def test_hierarchical_validation(self):
        with pytest.raises(ValueError):
            PriorSpec.hierarchical(-1.0, 100.0, np.zeros(2), 25.0)
        with pytest.raises(ValueError):
            PriorSpec.hierarchical(5.0, 0.0, np.zeros(2), 25.0)

    def test_hierarchical_normal_component_peaks_at_mean(self):
        prior = PriorSpec.hierarchical(5.0, 100.0, np.array([1.0, -2.0]), 25.0)
        base = log_prior(ParamVector(5.0, np.array([1.0, -2.0])), prior)
        for j, delta in ((0, 0.7), (1, -1.3)):
            beta = np.array([1.0, -2.0])
            beta[j] += delta
            assert log_prior(ParamVector(5.0, beta), prior) < base

    def test_posterior_decomposition(self, finney):
        prior = PriorSpec.noninformative(2.0)
        lp = log_posterior(TABLE_WEIBULL, finney, WEIBULL, prior)
        ll = log_likelihood(TABLE_WEIBULL, finney, WEIBULL)
        assert lp == pytest.approx(ll - 2.0 * math.log(114.5084), abs=1e-9)
        # reference arithmetic: -370.34 - 2 log(114.5084)
        assert lp == pytest.approx(-370.34 - 2.0 * math.log(114.5084), abs=0.1)

    def test_posterior_differences_shift_by_prior(self, finney):
        # under the shape-decaying prior, posterior differences equal
        # likelihood differences plus c*log(gamma/gamma')
        prior = PriorSpec.noninformative(3.0)
        a = ParamVector(2.0, np.array([1.0, 0.05, 0.01, -0.01]))
        b = ParamVector(4.0, np.array([1.1, 0.02, 0.02, -0.02]))
        dpost = (log_posterior(a, finney, WEIBULL, prior)
                 - log_posterior(b, finney, WEIBULL, prior))
        dlik = (log_likelihood(a, finney, WEIBULL)
                - log_likelihood(b, finney, WEIBULL))
        assert dpost == pytest.approx(dlik + 3.0 * math.log(4.0 / 2.0), abs=1e-9)

    def test_infeasible_point_is_minus_inf(self, finney):
        prior = PriorSpec.noninformative(2.0)
        bad = ParamVector(2.0, np.array([-5.0, 0.0, 0.0, 0.0]))
        assert log_posterior(bad, finney, WEIBULL, prior) == -math.inf


class TestSamplerEngine:
    def test_standard_normal_smoke(self):
        kept, rate, _ = run_chain(
            lambda z: -0.5 * float(z @ z), np.zeros(1),
            McmcOptions(seed=7, n_burn=2_000, n_keep=50_000, thin=1),
        )
        assert abs(kept.mean()) < 0.05
        assert 0.93 < kept.std() < 1.07
        assert 0.2 < rate < 0.6

    def test_adaptation_hits_acceptance_window(self):
        # scales frozen after burn-in must land acceptance near the target
        kept, rate, _ = run_chain(
            lambda z: -0.5 * float(z @ z), np.zeros(3),
            McmcOptions(seed=3, n_burn=4_000, n_keep=20_000, thin=1),
        )
        assert 0.30 - 0.07 < rate < 0.45 + 0.07

    def test_infeasible_start_raises(self):
        with pytest.raises(ValueError, match="MLE initializer"):
            run_chain(lambda z: -math.inf, np.zeros(2), McmcOptions(seed=0))


class TestRunMcmc:
    def test_seed_determinism_and_isolation(self, finney):
        prior = PriorSpec.noninformative(2.0)
        opts = dict(n_burn=300, n_keep=500, thin=1)
        a = run_mcmc(finney, WEIBULL, prior, McmcOptions(seed=5, **opts))
        b = run_mcmc(finney, WEIBULL, prior, McmcOptions(seed=5, **opts))
        c = run_mcmc(finney, WEIBULL, prior, McmcOptions(seed=6, **opts))
        np.testing.assert_array_equal(a.draws, b.draws)
        assert not np.array_equal(a.draws, c.draws)

    def test_noninformative_support_respected(self, finney):
        prior = PriorSpec.noninformative(2.0)
        chain = run_mcmc(finney, WEIBULL, prior,
                         McmcOptions(seed=2, n_burn=500, n_keep=2_000, thin=1))
        assert np.all(chain.draws[:, 0] > 1.0)
        assert 0.0 < chain.acceptance_rate < 1.0

    def test_hierarchical_support_respected(self, finney):
        prior = PriorSpec.hierarchical(3.0, 100.0, np.zeros(4), 25.0)
        chain = run_mcmc(finney, WEIBULL, prior,
                         McmcOptions(seed=2, n_burn=500, n_keep=2_000, thin=1))
        assert np.all(chain.draws[:, 0] > 0.0)

    def test_prior_only_matches_direct_sampling(self):
        # with no data the chain must reproduce the prior; the oracle is
        # the generator itself
        m_beta = np.array([1.0, -2.0, 0.5])
        prior = PriorSpec.hierarchical(5.0, 4.0, m_beta, 9.0)
        chain = run_mcmc(empty_dataset(), WEIBULL, prior,
                         McmcOptions(seed=3, n_burn=3_000, n_keep=20_000, thin=2))
        n_eff = 2_000  # conservative effective size given the walk's autocorrelation
        beta_mc_se = 3.0 / math.sqrt(n_eff)
        for j in range(3):
            assert abs(chain.draws[:, j + 1].mean() - m_beta[j]) < 3.0 * beta_mc_se
        gamma_mc_se = 2.0 / math.sqrt(n_eff)
        assert abs(chain.draws[:, 0].mean() - 5.0) < 3.0 * gamma_mc_se

    def test_param_names_follow_dataset(self, finney):
        prior = PriorSpec.noninformative(2.0)
        chain = run_mcmc(finney, WEIBULL, prior,
                         McmcOptions(seed=1, n_burn=50, n_keep=100, thin=1))
        assert chain.param_names == ("gamma", "intercept", "logdose", "rotenone", "deguelin")

    def test_chain_csv_export(self, finney, tmp_path):
        prior = PriorSpec.noninformative(2.0)
        chain = run_mcmc(finney, WEIBULL, prior,
                         McmcOptions(seed=1, n_burn=50, n_keep=120, thin=1))
        out = tmp_path / "chain.csv"
        chain.to_csv(out)
        lines = out.read_text().splitlines()
        assert lines[0] == "gamma,intercept,logdose,rotenone,deguelin"
        assert len(lines) == 121
        back = np.loadtxt(out, delimiter=",", skiprows=1)
        np.testing.assert_allclose(back, chain.draws, rtol=1e-15)


def constant_chain(theta, n=8):
    draws = np.tile(np.asarray(theta, dtype=float), (n, 1))
    return PosteriorChain(draws, seed=0, burn_in=0, thin=1,
                          acceptance_rate=0.5,
                          proposal_scales=np.ones(len(theta)),
                          param_names=tuple(f"p{i}" for i in range(len(theta))))


class TestDic:
    def test_identical_draws_give_plug_in_deviance(self, finney):
        theta = [2.0, 1.2, 0.1, 0.05, -0.05]
        chain = constant_chain(theta)
        value, p_d = dic(chain, finney, WEIBULL)
        assert p_d == 0.0
        plug = -2.0 * log_likelihood(ParamVector(2.0, np.array(theta[1:])), finney, WEIBULL)
        assert value == plug

    def test_infeasible_posterior_mean_raises(self):
        data = GroupedDataset(np.ones((1, 1)), [3], [4], ("intercept",))
        chain = constant_chain([1.0, -1.0])
        with pytest.raises(ValueError, match="zero likelihood"):
            dic(chain, data, WEIBULL)

    def test_positive_spread_increases_dic(self, finney):
        rng = np.random.default_rng(0)
        base = np.array([2.0, 1.2, 0.1, 0.05, -0.05])
        draws = base + rng.normal(0, [0.01, 0.002, 0.002, 0.002, 0.002], (400, 5))
        chain = PosteriorChain(draws, 0, 0, 1, 0.4, np.ones(5),
                               ("gamma", "b0", "b1", "b2", "b3"))
        value, p_d = dic(chain, finney, WEIBULL)
        assert p_d > 0.0


class TestPosteriorSummary:
    def test_constant_chain(self):
        s = posterior_summary(constant_chain([3.0, 1.0]))
        assert s["p0"]["mean"] == 3.0
        assert s["p0"]["sd"] == 0.0
        assert s["p0"]["q50"] == 3.0

    def test_two_point_population_convention(self):
        draws = np.array([[0.0], [1.0]] * 50, dtype=float)
        chain = PosteriorChain(draws, 0, 0, 1, 0.4, np.ones(1), ("p",))
        s = posterior_summary(chain)["p"]
        assert s["mean"] == pytest.approx(0.5)
        assert s["sd"] == pytest.approx(0.5)  # divisor n, not n-1

    def test_quantiles(self):
        draws = np.arange(1001, dtype=float)[:, None]
        chain = PosteriorChain(draws, 0, 0, 1, 0.4, np.ones(1), ("p",))
        s = posterior_summary(chain)["p"]
        assert s["q50"] == pytest.approx(500.0)
        assert s["q2.5"] == pytest.approx(25.0)
        assert s["q97.5"] == pytest.approx(975.0)


class TestEmpiricalBayes:
    def test_empty_data_is_a_fixed_point(self):
        start = ParamVector(4.0, np.array([1.0, -1.0, 0.5]))
        result = empirical_bayes(empty_dataset(), WEIBULL, 100.0, 25.0,
                                 seed=1, start=start)
        assert result.converged
        assert result.m_gamma == 4.0
        np.testing.assert_array_equal(result.m_beta, start.beta)

    def test_synthetic_recovery(self):
        # data generated from a known configuration; with tight prior
        # variances the hyper-means must come back near the truth
        rng = np.random.default_rng(11)
        truth_gamma, truth_beta = 2.0, np.array([1.0, 0.6])
        x = np.linspace(-0.8, 0.8, 12)
        X = np.column_stack([np.ones(x.size), x])
        eta = X @ truth_beta
        mu = 1.0 - np.exp(-eta**truth_gamma)
        trials = np.full(x.size, 200)
        data = GroupedDataset(X, rng.binomial(trials, mu), trials)
        result = empirical_bayes(data, WEIBULL, v_gamma=1.0, v_beta=1.0,
                                 seed=4, n_burn=500, n_keep=2_000,
                                 max_iterations=12)
        assert abs(result.m_gamma - truth_gamma) < 0.5
        np.testing.assert_allclose(result.m_beta, truth_beta, atol=0.25)
