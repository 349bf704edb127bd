import math

import numpy as np
import pytest

from skewlink import (
    FitOptions,
    aic,
    bic,
    compare,
    fit_mle,
    fit_multinomial,
    ks_mae,
    make_link,
)


class TestCriteria:
    def test_aic_reference_value(self):
        # the published 750.69 came from the unrounded log-likelihood; from
        # the printed -370.34 the identity gives 750.68 exactly
        assert aic(-370.34, 5) == pytest.approx(-2 * -370.34 + 10, abs=1e-12)
        assert aic(-370.34, 5) == pytest.approx(750.69, abs=0.015)

    def test_bic_reference_value(self):
        # n counts Bernoulli trials: the published gap back-solves to ln 818
        assert bic(-370.34, 5, 818) == pytest.approx(774.22, abs=0.03)

    def test_degenerate(self):
        assert aic(0.0, 0) == 0.0
        assert bic(0.0, 0, 10) == 0.0

    def test_identities(self, rng):
        for _ in range(20):
            ll = float(rng.normal(-100, 30))
            p = int(rng.integers(1, 10))
            n = int(rng.integers(p + 1, 5000))
            assert aic(ll, p) == pytest.approx(-2 * ll + 2 * p, abs=1e-9)
            assert bic(ll, p, n) == pytest.approx(-2 * ll + p * math.log(n), abs=1e-9)


class TestKsMae:
    def test_perfect_prediction(self, finney):
        ks, mae = ks_mae(finney, finney.observed_proportions())
        assert ks == 0.0 and mae == 0.0

    def test_hand_case(self):
        obs = np.array([0.5, 0.25])
        pred = np.array([0.4, 0.35])
        ks, mae = ks_mae(obs, pred)
        assert ks == pytest.approx(0.1)
        assert mae == pytest.approx(0.1)

    def test_ks_dominates_mae(self, rng):
        for _ in range(50):
            n = int(rng.integers(1, 30))
            obs = rng.uniform(0, 1, n)
            pred = rng.uniform(0, 1, n)
            ks, mae = ks_mae(obs, pred)
            assert ks >= mae

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            ks_mae(np.zeros(3), np.zeros(4))


@pytest.fixture(scope="module")
def comparison_fits(finney):
    options = FitOptions(seed=0, compute_se=False)
    return [(kind, fit_mle(finney, make_link(kind), options))
            for kind in ("weibull", "cloglog", "probit", "logit")]


class TestCompare:
    def test_finney_ordering(self, comparison_fits, finney):
        rows = compare(comparison_fits, finney)
        assert [r.model_name for r in rows][:2] == ["cloglog", "weibull"]
        assert rows[0].aic < rows[1].aic

    def test_published_statistics(self, comparison_fits, finney):
        rows = {r.model_name: r for r in compare(comparison_fits, finney)}
        assert rows["weibull"].ks == pytest.approx(0.1440, abs=0.005)
        assert rows["weibull"].mae == pytest.approx(0.0553, abs=0.003)
        assert rows["probit"].ks == pytest.approx(0.1292, abs=0.005)
        assert rows["probit"].mae == pytest.approx(0.0656, abs=0.003)

    def test_aic_identity_in_rows(self, comparison_fits, finney):
        for row in compare(comparison_fits, finney):
            assert row.aic == pytest.approx(-2 * row.log_lik + 2 * row.n_params, abs=1e-9)
            assert row.bic == pytest.approx(
                -2 * row.log_lik + row.n_params * math.log(row.n_obs), abs=1e-9
            )

    def test_single_fit(self, comparison_fits, finney):
        rows = compare(comparison_fits[:1], finney)
        assert len(rows) == 1

    def test_permutation_stable(self, comparison_fits, finney):
        a = compare(comparison_fits, finney)
        b = compare(list(reversed(comparison_fits)), finney)
        assert [r.model_name for r in a] == [r.model_name for r in b]

    def test_mixed_datasets_rejected(self, comparison_fits, finney):
        from skewlink import GroupedDataset

        keep = slice(None, None, 3)  # rows from all three preparations
        other = GroupedDataset(finney.X[keep], finney.successes[keep],
                               finney.trials[keep], finney.covariate_names)
        with pytest.raises(ValueError):
            compare(comparison_fits, other)

    def test_multinomial_comparison(self, snail):
        options = FitOptions(seed=0, compute_se=False)
        fits = [
            ("reflected_weibull",
             fit_multinomial(snail, make_link("reflected_weibull"), options=options)),
            ("logit", fit_multinomial(snail, make_link("logit"), options=options)),
        ]
        rows = compare(fits, snail)
        assert rows[0].model_name == "reflected_weibull"
        assert rows[0].bic is None
        assert rows[0].aic < rows[1].aic
