"""The in-repo special functions against independent references: the
stdlib math module for erf/erfc and scipy for digamma and the normal cdf."""

import math

import numpy as np
import pytest
import scipy.special
import scipy.stats

from skewlink._special import (
    digamma,
    erf,
    erfc,
    log1mexp,
    log1pexp,
    norm_cdf,
    norm_pdf,
    norm_ppf,
)


class TestErf:
    def test_against_stdlib(self):
        xs = np.linspace(-8.0, 8.0, 4001)
        ours = erf(xs)
        ref = np.array([math.erf(x) for x in xs])
        np.testing.assert_allclose(ours, ref, atol=1e-12, rtol=0)

    def test_scalar_and_special_values(self):
        assert erf(0.0) == 0.0
        assert erf(np.inf) == 1.0
        assert erf(-np.inf) == -1.0
        assert math.isnan(erf(np.nan))
        assert isinstance(erf(1.0), float)

    def test_erfc_relative_accuracy_in_tail(self):
        for x in np.linspace(0.5, 20.0, 79):
            ref = math.erfc(x)
            assert abs(erfc(x) - ref) <= 1e-12 * ref

    def test_erfc_negative_side(self):
        xs = np.linspace(-10.0, 0.0, 101)
        ref = np.array([math.erfc(x) for x in xs])
        np.testing.assert_allclose(erfc(xs), ref, atol=1e-13, rtol=1e-13)


class TestNormal:
    def test_cdf_against_scipy(self):
        xs = np.linspace(-10.0, 10.0, 2001)
        np.testing.assert_allclose(norm_cdf(xs), scipy.stats.norm.cdf(xs),
                                   atol=1e-14, rtol=1e-12)

    def test_pdf(self):
        xs = np.linspace(-5.0, 5.0, 101)
        np.testing.assert_allclose(norm_pdf(xs), scipy.stats.norm.pdf(xs), rtol=1e-13)

    @pytest.mark.parametrize("p", [1e-12, 1e-9, 1e-4, 0.02425, 0.3, 0.5,
                                   0.77, 1 - 1e-4, 1 - 1e-9, 1 - 1e-13])
    def test_ppf_roundtrip(self, p):
        assert abs(norm_cdf(norm_ppf(p)) - p) < 1e-13

    def test_ppf_domain(self):
        with pytest.raises(ValueError):
            norm_ppf(0.0)
        with pytest.raises(ValueError):
            norm_ppf(1.0)


class TestStableLogs:
    def test_log1mexp_small_and_large(self):
        # log(1 - exp(-u)) ~ log(u) as u -> 0, ~ -exp(-u) as u -> inf
        assert log1mexp(1e-300) == pytest.approx(math.log(1e-300), rel=1e-12)
        assert log1mexp(50.0) == pytest.approx(-math.exp(-50.0), rel=1e-6)
        assert log1mexp(0.0) == -math.inf
        assert log1mexp(np.inf) == 0.0

    def test_log1mexp_vs_mpmath_style_reference(self):
        us = np.logspace(-12, 2, 200)
        ref = [math.log(-math.expm1(-u)) if u < 1 else math.log1p(-math.exp(-u))
               for u in us]
        np.testing.assert_allclose(log1mexp(us), ref, rtol=1e-13)

    def test_log1pexp(self):
        ts = np.linspace(-50, 100, 301)
        ref = [math.log1p(math.exp(t)) if t < 30 else t + math.log1p(math.exp(-t))
               for t in ts]
        np.testing.assert_allclose(log1pexp(ts), ref, rtol=1e-12)


class TestDigamma:
    def test_against_scipy(self):
        for x in np.logspace(-3, 3, 400):
            assert abs(digamma(x) - scipy.special.digamma(x)) < 1e-10

    def test_domain(self):
        with pytest.raises(ValueError):
            digamma(0.0)
        with pytest.raises(ValueError):
            digamma(-1.5)
