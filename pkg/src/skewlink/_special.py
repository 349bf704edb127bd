"""Self-contained special functions used by the link and sampling code.

Everything here is plain numpy so the core model code does not pull in a
second numerics dependency.  The error-function pair follows the classic
SunPro rational approximations (five branches on |x|); the normal quantile
is Acklam's approximation polished with two Halley steps, which brings it
to near machine precision.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "erf",
    "erfc",
    "norm_cdf",
    "norm_pdf",
    "norm_ppf",
    "log1mexp",
    "log1pexp",
    "digamma",
]

_ERX = 8.45062911510467529297e-01

# erf on [0, 0.84375]
_PP = (
    1.28379167095512558561e-01,
    -3.25042107247001499370e-01,
    -2.84817495755985104766e-02,
    -5.77027029648944159157e-03,
    -2.37630166566501626084e-05,
)
_QQ = (
    1.0,
    3.97917223959155352819e-01,
    6.50222499887672944485e-02,
    5.08130628187576562776e-03,
    1.32494738004321644526e-04,
    -3.96022827877536812320e-06,
)

# erf on [0.84375, 1.25]
_PA = (
    -2.36211856075265944077e-03,
    4.14856118683748331666e-01,
    -3.72207876035701323847e-01,
    3.18346619901161753674e-01,
    -1.10894694282396677476e-01,
    3.54783043256182359371e-02,
    -2.16637559486879084300e-03,
)
_QA = (
    1.0,
    1.06420880400844228286e-01,
    5.40397917702171048937e-01,
    7.18286544141962662868e-02,
    1.26171219808761642112e-01,
    1.36370839120290507362e-02,
    1.19844998467991074170e-02,
)

# erfc on [1.25, 1/0.35)
_RA = (
    -9.86494403484714822705e-03,
    -6.93858572707181764372e-01,
    -1.05586262253232909814e01,
    -6.23753324503260060396e01,
    -1.62396669462573470355e02,
    -1.84605092906711035994e02,
    -8.12874355063065934246e01,
    -9.81432934416914548592e00,
)
_SA = (
    1.0,
    1.96512716674392571292e01,
    1.37657754143519042600e02,
    4.34565877475229228821e02,
    6.45387271733267880336e02,
    4.29008140027567833386e02,
    1.08635005541779435134e02,
    6.57024977031928170135e00,
    -6.04244152148580987438e-02,
)

# erfc on [1/0.35, 28)
_RB = (
    -9.86494292470009928597e-03,
    -7.99283237680523006574e-01,
    -1.77579549177547519889e01,
    -1.60636384855821916062e02,
    -6.37566443368389627722e02,
    -1.02509513161107724954e03,
    -4.83519191608651397019e02,
)
_SB = (
    1.0,
    3.03380607434824582924e01,
    3.25792512996573918826e02,
    1.53672958608443695994e03,
    3.19985821950859553908e03,
    2.55305040643316442583e03,
    4.74528541206955367215e02,
    -2.24409524465858183362e01,
)


def _polyval(coeffs, z):
    # ascending-order Horner; coeffs[0] is the constant term
    out = np.zeros_like(z)
    for c in reversed(coeffs):
        out = out * z + c
    return out


def _erf_small(a):
    # |x| < 0.84375
    z = a * a
    return a + a * (_polyval(_PP, z) / _polyval(_QQ, z))


def _erf_mid(a):
    # 0.84375 <= |x| < 1.25, applied to |x|
    s = a - 1.0
    return _ERX + _polyval(_PA, s) / _polyval(_QA, s)


def _erfc_tail(a):
    # |x| >= 1.25, applied to |x|; returns erfc(|x|)
    s = 1.0 / (a * a)
    mid = a < 1.0 / 0.35
    r = np.where(mid, _polyval(_RA, s), _polyval(_RB, s))
    q = np.where(mid, _polyval(_SA, s), _polyval(_SB, s))
    return np.exp(-a * a - 0.5625 + r / q) / a


def erf(x):
    """Error function, elementwise, with absolute error below 1e-14."""
    x = np.asarray(x, dtype=float)
    a = np.abs(x)
    with np.errstate(invalid="ignore"):
        sign = np.sign(x)
        safe = np.where(a > 0, a, 0.5)

        small = a < 0.84375
        mid = (a >= 0.84375) & (a < 1.25)
        big = (a >= 1.25) & (a < 6.0)

        out = np.where(small, _erf_small(np.where(small, x, 0.0)), sign)
        out = np.where(mid, sign * _erf_mid(safe), out)
        out = np.where(big, sign * (1.0 - _erfc_tail(safe)), out)
        out = np.where(np.isnan(x), np.nan, out)
    if out.ndim == 0:
        return float(out)
    return out


def erfc(x):
    """Complementary error function; keeps relative accuracy for x up to ~27."""
    x = np.asarray(x, dtype=float)
    a = np.abs(x)
    with np.errstate(invalid="ignore", under="ignore"):
        safe = np.where(a > 0, a, 0.5)

        small = a < 0.84375
        mid = (a >= 0.84375) & (a < 1.25)
        big = a >= 1.25

        out = np.where(small, 1.0 - _erf_small(np.where(small, x, 0.0)), 0.0)
        out = np.where(mid & (x > 0), 1.0 - _erf_mid(safe), out)
        out = np.where(mid & (x < 0), 1.0 + _erf_mid(safe), out)
        tail = np.where(a < 27.0, _erfc_tail(np.where(big, safe, 2.0)), 0.0)
        out = np.where(big & (x > 0), tail, out)
        out = np.where(big & (x < 0), 2.0 - tail, out)
        out = np.where(np.isnan(x), np.nan, out)
    if out.ndim == 0:
        return float(out)
    return out


_SQRT2 = math.sqrt(2.0)
_SQRT_2PI = math.sqrt(2.0 * math.pi)


def norm_cdf(x):
    """Standard normal cdf via erfc, accurate deep into both tails."""
    x = np.asarray(x, dtype=float)
    out = 0.5 * erfc(-x / _SQRT2)
    if np.ndim(out) == 0:
        return float(out)
    return out


def norm_pdf(x):
    x = np.asarray(x, dtype=float)
    return np.exp(-0.5 * x * x) / _SQRT_2PI


# Acklam's rational approximation to the normal quantile (|rel err| ~ 1.15e-9
# before refinement).
_ACK_A = (
    -3.969683028665376e01,
    2.209460984245205e02,
    -2.759285104469687e02,
    1.383577518672690e02,
    -3.066479806614716e01,
    2.506628277459239e00,
)
_ACK_B = (
    -5.447609879822406e01,
    1.615858368580409e02,
    -1.556989798598866e02,
    6.680131188771972e01,
    -1.328068155288572e01,
)
_ACK_C = (
    -7.784894002430293e-03,
    -3.223964580411365e-01,
    -2.400758277161838e00,
    -2.549732539343734e00,
    4.374664141464968e00,
    2.938163982698783e00,
)
_ACK_D = (
    7.784695709041462e-03,
    3.224671290700398e-01,
    2.445134137142996e00,
    3.754408661907416e00,
)


def _ppf_raw(p):
    p_low = 0.02425
    if p < p_low:
        q = math.sqrt(-2.0 * math.log(p))
        a, b, c, d, e, f = _ACK_C
        num = ((((a * q + b) * q + c) * q + d) * q + e) * q + f
        a, b, c, d = _ACK_D
        den = (((a * q + b) * q + c) * q + d) * q + 1.0
        return num / den
    if p > 1.0 - p_low:
        return -_ppf_raw(1.0 - p)
    q = p - 0.5
    r = q * q
    a, b, c, d, e, f = _ACK_A
    num = ((((a * r + b) * r + c) * r + d) * r + e) * r + f
    a, b, c, d, e = _ACK_B
    den = ((((a * r + b) * r + c) * r + d) * r + e) * r + 1.0
    return q * num / den


def norm_ppf(p):
    """Standard normal quantile.  Scalar in, scalar out.

    Acklam's approximation followed by two Halley refinements against the
    erfc-based cdf; good to a few ulps over (1e-300, 1-1e-16).
    """
    p = float(p)
    if not 0.0 < p < 1.0:
        raise ValueError(f"quantile argument must lie in (0, 1), got {p}")
    x = _ppf_raw(p)
    for _ in range(2):
        e = norm_cdf(x) - p
        u = e * _SQRT_2PI * math.exp(0.5 * x * x)
        x -= u / (1.0 + 0.5 * x * u)
    return x


_LOG2 = math.log(2.0)


def log1mexp(u):
    """log(1 - exp(-u)) for u > 0, elementwise, without catastrophic loss.

    Splits at log 2 as recommended in the standard treatment of this
    expression: -expm1 keeps precision for small u, log1p for large u.
    Returns -inf at u = 0 and handles u = +inf (-> 0.0).
    """
    u = np.asarray(u, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        small = np.log(-np.expm1(-np.where(u < _LOG2, u, 1.0)))
        large = np.log1p(-np.exp(-np.where(u >= _LOG2, u, 1.0)))
    out = np.where(u < _LOG2, small, large)
    if np.ndim(out) == 0:
        return float(out)
    return out


def log1pexp(t):
    """log(1 + exp(t)), elementwise, stable for large |t|."""
    t = np.asarray(t, dtype=float)
    out = np.where(t > 33.0, t, np.log1p(np.exp(np.minimum(t, 33.0))))
    if np.ndim(out) == 0:
        return float(out)
    return out


def digamma(x):
    """Digamma for scalar x > 0: recurrence up to x >= 10, then the
    asymptotic series through x**-8 (absolute error ~ 1e-12)."""
    x = float(x)
    if x <= 0.0:
        raise ValueError(f"digamma defined here only for x > 0, got {x}")
    acc = 0.0
    while x < 10.0:
        acc -= 1.0 / x
        x += 1.0
    inv = 1.0 / x
    inv2 = inv * inv
    series = (
        math.log(x)
        - 0.5 * inv
        - inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 - inv2 / 240.0)))
    )
    return acc + series
