import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weinstein.special import (
    BesselIndex,
    bessel_j_normalized,
    bessel_series_reference,
    ln_gamma,
)


def test_bessel_index_gate():
    BesselIndex(-0.49)
    with pytest.raises(ValueError):
        BesselIndex(-0.5)
    with pytest.raises(ValueError):
        BesselIndex(-2.0)


def test_ln_gamma_against_mpmath():
    for x in [1e-6, 0.5, 1.0, 2.5, 10.0, 170.5, 1e4]:
        assert abs(ln_gamma(x) - float(mpmath.loggamma(x))) <= 1e-12 * max(1.0, abs(ln_gamma(x)))


def test_ln_gamma_domain():
    with pytest.raises(ValueError):
        ln_gamma(0.0)
    with pytest.raises(ValueError):
        ln_gamma(-1.0)


def test_half_integer_closed_form():
    # alpha = 1/2 reduces to sin(x)/x
    idx = BesselIndex(0.5)
    for x in [1e-6, 0.1, 1.0, 5.0, 20.0, 75.0]:
        assert abs(bessel_j_normalized(idx, x) - math.sin(x) / x) <= 1e-13


def test_at_zero_exact():
    for alpha in (-0.3, 0.5, 1.5, 7.0):
        assert bessel_j_normalized(BesselIndex(alpha), 0.0) == 1.0


def test_series_oracle_agreement():
    # The alternating series cancels down from terms as large as the modified
    # Bessel majorant Gamma(a+1) (2/x)^a I_a(x), so the oracle's achievable
    # absolute accuracy is ~eps times that majorant (harmless for small x,
    # dominant for x near 39).
    from scipy.special import iv

    eps = np.finfo(float).eps
    for alpha in (-0.3, 0.0, 0.5, 1.5, 4.0, 10.0):
        idx = BesselIndex(alpha)
        for x in np.linspace(1e-3, 39.0, 23):
            ref = bessel_series_reference(idx, float(x), 1e-17)
            majorant = math.gamma(alpha + 1.0) * (2.0 / x) ** alpha * iv(alpha, x)
            tol = max(1e-12, 20.0 * eps * majorant)
            assert abs(bessel_j_normalized(idx, float(x)) - ref) <= tol


def test_series_oracle_contract():
    idx = BesselIndex(0.5)
    with pytest.raises(ValueError):
        bessel_series_reference(idx, 41.0, 1e-12)
    with pytest.raises(ValueError):
        bessel_series_reference(idx, 1.0, 0.0)
    with pytest.raises(ValueError):
        bessel_series_reference(idx, -1.0, 1e-12)


def test_negative_argument_rejected():
    with pytest.raises(ValueError):
        bessel_j_normalized(BesselIndex(0.5), -1.0)


def test_taylor_seam_continuity():
    # values on both sides of the small-argument crossover agree
    for alpha in (-0.3, 0.5, 3.0):
        idx = BesselIndex(alpha)
        lo = bessel_j_normalized(idx, 1e-4 * (1 - 1e-9))
        hi = bessel_j_normalized(idx, 1e-4 * (1 + 1e-9))
        assert abs(lo - hi) <= 1e-12


def test_ode_residual():
    # x j'' + (2a+1) j' + x j = 0, central differences
    h = 1e-4
    for alpha in (0.5, 1.5, 4.0):
        idx = BesselIndex(alpha)
        for x in (0.5, 1.7, 6.3, 19.0):
            jm, j0, jp = (bessel_j_normalized(idx, x + k * h) for k in (-1, 0, 1))
            d1 = (jp - jm) / (2 * h)
            d2 = (jp - 2 * j0 + jm) / (h * h)
            assert abs(x * d2 + (2 * alpha + 1) * d1 + x * j0) <= 1e-5


@settings(max_examples=300, deadline=None)
@given(
    alpha=st.floats(min_value=-0.45, max_value=12.0, allow_nan=False),
    x=st.floats(min_value=0.0, max_value=150.0, allow_nan=False),
)
def test_modulus_bound(alpha, x):
    assert abs(bessel_j_normalized(BesselIndex(alpha), x)) <= 1.0 + 1e-12
