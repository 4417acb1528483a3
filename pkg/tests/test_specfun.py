"""Special-function kernels against independent numerical oracles."""

import math

import numpy as np
import pytest
from scipy import integrate, special

from radial_theorems.specfun import (
    DivergentIntegralError,
    KummerPoly,
    kummer_moment_integral,
    kummer_poly_coeffs,
    kummer_poly_eval,
    ln_gamma,
)


def test_ln_gamma_matches_lgamma_grid():
    for x in (0.5, 1.0, 1.5, 3.0, 7.25, 40.0):
        assert ln_gamma(x) == math.lgamma(x)


def test_ln_gamma_rejects_nonpositive():
    with pytest.raises(ValueError):
        ln_gamma(0.0)
    with pytest.raises(ValueError):
        ln_gamma(-2.5)


def test_kummer_poly_against_scipy_hyp1f1():
    rng = np.random.default_rng(7)
    for _ in range(50):
        n = int(rng.integers(0, 9))
        b = float(rng.uniform(0.5, 8.0))
        x = float(rng.uniform(0.0, 12.0))
        ours = kummer_poly_eval(n, b, x)
        ref = special.hyp1f1(-n, b, x)
        assert ours == pytest.approx(ref, rel=1e-12, abs=1e-12)


def test_kummer_poly_degree_and_leading_term():
    c = kummer_poly_coeffs(3, 2.0)
    assert len(c) == 4
    assert c[0] == 1.0
    # leading coefficient (-n)_n / ((b)_n n!) = -6 / (24 * 6) for n=3, b=2
    assert c[3] == pytest.approx(-6.0 / (24.0 * 6.0), rel=1e-15)


def test_kummer_poly_object_derivative():
    p = KummerPoly(4, 1.5)
    x = 0.7
    h = 1e-6
    numeric = (p(x + h) - p(x - h)) / (2 * h)
    analytic = np.polynomial.polynomial.polyval(x, p.derivative_coeffs())
    assert analytic == pytest.approx(numeric, rel=1e-8)


@pytest.mark.parametrize("n,gamma,k,nu", [
    (0, 2.0, 1.0, 3.0),
    (1, 2.0, 1.0, 3.0),
    (2, 4.0, 0.5, 5.0),
    (3, 1.5, 2.0, 0.5),
    (5, 3.0, 1.0, 2.0),
    (4, 6.0, 0.25, 7.5),
])
def test_moment_integral_against_quadrature(n, gamma, k, nu):
    def f(z):
        return math.exp(-k * z) * z ** (nu - 1.0) * special.hyp1f1(-n, gamma, k * z) ** 2

    ref, err = integrate.quad(f, 0.0, np.inf, epsabs=1e-13, epsrel=1e-12, limit=200)
    val = kummer_moment_integral(n, gamma, k, nu)
    assert val == pytest.approx(ref, rel=1e-10)


def test_moment_integral_divergent_origin():
    with pytest.raises(DivergentIntegralError):
        kummer_moment_integral(1, 2.0, 1.0, 0.0)
    with pytest.raises(DivergentIntegralError):
        kummer_moment_integral(1, 2.0, 1.0, -1.0)


def test_degree_cap_enforced():
    with pytest.raises(ValueError):
        kummer_poly_coeffs(13, 2.0)
    with pytest.raises(ValueError):
        kummer_moment_integral(13, 2.0, 1.0, 3.0)
