"""Special functions for the analytic bound states and their closed-form moments.

Only the polynomial (terminating) confluent hypergeometric series is needed:
the radial eigenfunctions of the Coulomb and oscillator problems are
r^l * exp(...) * 1F1(-n; b; x) with nonnegative integer n.  The weighted
moment integral of such a squared polynomial against an exponential weight
has a closed form which is evaluated here in log space to keep the factorial
ratios finite over the whole supported parameter range.
"""

import math

import numpy as np

# Refuse silently imprecise regimes instead of degrading.
MAX_POLY_DEGREE = 12
MAX_ANGULAR_MOMENTUM = 6


class DivergentIntegralError(ValueError):
    """Raised when a requested moment integral diverges at the origin."""


def ln_gamma(x):
    """Natural log of the gamma function for x > 0."""
    if x <= 0:
        raise ValueError(f"ln_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def kummer_poly_coeffs(n, b):
    """Coefficients of the degree-n polynomial 1F1(-n; b; x).

    Returns an ascending array c with c[j] = (-n)_j / ((b)_j j!), so that
    1F1(-n; b; x) = sum_j c[j] x^j.  c[0] is exactly 1.
    """
    if n < 0 or n != int(n):
        raise ValueError(f"polynomial degree must be a nonnegative integer, got {n}")
    if b <= 0:
        raise ValueError(f"lower parameter must be positive, got {b}")
    if n > MAX_POLY_DEGREE:
        raise ValueError(f"degree {n} exceeds supported maximum {MAX_POLY_DEGREE}")
    n = int(n)
    c = np.empty(n + 1)
    c[0] = 1.0
    for j in range(n):
        c[j + 1] = c[j] * (-(n - j)) / ((b + j) * (j + 1))
    return c


def kummer_poly_eval(n, b, x):
    """Value of 1F1(-n; b; x) via its finite series."""
    c = kummer_poly_coeffs(n, b)
    # Horner in ascending order
    y = 0.0
    for cj in c[::-1]:
        y = y * x + cj
    return y


class KummerPoly:
    """The polynomial 1F1(-n; b; x) held as explicit coefficients.

    Storing coefficients makes derivatives exact coefficient shifts, which
    the boundary brackets rely on near the origin.
    """

    def __init__(self, n, b):
        self.n = int(n)
        self.b = float(b)
        self.coeffs = kummer_poly_coeffs(n, b)

    def __call__(self, x):
        return np.polynomial.polynomial.polyval(x, self.coeffs)

    def derivative_coeffs(self):
        c = self.coeffs
        return np.arange(1, len(c)) * c[1:]


def _pochhammer_log(a, k):
    """log |(a)_k| and the sign of the rising factorial (a)_k."""
    val = 0.0
    sign = 1.0
    for j in range(k):
        term = a + j
        if term == 0.0:
            return -math.inf, 0.0
        val += math.log(abs(term))
        if term < 0:
            sign = -sign
    return val, sign


def kummer_moment_integral(n, gamma, k, nu):
    """The integral  I = int_0^inf e^{-kz} z^{nu-1} [1F1(-n; gamma; kz)]^2 dz.

    Closed form: I = Gamma(nu) n! / (k^nu (gamma)_n) * [1 + sum_{s=0}^{n-1} T_s],
    T_s = [n(n-1)...(n-s)] * prod_{j=-(s+1)}^{s} (gamma - nu + j)
          / ([(s+1)!]^2 (gamma)_{s+1}).

    The prefactor is assembled in log space; the bracket is a short sum of
    signed ratios and is accumulated directly.
    """
    if nu <= 0:
        raise DivergentIntegralError(f"moment integral diverges at the origin (nu={nu})")
    if gamma <= 0:
        raise ValueError(f"lower parameter must be positive, got {gamma}")
    if k <= 0:
        raise ValueError(f"exponential scale must be positive, got {k}")
    if n < 0 or n != int(n):
        raise ValueError(f"polynomial degree must be a nonnegative integer, got {n}")
    if n > MAX_POLY_DEGREE:
        raise ValueError(f"degree {n} exceeds supported maximum {MAX_POLY_DEGREE}")
    n = int(n)

    poch_n_log, poch_n_sign = _pochhammer_log(gamma, n)
    log_pref = ln_gamma(nu) + ln_gamma(n + 1.0) - nu * math.log(k) - poch_n_log

    bracket = 1.0
    d = gamma - nu
    for s in range(n):
        # n(n-1)...(n-s): s+1 descending factors
        num = 1.0
        for j in range(s + 1):
            num *= n - j
        # prod_{j=-(s+1)}^{s} (d + j): 2s+2 factors
        mid = 1.0
        for j in range(-(s + 1), s + 1):
            mid *= d + j
        denom = math.factorial(s + 1) ** 2
        poch = 1.0
        for j in range(s + 1):
            poch *= gamma + j
        bracket += num * mid / (denom * poch)

    return poch_n_sign * math.exp(log_pref) * bracket
