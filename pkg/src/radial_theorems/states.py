"""Normalized radial bound states.

Analytic states are stored as  R(r) = r^L * (sum_j c_j r^j) * w(r)  with
w = exp(-lam r) (Coulomb family) or exp(-alpha r^2 / 2) (oscillator family),
so values, derivatives and origin limits are exact.  Numeric states carry a
logarithmic grid of the reduced function u = r R produced by the shooting
solver.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import specfun
from .potentials import (
    Coulomb,
    Oscillator,
    OriginBehavior,
    PhysicalParams,
)

EXP_LINEAR = "exp-linear"  # w = exp(-scale * r)
EXP_GAUSS = "exp-gauss"  # w = exp(-scale * r^2 / 2)


class ExtrapolationError(ValueError):
    """A numeric state was evaluated outside its grid."""


def _polyval(r, coeffs):
    if len(coeffs) == 0:
        return np.zeros_like(np.asarray(r, dtype=float))
    return np.polynomial.polynomial.polyval(r, coeffs)


@dataclass(frozen=True)
class AnalyticForm:
    """R(r) = r^lead * polyval(coeffs, r) * weight(r)."""

    coeffs: tuple  # ascending, coeffs[0] != 0
    lead: int
    exp_kind: str
    scale: float

    def _weight(self, r):
        if self.exp_kind == EXP_LINEAR:
            return np.exp(-self.scale * r)
        return np.exp(-0.5 * self.scale * r ** 2)

    def _dlog_weight(self, r):
        if self.exp_kind == EXP_LINEAR:
            return -self.scale * np.ones_like(np.asarray(r, dtype=float))
        return -self.scale * r

    def value(self, r):
        r = np.asarray(r, dtype=float)
        p = np.polynomial.polynomial.polyval(r, self.coeffs)
        return r ** self.lead * p * self._weight(r)

    def derivative(self, r):
        r = np.asarray(r, dtype=float)
        c = np.asarray(self.coeffs)
        p = np.polynomial.polynomial.polyval(r, c)
        dp = _polyval(r, np.arange(1, len(c)) * c[1:])
        w = self._weight(r)
        out = r ** self.lead * (dp + p * self._dlog_weight(r)) * w
        if self.lead != 0:
            out = out + self.lead * r ** (self.lead - 1) * p * w
        return out

    def second_derivative(self, r):
        r = np.asarray(r, dtype=float)
        c = np.asarray(self.coeffs)
        p = np.polynomial.polynomial.polyval(r, c)
        dc = np.arange(1, len(c)) * c[1:]
        dp = _polyval(r, dc)
        d2p = _polyval(r, np.arange(1, len(dc)) * dc[1:])
        g = self._dlog_weight(r)  # w'/w
        if self.exp_kind == EXP_LINEAR:
            dg = 0.0
        else:
            dg = -self.scale
        L = self.lead
        w = self._weight(r)
        # (r^L p w)'' expanded with w''/w = g^2 + dg; r > 0 always
        out = (
            L * (L - 1) * r ** (L - 2) * p
            + 2 * L * r ** (L - 1) * (dp + p * g)
            + r ** L * (d2p + 2 * dp * g + p * (g ** 2 + dg))
        )
        return out * w


@dataclass(frozen=True)
class NumericForm:
    """Reduced-function samples u = r R on a logarithmic grid."""

    r: np.ndarray
    u: np.ndarray
    spline: object = field(repr=False)  # CubicSpline of u over x = ln r
    series_coeffs: tuple  # (a, c1, c2) for u ~ a r^sigma (1 + c1 r + c2 r^2)
    sigma: float


@dataclass(frozen=True)
class RadialState:
    """A normalized bound state of a central potential."""

    potential: object
    l: int
    n_r: int
    energy: float
    origin: OriginBehavior
    form: object
    params: PhysicalParams = PhysicalParams()

    @property
    def is_analytic(self):
        return isinstance(self.form, AnalyticForm)

    def R(self, r):
        return evaluate_R(self, r)[0]


def _coulomb_length(e2, params):
    return params.hbar ** 2 / (params.mass * e2)


def make_coulomb_state(n, l, e2, params=PhysicalParams()):
    """Normalized Coulomb bound state with principal quantum number n.

    E = -m e^4 / (2 hbar^2 n^2); the radial part is
    C_l r^l exp(-B r / 2n) 1F1(-(n-l-1); 2l+2; B r / n) with B = 2/a0.
    The normalization constant is computed from the closed-form moment
    integral, which also pins down the origin coefficient C_l exactly.
    """
    if not (isinstance(n, (int, np.integer)) and n >= 1):
        raise ValueError(f"principal quantum number must be an integer >= 1, got {n}")
    if not (0 <= l <= n - 1):
        raise ValueError(f"need 0 <= l <= n-1, got l={l}, n={n}")
    if l > specfun.MAX_ANGULAR_MOMENTUM:
        raise ValueError(f"l={l} exceeds supported maximum {specfun.MAX_ANGULAR_MOMENTUM}")
    a0 = _coulomb_length(e2, params)
    B = 2.0 / a0
    k = B / n
    n_r = n - l - 1
    energy = -params.mass * e2 ** 2 / (2.0 * params.hbar ** 2 * n ** 2)

    # normalization: 1/C_l^2 = int r^{2l+2} e^{-kr} F^2 dr
    norm_int = specfun.kummer_moment_integral(n_r, 2 * l + 2, k, 2 * l + 3)
    c_l = math.sqrt(1.0 / norm_int)

    poly = specfun.kummer_poly_coeffs(n_r, 2 * l + 2) * k ** np.arange(n_r + 1)
    coeffs = tuple(c_l * poly)
    form = AnalyticForm(coeffs=coeffs, lead=l, exp_kind=EXP_LINEAR, scale=0.5 * k)
    origin = OriginBehavior(exponent=l + 0.5, leading_coeff=c_l, leading_power=l)
    return RadialState(
        potential=Coulomb(e2),
        l=l,
        n_r=n_r,
        energy=energy,
        origin=origin,
        form=form,
        params=params,
    )


def make_oscillator_state(n_r, l, omega, params=PhysicalParams()):
    """Normalized isotropic-oscillator bound state.

    E = hbar omega (2 n_r + l + 3/2); the radial part is
    C r^l exp(-alpha r^2 / 2) 1F1(-n_r; l+3/2; alpha r^2), alpha = m omega / hbar.
    """
    if n_r < 0 or l < 0:
        raise ValueError("quantum numbers must be nonnegative")
    if l > specfun.MAX_ANGULAR_MOMENTUM:
        raise ValueError(f"l={l} exceeds supported maximum {specfun.MAX_ANGULAR_MOMENTUM}")
    alpha = params.mass * omega / params.hbar
    energy = params.hbar * omega * (2 * n_r + l + 1.5)

    # <1> = C^2 / (2 alpha^{(2l+3)/2}) * I(n_r, l+3/2, 1, l+3/2)
    norm_int = specfun.kummer_moment_integral(n_r, l + 1.5, 1.0, l + 1.5)
    c = math.sqrt(2.0 * alpha ** (l + 1.5) / norm_int)

    poly_sq = specfun.kummer_poly_coeffs(n_r, l + 1.5) * alpha ** np.arange(n_r + 1)
    coeffs = np.zeros(2 * n_r + 1)
    coeffs[::2] = poly_sq  # polynomial in r^2 written over r
    form = AnalyticForm(coeffs=tuple(c * coeffs), lead=l, exp_kind=EXP_GAUSS, scale=alpha)
    origin = OriginBehavior(exponent=l + 0.5, leading_coeff=c, leading_power=l)
    return RadialState(
        potential=Oscillator(omega, params),
        l=l,
        n_r=n_r,
        energy=energy,
        origin=origin,
        form=form,
        params=params,
    )


def evaluate_R(state, r):
    """R(r) and R'(r).

    Analytic states are exact; numeric states use cubic interpolation of the
    reduced function on the log grid and the stored origin series below the
    first grid point.
    """
    form = state.form
    if isinstance(form, AnalyticForm):
        return form.value(r), form.derivative(r)

    scalar = np.isscalar(r)
    r = np.atleast_1d(np.asarray(r, dtype=float))
    if np.any(r > form.r[-1] * (1 + 1e-12)) or np.any(r <= 0):
        raise ExtrapolationError("radius outside the numeric grid")
    R = np.empty_like(r)
    dR = np.empty_like(r)
    inner = r < form.r[0]
    if np.any(inner):
        a, c1, c2 = form.series_coeffs
        s = form.sigma
        ri = r[inner]
        u = a * ri ** s * (1 + c1 * ri + c2 * ri ** 2)
        du = a * (
            s * ri ** (s - 1)
            + (s + 1) * c1 * ri ** s
            + (s + 2) * c2 * ri ** (s + 1)
        )
        R[inner] = u / ri
        dR[inner] = du / ri - u / ri ** 2
    out = ~inner
    if np.any(out):
        x = np.log(r[out])
        u = form.spline(x)
        du = form.spline(x, 1) / r[out]  # du/dr = (du/dx)/r
        R[out] = u / r[out]
        dR[out] = du / r[out] - u / r[out] ** 2
    if scalar:
        return R[0], dR[0]
    return R, dR


def second_derivative_R(state, r):
    """R''(r): exact for analytic forms, via the radial equation otherwise.

    For numeric states the ODE  R'' = -2R'/r + [l(l+1)/r^2 + 2m(V-E)/hbar^2] R
    gives R'' without differentiating the interpolant twice.
    """
    form = state.form
    if isinstance(form, AnalyticForm):
        return form.second_derivative(r)
    R, dR = evaluate_R(state, r)
    p = state.params
    w = state.l * (state.l + 1) / np.asarray(r, dtype=float) ** 2 + (
        2.0 * p.mass / p.hbar ** 2
    ) * (state.potential(r) - state.energy)
    return -2.0 * dR / r + w * R


def count_nodes(state, r_lo=None, r_hi=None, n_samples=4000):
    """Sign changes of R on (0, inf), ignoring the decayed tail."""
    if state.is_analytic:
        scale = state.form.scale
        hi = 40.0 / scale if state.form.exp_kind == EXP_LINEAR else 8.0 / math.sqrt(scale)
        r = np.geomspace(1e-6 * hi, hi, n_samples)
        vals = state.form.value(r)
    else:
        r = state.form.r
        vals = state.form.u
    mags = np.abs(vals)
    keep = mags > 1e-9 * mags.max()
    signs = np.sign(vals[keep])
    return int(np.sum(signs[1:] != signs[:-1]))
