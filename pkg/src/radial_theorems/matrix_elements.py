"""Radial moments and operator matrix elements by two independent routes.

Closed-form moments go through the weighted Kummer integral; the quadrature
route integrates the same density adaptively and serves as the independent
oracle.  Numeric (grid) states use composite integration on their log mesh
with an origin correction from the fitted power-law series.
"""

import numpy as np
from scipy.integrate import quad, simpson

from . import specfun
from .laurent import LaurentPoly, _as_laurent
from .operators import MULTIPLY, OperatorSpec
from .states import EXP_GAUSS, EXP_LINEAR, AnalyticForm, NumericForm, evaluate_R


class DivergentMomentError(ValueError):
    """The requested moment diverges at the origin."""


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to converge."""


class IncompatibleStatesError(ValueError):
    """Cross elements require the same l and the same potential."""


def _origin_exponent_of_integrand(state, s):
    return 2.0 * state.origin.leading_power + s + 2.0


def _require_integrable(state, s):
    if _origin_exponent_of_integrand(state, s) <= -1.0 + 1e-12:
        raise DivergentMomentError(
            f"<r^{s}> diverges: origin integrand exponent "
            f"{_origin_exponent_of_integrand(state, s)} <= -1"
        )


def moment_closed(state, s):
    """<r^s> from the closed-form weighted Kummer integral (analytic states)."""
    form = state.form
    if not isinstance(form, AnalyticForm):
        raise ValueError("moment_closed requires an analytic state")
    _require_integrable(state, s)
    l, n_r = state.l, state.n_r
    c_sq = state.origin.leading_coeff ** 2
    if form.exp_kind == EXP_LINEAR:
        k = 2.0 * form.scale
        return c_sq * specfun.kummer_moment_integral(n_r, 2 * l + 2, k, 2 * l + s + 3)
    alpha = form.scale
    nu = 0.5 * (2 * l + s + 3)
    integral = specfun.kummer_moment_integral(n_r, l + 1.5, 1.0, nu)
    return c_sq * integral / (2.0 * alpha ** nu)


def _split_radius(form):
    if form.exp_kind == EXP_LINEAR:
        return 10.0 / form.scale
    return 10.0 / np.sqrt(form.scale)


def moment_quadrature(state, s):
    """<r^s> by adaptive quadrature of R^2 r^{s+2} (independent oracle)."""
    _require_integrable(state, s)
    form = state.form
    if isinstance(form, NumericForm):
        return _grid_moment(state, s)

    def density(r):
        return state.R(r) ** 2 * r ** (s + 2.0)

    r_split = _split_radius(form)
    head, err1 = quad(density, 0.0, r_split, epsabs=1e-13, epsrel=1e-12, limit=400)
    tail, err2 = quad(density, r_split, np.inf, epsabs=1e-13, epsrel=1e-12, limit=400)
    value = head + tail
    if err1 + err2 > max(1e-12, 1e-9 * abs(value)):
        raise QuadratureError(f"<r^{s}> quadrature error estimate {err1 + err2:g}")
    return value


def moment(state, s):
    """<r^s> by the best available route for the state's representation."""
    if isinstance(state.form, AnalyticForm):
        return moment_closed(state, s)
    return _grid_moment(state, s)


def _grid_moment(state, s):
    """Composite log-mesh integral of u^2 r^s with an origin series correction."""
    _require_integrable(state, s)
    form = state.form
    x = np.log(form.r)
    body = simpson(form.u ** 2 * form.r ** (s + 1.0), x=x)
    a, c1, c2 = form.series_coeffs
    sig = form.sigma
    r0 = form.r[0]
    head = 0.0
    for coef, extra in ((1.0, 0), (2.0 * c1, 1), (c1 ** 2 + 2.0 * c2, 2)):
        expnt = 2.0 * sig + s + 1.0 + extra
        head += coef * r0 ** expnt / expnt
    return body + a ** 2 * head


def laurent_moment(state, f):
    """<f(r)> for a Laurent multiplier, term by term."""
    f = _as_laurent(f)
    return sum(c * moment(state, p) for c, p in f.terms)


def _require_op_integrable(state, op):
    margin = 2.0 * state.origin.leading_power + 2.0 - op.beta
    if margin <= -1.0 + 1e-12:
        raise DivergentMomentError(
            f"<A> diverges: origin integrand exponent {margin} <= -1 (beta={op.beta})"
        )


def expectation(state, op):
    """<A> = int R (A R) r^2 dr as a complex number.

    `op` may be a single OperatorSpec or a sequence; a sequence of pure
    multipliers is combined symbolically first, so that individually
    divergent pieces whose Laurent coefficients cancel integrate cleanly
    (combined mode).
    """
    ops = [op] if isinstance(op, OperatorSpec) else list(op)
    if all(o.kind == MULTIPLY for o in ops):
        f_total = ops[0].f
        for o in ops[1:]:
            f_total = f_total + o.f
        if f_total.is_zero:
            return 0.0 + 0.0j
        combined = OperatorSpec.multiply(f_total)
        _require_op_integrable(state, combined)
        return complex(laurent_moment(state, combined.f))

    total = 0.0 + 0.0j
    for o in ops:
        _require_op_integrable(state, o)
        total += _momentum_expectation(state, state, o)
    return total


def _integrate_product(state_a, state_b, g_func):
    """int R_a(r) g(r) r^2 dr with g built from state_b."""
    form = state_a.form
    if isinstance(form, NumericForm):
        r = form.r
        Ra, _ = evaluate_R(state_a, r)
        vals = Ra * g_func(r) * r ** 2
        return simpson(vals * r, x=np.log(r))

    def integrand(r):
        Ra, _ = evaluate_R(state_a, r)
        return Ra * g_func(r) * r ** 2

    r_split = _split_radius(form)
    head, _ = quad(integrand, 0.0, r_split, epsabs=1e-13, epsrel=1e-12, limit=400)
    tail, _ = quad(integrand, r_split, np.inf, epsabs=1e-13, epsrel=1e-12, limit=400)
    return head + tail


def _momentum_expectation(state_a, state_b, op):
    phase = op.phase(state_b.params)

    def g(r):
        val, _ = op.apply_real(state_b, np.asarray(r, dtype=float))
        return val

    return phase * _integrate_product(state_a, state_b, g)


def _same_potential(a, b):
    return repr(a.potential) == repr(b.potential)


def cross_element(state_a, state_b, op):
    """<a| A |b> = int R_a (A R_b) r^2 dr for states of one potential and l."""
    if state_a.l != state_b.l or not _same_potential(state_a, state_b):
        raise IncompatibleStatesError("cross elements need matching l and potential")
    margin = (
        state_a.origin.leading_power + state_b.origin.leading_power + 2.0 - op.beta
    )
    if margin <= -1.0 + 1e-12:
        raise DivergentMomentError(f"cross element diverges (exponent {margin})")
    if op.kind == MULTIPLY:
        return complex(_integrate_product(state_a, state_b, lambda r: op.f(r) * state_b.R(r)))
    return _momentum_expectation(state_a, state_b, op)
