"""The boundary extra term and its companions.

The central object is the origin limit

    Pi = (i hbar / 2m) lim_{r->0} r^2 [ (A R) R' - R (A R)' ]

for real radial functions R.  With R ~ a r^{-1/2+P} near the origin and an
operator of singularity exponent beta (A R ~ r^{-beta} R), the limit obeys a
trichotomy in the exponent margin 2P - beta: Zero above, Finite at, and
Divergent below the critical line.  The companion limits Pi' (from f'') and
Pi_tot (the full hypervirial boundary bracket) follow the same pattern.

Everything here works off the leading origin behavior only; the numeric
radius-ladder evaluator provides the independent cross-check.
"""

import math
from dataclasses import dataclass

import numpy as np

from .laurent import LaurentPoly, _as_laurent
from .operators import (
    F_AFTER_PR,
    MULTIPLY,
    PR,
    PR_AFTER_F,
    OperatorSpec,
    ExpSeries,
    apply_hamiltonian_series,
    apply_operator_series,
)
from .states import EXP_LINEAR, AnalyticForm, evaluate_R

ZERO = "Zero"
FINITE = "Finite"
DIVERGENT = "Divergent"

MARGIN_TOL = 1e-12


class ExtrapolationError(RuntimeError):
    """The radius ladder did not settle on a clean power law."""


class DivergentIntegralError(ValueError):
    """A hermiticity-defect integral diverges at the origin."""


@dataclass(frozen=True)
class PiResult:
    """Outcome of a boundary-limit evaluation.

    verdict is Zero / Finite / Divergent; value is the finite limit (0 for
    Zero); exponent_margin is the decided power of r (infinite when the
    bracket vanishes identically); formula_used labels the applied rule.
    """

    verdict: str
    value: complex
    exponent_margin: float
    formula_used: str

    @property
    def is_zero(self):
        return self.verdict == ZERO


def _classify(terms, prefactor, formula):
    """Trichotomy for a list of (coefficient, exponent) limit terms."""
    live = {}
    for coef, expnt in terms:
        live[expnt] = live.get(expnt, 0.0) + coef
    live = {e: c for e, c in live.items() if c != 0.0}
    if not live:
        return PiResult(ZERO, 0j, math.inf, formula)
    margin = min(live)
    if margin < -MARGIN_TOL:
        return PiResult(DIVERGENT, None, margin, formula)
    if margin > MARGIN_TOL:
        return PiResult(ZERO, 0j, margin, formula)
    value = prefactor * sum(c for e, c in live.items() if abs(e) <= MARGIN_TOL)
    return PiResult(FINITE, complex(value), margin, formula)


def _bracket_terms(op, P, a_prod):
    """(coefficient, exponent) of r^2 [(A R_y) R_x' - R_x (A R_y)'] / phase.

    Uses R_x ~ a_x r^{-1/2+P}, R_y ~ a_y r^{-1/2+P} with a_prod = a_x a_y;
    the diagonal case a_prod = a^2 is the single-state bracket.
    """
    if op.kind == PR:
        return [(a_prod * (P + 0.5), 2.0 * P - 1.0)]
    out = []
    for c, t in op.f.terms:
        if op.kind == MULTIPLY:
            out.append((-a_prod * c * t, t + 2.0 * P))
        elif op.kind == PR_AFTER_F:
            out.append((a_prod * c * (1.0 - t) * (t + P + 0.5), t + 2.0 * P - 1.0))
        else:  # F_AFTER_PR
            out.append((a_prod * c * (P + 0.5) * (1.0 - t), t + 2.0 * P - 1.0))
    return out


def _formula_label(origin, op):
    if op.kind == MULTIPLY and op.f.terms == ((1.0, 1),):
        return "Coordinate"
    if op.kind == PR:
        return "EhrenfestPr"
    lp = origin.leading_power
    return "Regular" if abs(lp - round(lp)) < 1e-12 else "SoftStandard"


def pi_pair(origin_x, origin_y, op, params):
    """The cross boundary term between two states sharing the exponent P."""
    if abs(origin_x.exponent - origin_y.exponent) > 1e-9:
        raise ValueError("cross bracket needs a common origin exponent")
    P = origin_x.exponent
    a_prod = origin_x.leading_coeff * origin_y.leading_coeff
    prefactor = (0.5j * params.hbar / params.mass) * op.phase(params)
    terms = _bracket_terms(op, P, a_prod)
    return _classify(terms, prefactor, _formula_label(origin_x, op))


def pi_analytic(origin, op, params):
    """Pi for a single state by the exponent trichotomy 2P vs beta.

    MultiplyF values come out purely imaginary, momentum-bearing ones purely
    real (the hbar/i of the radial momentum rotates the bracket).
    """
    return pi_pair(origin, origin, op, params)


def pi_prime(origin, f, params):
    """Pi' = -(i hbar / 2m) lim r^2 R^2 f''(r)."""
    f = _as_laurent(f)
    P = origin.exponent
    a_sq = origin.leading_coeff ** 2
    terms = [
        (-a_sq * c, p + 2.0 * P + 1.0) for c, p in f.derivative().derivative().terms
    ]
    prefactor = 0.5j * params.hbar / params.mass
    return _classify(terms, prefactor, "PiPrime")


def pi_total(origin, f, params):
    """The full hypervirial boundary bracket.

    Pi_tot = (hbar^2 a^2 / 4m) lim [ f'' r^{2P+1} + (2P+1)(f/r - f') r^{2P} ];
    for a monomial c r^t this is (hbar^2 a^2 c / 2m) K(t, P) at margin
    t + 2P - 1, with K = (t^2 - t)/2 + (P + 1/2)(1 - t).  At the critical
    power t = 1 - 2P the value reduces to 2 hbar^2 a^2 P^2 / m.
    """
    f = _as_laurent(f)
    P = origin.exponent
    a_sq = origin.leading_coeff ** 2
    terms = []
    for c, t in f.terms:
        K = 0.5 * (t * t - t) + (P + 0.5) * (1.0 - t)
        terms.append((a_sq * c * K, t + 2.0 * P - 1.0))
    prefactor = 0.5 * params.hbar ** 2 / params.mass
    return _classify(terms, prefactor, "PiTotal")


def bracket_at(state, op, r):
    """Pi(r): the bracket of the defining limit evaluated at finite radius."""
    p = state.params
    r = np.asarray(r, dtype=float)
    R, dR = evaluate_R(state, r)
    g, dg = op.apply_real(state, r)
    prefactor = (0.5j * p.hbar / p.mass) * op.phase(p)
    return prefactor * r ** 2 * (g * dR - R * dg)


def boundary_bracket_numeric(state, op, radii=None):
    """Extrapolated origin limit of the bracket on a descending radius ladder.

    Assumes Pi(r) = Pi + c r^mu near the origin; on a geometric ladder the
    correction is eliminated by one geometric-series extrapolation step.  A
    tail that neither settles nor grows monotonically raises.
    """
    if radii is None:
        radii = np.geomspace(1e-2, 1e-6, 17)
    radii = np.asarray(radii, dtype=float)
    vals = np.array([bracket_at(state, op, r) for r in radii])
    scale = np.abs(vals).max()
    if scale < 1e-13:
        return 0j
    diffs = np.diff(vals)
    mags = np.abs(diffs[-4:])
    if np.all(np.abs(vals[-4:]) >= np.abs(vals[-5:-1])) and np.abs(vals[-1]) > 10 * np.abs(vals[0]):
        # monotone blow-up: divergent bracket, report the innermost value
        return vals[-1]
    if not np.all(mags[1:] <= mags[:-1] * (1 + 1e-6)):
        raise ExtrapolationError("no clean power law in the bracket tail")
    if mags[-1] < 1e-15 * max(1.0, np.abs(vals[-1])):
        return vals[-1]
    q = diffs[-1] / diffs[-2]
    if abs(q) >= 1.0:
        raise ExtrapolationError("bracket differences are not contracting")
    return vals[-1] + diffs[-1] * q / (1.0 - q)


# ---------------------------------------------------------------------------
# hermiticity defect via exact series integrals


def _series_product_integral(sa: ExpSeries, sb: ExpSeries, drop_tol=0.0):
    """int sa(r) sb(r) r^2 dr on (0, inf), exact via gamma functions.

    The two series may carry different decay scales of the same kind (needed
    for cross elements between states of different energies).  drop_tol > 0
    discards divergent-power coefficients that are pure rounding residue of
    an exact cancellation, relative to the largest combined coefficient.
    """
    if sa.exp_kind != sb.exp_kind:
        raise ValueError("incompatible exponential weights")
    combined = {}
    for pa, ca in sa.powers.items():
        for pb, cb in sb.powers.items():
            p = pa + pb + 2.0
            combined[p] = combined.get(p, 0.0) + ca * cb
    cmax = max((abs(c) for c in combined.values()), default=0.0)
    total = 0.0
    for p, c in combined.items():
        if c == 0.0 or abs(c) <= drop_tol * cmax:
            continue
        if p <= -1.0:
            raise DivergentIntegralError(
                f"integrand term r^{p} is not integrable at the origin"
            )
        if sa.exp_kind == EXP_LINEAR:
            k = sa.scale + sb.scale
            total += c * math.gamma(p + 1.0) / k ** (p + 1.0)
        else:
            alpha = 0.5 * (sa.scale + sb.scale)
            total += c * 0.5 * math.gamma(0.5 * (p + 1.0)) / alpha ** (0.5 * (p + 1.0))
    return total


def hermiticity_defect(state, op):
    """<H psi | A psi> - <psi | H A psi>, both sides by exact integrals.

    Equals (hbar/i) Pi: nonzero exactly when the boundary term survives.
    Requires an analytic state whose potential has a Laurent closed form,
    so that H (A R) stays inside the series algebra.
    """
    if not isinstance(state.form, AnalyticForm):
        raise ValueError("hermiticity_defect needs an analytic state")
    v_laurent = state.potential.laurent()
    if v_laurent is None:
        raise ValueError("potential has no closed Laurent form")
    p = state.params
    r_series = ExpSeries.from_form(state.form)
    g = apply_operator_series(op, r_series)
    hg = apply_hamiltonian_series(g, state.l, v_laurent, p)
    phase = op.phase(p)
    # Integrate R * (E - H)(A R) as one merged series: the two sides may be
    # individually divergent at the origin while their difference is finite,
    # with the divergent powers cancelling exactly in the coefficients.
    diff = g.scaled(state.energy) + hg.scaled(-1.0)
    try:
        val = _series_product_integral(r_series, diff, drop_tol=1e-10)
    except DivergentIntegralError as exc:
        raise DivergentIntegralError(
            f"<H psi|A psi> - <psi|H A psi> diverges: {exc}"
        ) from exc
    return phase * val
