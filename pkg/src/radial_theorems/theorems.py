"""Theorem verifiers: Kramers sum rules, hypervirial identities, Ehrenfest
balances, the contact-density relation and the superposition time-derivative
identity.

Conventions.  Every sum rule is arranged so that the boundary right-hand
side is the non-negative quantity (hbar^2/2m)(2l+1)^2 C_l^2 (or its
soft-singular analogue) and the left-hand side moments are signed to match:
a modified rule passes with residual = sum(lhs) - rhs = 0, while the classic
rule (rhs forced to 0) fails by exactly the boundary value whenever the
delta condition triggers.

When individually divergent moments appear with cancelling Laurent
coefficients, the verifiers switch to combined mode: all terms are merged
into a single Laurent polynomial before integration, so the cancellation is
exact at the coefficient level.
"""

import math

import numpy as np

from . import matrix_elements as me
from .boundary import (
    DIVERGENT,
    pi_analytic,
    pi_pair,
    pi_total,
    _series_product_integral,
)
from .laurent import LaurentPoly, _as_laurent
from .matrix_elements import DivergentMomentError
from .operators import (
    ExpSeries,
    OperatorSpec,
    apply_hamiltonian_series,
    apply_operator_series,
)
from .potentials import REGULAR, SOFT_SINGULAR, Coulomb, Oscillator, classify_potential
from .reports import (
    CheckReport,
    ForceBalanceReport,
    SumRuleReport,
    TimeDerivativeReport,
)

CLASSIC = "classic"
MODIFIED = "modified"
COMMUTATOR = "commutator"
BRACKET = "bracket"

TOL_CLOSED = 1e-9
TOL_NUMERIC = 1e-5


class DivergentRuleError(ValueError):
    """A sum rule diverges even in combined mode."""


def _tolerance(state):
    return TOL_CLOSED if state.is_analytic else TOL_NUMERIC


def _case(state, **extra):
    case = {
        "potential": repr(state.potential),
        "n_r": state.n_r,
        "l": state.l,
        "energy": state.energy,
        "hbar": state.params.hbar,
        "mass": state.params.mass,
    }
    case.update(extra)
    return case


def _scale(values):
    return max([abs(v) for v in values] + [1e-300])


def _moment_terms(state, terms):
    """Evaluate labeled (name, LaurentPoly) terms, falling back to combined mode.

    Returns (lhs_terms, total).  Zero polynomials are reported as exact 0.
    """
    try:
        out = []
        for name, poly in terms:
            value = 0.0 if poly.is_zero else me.laurent_moment(state, poly)
            out.append((name, value))
        return tuple(out), sum(v for _, v in out)
    except DivergentMomentError:
        combined = LaurentPoly([])
        for _, poly in terms:
            combined = combined + poly
        try:
            total = me.laurent_moment(state, combined)
        except DivergentMomentError as exc:
            raise DivergentRuleError(
                f"non-cancelling divergent powers: {exc}"
            ) from exc
        return (("combined", total),), total


def kramers(state, s, mode=MODIFIED):
    """The (modified) Kramers three-term sum rule for Coulomb or oscillator.

    LHS terms are the negated classic recursion, so that the modified rule
    reads sum(lhs) = (hbar^2/2m)(2l+1)^2 C_l^2 when s+1 = -2l and the
    classic rule's residual exposes exactly that boundary value.
    """
    pot = state.potential
    if not isinstance(pot, (Coulomb, Oscillator)):
        raise ValueError("kramers applies to Coulomb and oscillator states only")
    if mode not in (CLASSIC, MODIFIED):
        raise ValueError(f"unknown mode {mode!r}")
    p = state.params
    l, E = state.l, state.energy
    s = int(s)
    if isinstance(pot, Coulomb):
        middle = ("-e2(2s+1)<r^(s-1)>", LaurentPoly.monomial(-pot.e2 * (2 * s + 1), s - 1))
    else:
        momega2 = p.mass * pot.omega ** 2
        middle = ("m*omega^2(s+2)<r^(s+2)>", LaurentPoly.monomial(momega2 * (s + 2), s + 2))
    terms = [
        ("-2E(s+1)<r^s>", LaurentPoly.monomial(-2.0 * E * (s + 1), s)),
        middle,
        (
            "-(s*hbar^2/4m)(s^2-(2l+1)^2)<r^(s-2)>",
            LaurentPoly.monomial(
                -s * p.hbar ** 2 / (4.0 * p.mass) * (s * s - (2 * l + 1) ** 2), s - 2
            ),
        ),
    ]
    lhs_terms, total = _moment_terms(state, terms)
    delta = s + 1 == -2 * l
    c_sq = state.origin.leading_coeff ** 2
    rhs = 0.0
    if mode == MODIFIED and delta:
        rhs = p.hbar ** 2 / (2.0 * p.mass) * (2 * l + 1) ** 2 * c_sq
    return SumRuleReport(
        rule=f"kramers-{mode}",
        case=_case(state, s_or_f=s, mode=mode),
        lhs_terms=lhs_terms,
        rhs_boundary=rhs,
        residual=total - rhs,
        scale=_scale([v for _, v in lhs_terms] + [rhs]),
        tolerance=_tolerance(state),
        delta_triggered=delta,
    )


def _pi_total_value(state, f):
    res = pi_total(state.origin, f, state.params)
    if res.verdict == DIVERGENT:
        raise DivergentRuleError(
            f"boundary bracket diverges (margin {res.exponent_margin})"
        )
    return res.value.real


def hypervirial_general(state, f, formulation=COMMUTATOR):
    """The general modified hypervirial theorem for a Laurent multiplier f.

    Commutator formulation: <Q> = Pi_tot with
    Q = -2f'(H-V) + (hbar^2 l(l+1)/m)(f'/r^2 - f/r^3) - (hbar^2/4m)f''' + fV'.
    Bracket formulation: the same identity assembled from the reduced-equation
    coefficient L = (2m/hbar^2)(E-V) - l(l+1)/r^2 by partial integration,
    rescaled to energy units so both residuals are directly comparable.
    """
    f = _as_laurent(f)
    v = state.potential.laurent()
    if v is None:
        raise ValueError("hypervirial_general needs a closed-form potential")
    p = state.params
    l, E = state.l, state.energy
    fp = f.derivative()
    kappa = p.hbar ** 2 / (2.0 * p.mass)
    if formulation == COMMUTATOR:
        terms = [
            ("-2E<f'>", -2.0 * E * fp),
            ("2<f'V>", 2.0 * fp * v),
            (
                "centrifugal",
                (p.hbar ** 2 * l * (l + 1) / p.mass)
                * (fp * LaurentPoly.monomial(1.0, -2) - f * LaurentPoly.monomial(1.0, -3)),
            ),
            ("-(hbar^2/4m)<f'''>", (-0.5 * kappa) * fp.derivative().derivative()),
            ("<fV'>", f * v.derivative()),
        ]
    elif formulation == BRACKET:
        L = (1.0 / kappa) * (LaurentPoly.const(E) - v) - l * (l + 1) * LaurentPoly.monomial(
            1.0, -2
        )
        terms = [
            ("-2<f'L>*kappa", (-2.0 * kappa) * (fp * L)),
            ("-<fL'>*kappa", (-kappa) * (f * L.derivative())),
            ("-(1/2)<f'''>*kappa", (-0.5 * kappa) * fp.derivative().derivative()),
        ]
    else:
        raise ValueError(f"unknown formulation {formulation!r}")
    lhs_terms, total = _moment_terms(state, terms)
    rhs = _pi_total_value(state, f)
    # Scale against the monomial moment magnitudes, not the assembled sums:
    # a term like <f L'> can be a near-perfect internal cancellation whose
    # value says nothing about the size of the quantities being balanced.
    magnitudes = [rhs]
    for _, poly in terms:
        for coeff, power in poly.terms:
            try:
                magnitudes.append(coeff * me.moment(state, power))
            except DivergentMomentError:
                pass
    return SumRuleReport(
        rule=f"hypervirial-{formulation}",
        case=_case(state, s_or_f=repr(f), mode=formulation),
        lhs_terms=lhs_terms,
        rhs_boundary=rhs,
        residual=total - rhs,
        scale=_scale(magnitudes),
        tolerance=_tolerance(state),
        delta_triggered=rhs != 0.0,
    )


def hypervirial_power(state, s):
    """The power-law hypervirial sum rule f = r^{s+1}.

    Regular potentials use the canonical normalization with RHS
    (2l+1)^2 C_l^2 delta_{s+1,-2l}; soft-singular ones carry twice the
    moment part with RHS a_st^2 s(s-2P) delta_{2P,-s}.
    """
    v = state.potential.laurent()
    if v is None:
        raise ValueError("hypervirial_power needs a closed-form potential")
    p = state.params
    l, E = state.l, state.energy
    s = int(s)
    kind = classify_potential(state.potential, p)
    factor = 2.0 if kind == SOFT_SINGULAR else 1.0
    two_m = 2.0 * p.mass / p.hbar ** 2
    terms = [
        (
            "(2m/hbar^2)<r^(s+1)V'>",
            (factor * two_m) * (LaurentPoly.monomial(1.0, s + 1) * v.derivative()),
        ),
        (
            "(4m/hbar^2)(s+1)<r^s V>",
            (factor * two_m * 2.0 * (s + 1)) * (LaurentPoly.monomial(1.0, s) * v),
        ),
        (
            "-(4m/hbar^2)(s+1)E<r^s>",
            LaurentPoly.monomial(-factor * two_m * 2.0 * (s + 1) * E, s),
        ),
        (
            "(s/2)((2l+1)^2-s^2)<r^(s-2)>",
            LaurentPoly.monomial(
                factor * 0.5 * s * ((2 * l + 1) ** 2 - s * s), s - 2
            ),
        ),
    ]
    lhs_terms, total = _moment_terms(state, terms)
    a_sq = state.origin.leading_coeff ** 2
    if kind == SOFT_SINGULAR:
        P = state.origin.exponent
        delta = abs(2.0 * P + s) < 1e-12
        rhs = a_sq * s * (s - 2.0 * P) if delta else 0.0
    else:
        delta = s + 1 == -2 * l
        rhs = (2 * l + 1) ** 2 * a_sq if delta else 0.0
    return SumRuleReport(
        rule="hypervirial-power",
        case=_case(state, s_or_f=s, mode=kind),
        lhs_terms=lhs_terms,
        rhs_boundary=rhs,
        residual=total - rhs,
        scale=_scale([v_ for _, v_ in lhs_terms] + [rhs]),
        tolerance=_tolerance(state),
        delta_triggered=delta,
    )


def _grid_average(state, func):
    """<func(r)> on a numeric state's grid."""
    from scipy.integrate import simpson

    form = state.form
    return simpson(form.u ** 2 * func(form.r) * form.r, x=np.log(form.r))


def ehrenfest_radial(state):
    """The radial-momentum force balance for a stationary state.

    d<p_r>/dt = centrifugal + <F_r> + Pi = 0 with F_r = -dV/dr and Pi the
    boundary quantum force (the finite p_r bracket).  In combined mode the
    two divergent moments are merged; the finite remainder is reported in
    mean_force and centrifugal is set to 0.
    """
    p = state.params
    l = state.l
    pi = pi_analytic(state.origin, OperatorSpec.pr(), p)
    if pi.verdict == DIVERGENT:
        raise DivergentRuleError(
            f"boundary force diverges (margin {pi.exponent_margin})"
        )
    boundary_force = pi.value.real
    v = state.potential.laurent()
    cent_poly = (p.hbar ** 2 * l * (l + 1) / p.mass) * LaurentPoly.monomial(1.0, -3)
    combined_mode = False
    if v is not None:
        force_poly = -1.0 * v.derivative()
        try:
            centrifugal = 0.0 if cent_poly.is_zero else me.laurent_moment(state, cent_poly)
            mean_force = me.laurent_moment(state, force_poly)
        except DivergentMomentError:
            combined_mode = True
            try:
                remainder = me.laurent_moment(state, cent_poly + force_poly)
            except DivergentMomentError as exc:
                raise DivergentRuleError(
                    f"force balance diverges even combined: {exc}"
                ) from exc
            centrifugal, mean_force = 0.0, remainder
    else:
        if state.is_analytic:
            raise ValueError("analytic state with no closed-form potential")
        centrifugal = (
            0.0 if l == 0 else me.moment(state, -3) * p.hbar ** 2 * l * (l + 1) / p.mass
        )
        mean_force = _grid_average(state, lambda r: -state.potential.dv_dr(r))
    balance = centrifugal + mean_force + boundary_force
    return ForceBalanceReport(
        case=_case(state),
        centrifugal=centrifugal,
        mean_force=mean_force,
        boundary_force=boundary_force,
        balance=balance,
        combined_mode=combined_mode,
        scale=_scale([centrifugal, mean_force, boundary_force]),
        tolerance=_tolerance(state),
    )


def ehrenfest_coordinate(state):
    """d<r>/dt = <p_r>/m for a stationary state: both sides vanish, Pi = Zero."""
    p = state.params
    pi = pi_analytic(state.origin, OperatorSpec.coordinate(), p)
    pr_over_m = me.expectation(state, OperatorSpec.pr()) / p.mass
    residual = abs(pr_over_m)
    return CheckReport(
        name="ehrenfest-coordinate",
        case=_case(state),
        lhs=0.0,
        rhs=pr_over_m,
        residual=residual,
        scale=1.0,
        tolerance=1e-10 if state.is_analytic else TOL_NUMERIC,
        info={"pi_verdict": pi.verdict, "pi_margin": pi.exponent_margin},
    )


def contact_density_check(state):
    """|psi(0)|^2 = (m/2 pi hbar^2) <dV/dr> for l = 0 states."""
    if state.l != 0:
        raise ValueError("contact-density relation requires l = 0")
    p = state.params
    c_sq = state.origin.leading_coeff ** 2
    v = state.potential.laurent()
    if v is not None:
        mean_vp = me.laurent_moment(state, v.derivative())
    else:
        mean_vp = _grid_average(state, state.potential.dv_dr)
    lhs = c_sq / (4.0 * math.pi)
    rhs = p.mass / (2.0 * math.pi * p.hbar ** 2) * mean_vp
    return CheckReport(
        name="contact-density",
        case=_case(state),
        lhs=lhs,
        rhs=rhs,
        residual=lhs - rhs,
        scale=_scale([lhs, rhs]),
        tolerance=_tolerance(state),
    )


def time_derivative_check(state_a, state_b, op, times=None):
    """d<A>/dt = (i/hbar)<[H,A]> + Pi on an equal-weight two-state superposition.

    All four pairwise matrix elements of A and [H, A] are computed by exact
    series integrals (H applied analytically); the superposition Pi is
    assembled from the four pairwise brackets with their beat phases.
    """
    if state_a.l != state_b.l or repr(state_a.potential) != repr(state_b.potential):
        raise me.IncompatibleStatesError("superposition needs matching l and potential")
    if not (state_a.is_analytic and state_b.is_analytic):
        raise ValueError("time_derivative_check needs analytic states")
    v = state_a.potential.laurent()
    if v is None:
        raise ValueError("time_derivative_check needs a closed-form potential")
    p = state_a.params
    l = state_a.l
    phase = op.phase(p)
    states = (state_a, state_b)
    series = [ExpSeries.from_form(st.form) for st in states]
    g = [apply_operator_series(op, s) for s in series]
    hg = [apply_hamiltonian_series(gs, l, v, p) for gs in g]

    def elem(x, y, target):
        return phase * _series_product_integral(series[x], target[y])

    A = {(x, y): elem(x, y, g) for x in (0, 1) for y in (0, 1)}
    # [H, A]_xy = <x|H A y> - E_y <x|A y>
    C = {
        (x, y): elem(x, y, hg) - states[y].energy * A[(x, y)]
        for x in (0, 1)
        for y in (0, 1)
    }
    Pi = {}
    for x in (0, 1):
        for y in (0, 1):
            res = pi_pair(states[x].origin, states[y].origin, op, p)
            if res.verdict == DIVERGENT:
                raise DivergentRuleError("superposition boundary term diverges")
            Pi[(x, y)] = res.value

    omega = (state_a.energy - state_b.energy) / p.hbar
    if times is None:
        period = 2.0 * math.pi / abs(omega) if omega != 0.0 else 1.0
        times = period * np.arange(16) / 16.0
    times = tuple(float(t) for t in times)

    residuals, pi_values, omitted = [], [], []
    char = [abs(omega) * max(abs(A[(0, 1)]), abs(A[(1, 0)]))]
    for t in times:
        ph = np.exp(1j * omega * t)  # e^{i(E_a - E_b)t/hbar} on the (a|b) element
        dA_dt = 0.5 * 1j * omega * (A[(0, 1)] * ph - A[(1, 0)] / ph)
        comm = 0.5 * (C[(0, 0)] + C[(1, 1)] + C[(0, 1)] * ph + C[(1, 0)] / ph)
        pi_t = 0.5 * (Pi[(0, 0)] + Pi[(1, 1)] + Pi[(0, 1)] * ph + Pi[(1, 0)] / ph)
        rhs = (1j / p.hbar) * comm + pi_t
        residuals.append(dA_dt - rhs)
        pi_values.append(pi_t)
        omitted.append((1j / p.hbar) * comm - dA_dt)
        char.append(abs((1j / p.hbar) * comm))
        char.append(abs(pi_t))
    scale = max(max(char), 1e-300) if max(char) > 0 else 1.0
    return TimeDerivativeReport(
        case=_case(state_a, partner_n_r=state_b.n_r, op=op.kind),
        times=times,
        residuals=tuple(residuals),
        pi_values=tuple(pi_values),
        omitted_residuals=tuple(omitted),
        scale=scale,
        tolerance=1e-7,
    )
