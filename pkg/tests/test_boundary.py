"""Boundary extra term: trichotomy, finite values, numeric confirmation."""

import math

import numpy as np
import pytest

from radial_theorems.boundary import (
    DIVERGENT,
    FINITE,
    ZERO,
    boundary_bracket_numeric,
    bracket_at,
    hermiticity_defect,
    pi_analytic,
    pi_pair,
    pi_prime,
    pi_total,
)
from radial_theorems.laurent import LaurentPoly
from radial_theorems.operators import OperatorSpec
from radial_theorems.potentials import OriginBehavior, PhysicalParams
from radial_theorems.states import make_coulomb_state, make_oscillator_state

PARAMS = PhysicalParams()


def _origin(P, a=1.0):
    return OriginBehavior(exponent=P, leading_coeff=a, leading_power=P - 0.5)


def test_hydrogen_1s_radial_momentum_finite():
    st = make_coulomb_state(1, 0, 1.0)
    res = pi_analytic(st.origin, OperatorSpec.pr(), PARAMS)
    assert res.verdict == FINITE
    # C0^2 hbar^2 / (2m) with C0 = 2 in atomic units
    assert res.value == pytest.approx(2.0, rel=1e-14)


def test_hydrogen_2p_radial_momentum_zero():
    st = make_coulomb_state(2, 1, 1.0)
    res = pi_analytic(st.origin, OperatorSpec.pr(), PARAMS)
    assert res.verdict == ZERO
    assert res.exponent_margin == pytest.approx(2.0)


def test_soft_state_radial_momentum_divergent():
    res = pi_analytic(_origin(0.3), OperatorSpec.pr(), PARAMS)
    assert res.verdict == DIVERGENT
    assert res.exponent_margin == pytest.approx(-0.4)


def test_coordinate_operator_always_zero_for_regular():
    st = make_coulomb_state(1, 0, 1.0)
    res = pi_analytic(st.origin, OperatorSpec.coordinate(), PARAMS)
    assert res.verdict == ZERO


def test_inverse_r_multiplier_imaginary_finite():
    st = make_coulomb_state(1, 0, 1.0)
    op = OperatorSpec.multiply(LaurentPoly.monomial(1.0, -1))
    res = pi_analytic(st.origin, op, PARAMS)
    assert res.verdict == FINITE
    assert res.value == pytest.approx(2.0j, rel=1e-14)  # i * C0^2 hbar / (2m)


def test_numeric_bracket_confirms_finite_value():
    st = make_coulomb_state(1, 0, 1.0)
    num = boundary_bracket_numeric(st, OperatorSpec.pr())
    assert num == pytest.approx(2.0, rel=1e-6)


def test_numeric_bracket_confirms_zero():
    st = make_coulomb_state(2, 1, 1.0)
    num = boundary_bracket_numeric(st, OperatorSpec.pr())
    assert abs(num) < 1e-8


def test_bracket_at_radius_tracks_limit():
    st = make_coulomb_state(1, 0, 1.0)
    inner = bracket_at(st, OperatorSpec.pr(), 1e-5)
    assert inner == pytest.approx(2.0, rel=1e-4)


def test_margin_rule_synthetic_grid():
    # Multiplier r^t has scale dimension beta = -t; verdict from 2P - beta.
    for P in (0.5, 0.75, 1.5, 2.5):
        for t in (-4, -2, -1, 1, 2):
            op = OperatorSpec.multiply(LaurentPoly.monomial(1.0, t))
            res = pi_analytic(_origin(P), op, PARAMS)
            margin = 2 * P + t
            if margin > 1e-12:
                assert res.verdict == ZERO
            elif margin < -1e-12:
                assert res.verdict == DIVERGENT
            else:
                assert res.verdict == FINITE


def test_constant_multiplier_is_exactly_zero():
    # f = const commutes through the bracket: coefficient vanishes identically
    # even when the exponent margin alone would say divergent.
    op = OperatorSpec.multiply(LaurentPoly.const(3.0))
    res = pi_analytic(_origin(0.5), op, PARAMS)
    assert res.verdict == ZERO


def test_pi_pair_reduces_to_diagonal():
    st = make_coulomb_state(1, 0, 1.0)
    res = pi_pair(st.origin, st.origin, OperatorSpec.pr(), PARAMS)
    assert res.value == pytest.approx(2.0, rel=1e-14)


def test_pi_pair_cross_coefficients():
    # cross term scales with a_X a_Y instead of a^2
    a = _origin(0.5, a=2.0)
    b = _origin(0.5, a=3.0)
    res = pi_pair(a, b, OperatorSpec.pr(), PARAMS)
    diag = pi_pair(a, a, OperatorSpec.pr(), PARAMS)
    assert res.value == pytest.approx(diag.value * 3.0 / 2.0, rel=1e-14)


def test_pi_prime_divergent_for_inverse_r_soft():
    res = pi_prime(_origin(0.5), LaurentPoly.monomial(1.0, -1), PARAMS)
    assert res.verdict == DIVERGENT
    assert res.exponent_margin == pytest.approx(-1.0)


def test_pi_total_constant_f_soft_value():
    # f = 1 at P = 1/2: 2 a^2 P^2 / m
    a = 1.7
    res = pi_total(_origin(0.5, a=a), LaurentPoly.const(1.0), PARAMS)
    assert res.verdict == FINITE
    assert res.value == pytest.approx(2.0 * a ** 2 * 0.25, rel=1e-14)


def test_pi_total_combination_identity_on_exponent_grid():
    # The total boundary term equals the momentum-weighted bracket plus
    # (3/2) i hbar times the density correction, term by term in exponents.
    params = PARAMS
    for P in (0.5, 0.75, 1.0, 1.25):
        t = 1 - 2 * P
        if abs(t - round(t)) > 1e-12:
            continue
        f = LaurentPoly.monomial(1.0, int(round(t)))
        origin = _origin(P, a=1.3)
        tot = pi_total(origin, f, params)
        mom = pi_analytic(origin, OperatorSpec.pr_after_f(f), params)
        dens = pi_prime(origin, f, params)
        assert tot.verdict == FINITE
        combined = mom.value + 1.5j * (dens.value if dens.verdict == FINITE else 0.0)
        assert tot.value == pytest.approx(combined, rel=1e-12)


def test_hermiticity_defect_law():
    st = make_coulomb_state(1, 0, 1.0)
    for op in (
        OperatorSpec.pr(),
        OperatorSpec.multiply(LaurentPoly.monomial(1.0, -1)),
        OperatorSpec.pr_after_f(LaurentPoly.const(1.0)),
    ):
        pi = pi_analytic(st.origin, op, PARAMS)
        defect = hermiticity_defect(st, op)
        assert defect == pytest.approx(pi.value / 1j, rel=1e-10, abs=1e-12)


def test_hermiticity_defect_zero_for_regular_pr():
    st = make_coulomb_state(2, 1, 1.0)
    assert abs(hermiticity_defect(st, OperatorSpec.pr())) < 1e-10


def test_oscillator_soft_free_boundary_value():
    st = make_oscillator_state(0, 0, 1.0)
    res = pi_analytic(st.origin, OperatorSpec.pr(), PARAMS)
    assert res.verdict == FINITE
    # C00^2 / 2 = 2/sqrt(pi)
    assert res.value == pytest.approx(2.0 / math.sqrt(math.pi), rel=1e-13)
    # the Gaussian tail converges so fast that the default radii bottom out
    # in rounding noise; sample where the O(r^2) correction is resolvable
    radii = np.geomspace(0.3, 1e-3, 17)
    num = boundary_bracket_numeric(st, OperatorSpec.pr(), radii=radii)
    assert num == pytest.approx(res.value.real, rel=1e-6)
