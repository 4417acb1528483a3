"""Sum rules, force balances and the superposition identity."""

import math

import numpy as np
import pytest

from radial_theorems import theorems
from radial_theorems.boundary import pi_analytic
from radial_theorems.laurent import LaurentPoly
from radial_theorems.operators import OperatorSpec
from radial_theorems.states import make_coulomb_state, make_oscillator_state


def test_kramers_modified_coulomb_regular_case():
    # s = 2 for 1s: plain recursion territory, no boundary term
    st = make_coulomb_state(1, 0, 1.0)
    rep = theorems.kramers(st, 2)
    assert rep.passed
    assert not rep.delta_triggered
    assert rep.rhs_boundary == 0.0


def test_kramers_delta_case_hydrogen_ground():
    st = make_coulomb_state(1, 0, 1.0)
    rep = theorems.kramers(st, -1)
    assert rep.delta_triggered
    assert rep.rhs_boundary == pytest.approx(2.0, rel=1e-14)
    assert sum(v for _, v in rep.lhs_terms) == pytest.approx(2.0, rel=1e-12)
    assert rep.passed


def test_kramers_delta_case_2p():
    st = make_coulomb_state(2, 1, 1.0)
    rep = theorems.kramers(st, -3)
    assert rep.delta_triggered
    assert rep.rhs_boundary == pytest.approx(3.0 / 16.0, rel=1e-12)
    assert rep.passed


def test_kramers_classic_fails_by_the_boundary_amount():
    st = make_coulomb_state(1, 0, 1.0)
    mod = theorems.kramers(st, -1, theorems.MODIFIED)
    cla = theorems.kramers(st, -1, theorems.CLASSIC)
    assert not cla.passed
    assert cla.residual == pytest.approx(mod.rhs_boundary, rel=1e-12)


def test_kramers_oscillator_ground_delta():
    st = make_oscillator_state(0, 0, 1.0)
    rep = theorems.kramers(st, -1)
    assert rep.delta_triggered
    assert rep.rhs_boundary == pytest.approx(2.0 / math.sqrt(math.pi), rel=1e-13)
    assert rep.passed


def test_kramers_sweep_coulomb():
    for n in range(1, 6):
        for l in range(n):
            st = make_coulomb_state(n, l, 1.0)
            for s in range(-(2 * l + 1), 5):
                rep = theorems.kramers(st, s)
                assert rep.passed, (n, l, s, rep.residual)


def test_kramers_sweep_oscillator():
    for n_r in range(5):
        for l in range(5):
            st = make_oscillator_state(n_r, l, 1.0)
            for s in range(-(2 * l + 1), 5):
                rep = theorems.kramers(st, s)
                assert rep.passed, (n_r, l, s, rep.residual)


def test_hypervirial_virial_special_case():
    # f = r gives the virial balance; for Coulomb 2<T> = -<V>
    st = make_coulomb_state(2, 1, 1.0)
    rep = theorems.hypervirial_general(st, LaurentPoly.monomial(1.0, 1))
    assert rep.passed
    assert rep.rhs_boundary == 0.0


def test_hypervirial_formulations_agree():
    rng = np.random.default_rng(11)
    states = [make_coulomb_state(3, 1, 1.0), make_oscillator_state(1, 2, 1.0)]
    for st in states:
        for _ in range(10):
            powers = rng.choice(np.arange(0, 5), size=2, replace=False)
            f = LaurentPoly([(float(rng.uniform(-2, 2)), int(p)) for p in powers])
            a = theorems.hypervirial_general(st, f, theorems.COMMUTATOR)
            b = theorems.hypervirial_general(st, f, theorems.BRACKET)
            assert a.residual == pytest.approx(b.residual, abs=1e-9 * max(a.scale, 1.0))


def test_hypervirial_power_regular_matches_kramers_pass():
    st = make_coulomb_state(2, 0, 1.0)
    for s in (0, 1, 2):
        rep = theorems.hypervirial_power(st, s)
        assert rep.passed


def test_hypervirial_power_delta_case():
    st = make_coulomb_state(1, 0, 1.0)
    rep = theorems.hypervirial_power(st, -1)
    assert rep.delta_triggered
    assert rep.passed
    assert rep.rhs_boundary != 0.0


def test_ehrenfest_radial_l0_boundary_force():
    # ns states: mean radial force -2/n^3 balanced by the boundary force
    for n in (1, 2, 3):
        st = make_coulomb_state(n, 0, 1.0)
        rep = theorems.ehrenfest_radial(st)
        assert rep.passed
        assert rep.mean_force == pytest.approx(-2.0 / n ** 3, rel=1e-12)
        assert rep.boundary_force == pytest.approx(2.0 / n ** 3, rel=1e-12)
        assert rep.centrifugal == 0.0


def test_ehrenfest_radial_l_positive_cancellation():
    st = make_coulomb_state(3, 2, 1.0)
    rep = theorems.ehrenfest_radial(st)
    assert rep.passed
    assert rep.boundary_force == 0.0
    assert rep.centrifugal == pytest.approx(-rep.mean_force, rel=1e-12)


def test_ehrenfest_omitting_boundary_leaves_it_as_imbalance():
    st = make_coulomb_state(2, 0, 1.0)
    rep = theorems.ehrenfest_radial(st)
    pi = pi_analytic(st.origin, OperatorSpec.pr(), st.params)
    imbalance = rep.centrifugal + rep.mean_force
    assert imbalance == pytest.approx(-pi.value.real, rel=1e-12)


def test_ehrenfest_coordinate_identity():
    for st in (make_coulomb_state(1, 0, 1.0), make_oscillator_state(1, 1, 1.0)):
        rep = theorems.ehrenfest_coordinate(st)
        assert rep.passed


def test_contact_density_hydrogen():
    # |psi(0)|^2 = 1/(pi n^3) in atomic units for ns states
    for n in (1, 2, 3):
        st = make_coulomb_state(n, 0, 1.0)
        rep = theorems.contact_density_check(st)
        assert rep.passed
        assert rep.lhs == pytest.approx(1.0 / (math.pi * n ** 3), rel=1e-12)


def test_contact_density_requires_s_wave():
    st = make_coulomb_state(2, 1, 1.0)
    with pytest.raises(ValueError):
        theorems.contact_density_check(st)


def test_time_derivative_identity_superposition():
    a = make_coulomb_state(1, 0, 1.0)
    b = make_coulomb_state(2, 0, 1.0)
    for op in (OperatorSpec.coordinate(), OperatorSpec.pr()):
        rep = theorems.time_derivative_check(a, b, op)
        assert len(rep.times) == 16
        assert rep.passed
        assert rep.max_residual < 1e-12


def test_time_derivative_omitted_residual_is_minus_pi():
    a = make_coulomb_state(1, 0, 1.0)
    b = make_coulomb_state(2, 0, 1.0)
    rep = theorems.time_derivative_check(a, b, OperatorSpec.pr())
    for omitted, pi in zip(rep.omitted_residuals, rep.pi_values):
        assert omitted == pytest.approx(-pi, abs=1e-12)
    # the boundary term genuinely oscillates: it is not a constant offset
    assert max(abs(p) for p in rep.pi_values) > 0.1
