"""Analytic bound states: energies, normalization, nodes, origin behavior."""

import numpy as np
import pytest
from scipy import integrate

from radial_theorems.potentials import PhysicalParams
from radial_theorems.states import (
    count_nodes,
    evaluate_R,
    make_coulomb_state,
    make_oscillator_state,
    second_derivative_R,
)


def _norm(state):
    def f(r):
        return state.R(r) ** 2 * r ** 2

    cut = 10.0 * (state.l + state.n_r + 1)
    a, _ = integrate.quad(f, 0.0, cut, limit=200)
    b, _ = integrate.quad(f, cut, np.inf, limit=200)
    return a + b


@pytest.mark.parametrize("n,l", [(1, 0), (2, 0), (2, 1), (3, 1), (4, 3), (5, 2)])
def test_coulomb_energy_and_norm(n, l):
    st = make_coulomb_state(n, l, 1.0)
    assert st.energy == pytest.approx(-0.5 / n ** 2, rel=1e-14)
    assert _norm(st) == pytest.approx(1.0, rel=1e-10)
    assert st.n_r == n - l - 1


@pytest.mark.parametrize("n_r,l", [(0, 0), (1, 0), (0, 1), (2, 2), (3, 1)])
def test_oscillator_energy_and_norm(n_r, l):
    st = make_oscillator_state(n_r, l, 1.0)
    assert st.energy == pytest.approx(2 * n_r + l + 1.5, rel=1e-14)
    assert _norm(st) == pytest.approx(1.0, rel=1e-10)


def test_hydrogen_1s_closed_form():
    st = make_coulomb_state(1, 0, 1.0)
    r = np.array([0.3, 1.0, 2.5])
    assert np.allclose(st.R(r), 2.0 * np.exp(-r), rtol=1e-14)
    assert st.origin.leading_coeff == pytest.approx(2.0, rel=1e-14)
    assert st.origin.exponent == pytest.approx(0.5)  # P = l + 1/2


def test_scaling_with_parameters():
    # e2 -> 2 doubles the inverse length scale: E_1s = -m e4 / (2 hbar^2)
    st = make_coulomb_state(1, 0, 2.0, PhysicalParams(hbar=1.0, mass=1.0))
    assert st.energy == pytest.approx(-2.0, rel=1e-14)
    assert _norm(st) == pytest.approx(1.0, rel=1e-10)
    st = make_oscillator_state(0, 0, 3.0, PhysicalParams(hbar=2.0, mass=0.5))
    assert st.energy == pytest.approx(2.0 * 3.0 * 1.5, rel=1e-14)
    assert _norm(st) == pytest.approx(1.0, rel=1e-10)


@pytest.mark.parametrize("n,l", [(1, 0), (2, 0), (3, 0), (3, 1), (4, 2)])
def test_node_counts_coulomb(n, l):
    st = make_coulomb_state(n, l, 1.0)
    assert count_nodes(st) == n - l - 1


@pytest.mark.parametrize("n_r,l", [(0, 0), (1, 0), (2, 1), (3, 2)])
def test_node_counts_oscillator(n_r, l):
    st = make_oscillator_state(n_r, l, 1.0)
    assert count_nodes(st) == n_r


def test_second_derivative_satisfies_radial_equation():
    # R'' = -(2/r) R' + [l(l+1)/r^2 + 2m/hbar^2 (V - E)] R
    st = make_coulomb_state(3, 1, 1.0)
    r = np.array([0.5, 1.7, 4.0, 9.0])
    R, dR = evaluate_R(st, r)
    d2R = second_derivative_R(st, r)
    rhs = -2.0 / r * dR + (st.l * (st.l + 1) / r ** 2 + 2.0 * (st.potential(r) - st.energy)) * R
    assert np.allclose(d2R, rhs, rtol=1e-11, atol=1e-13)


def test_origin_limit_matches_evaluation():
    st = make_coulomb_state(2, 1, 1.0)
    r = 1e-7
    lead = st.origin.leading_coeff * r ** st.origin.leading_power
    assert st.R(r) == pytest.approx(lead, rel=1e-6)
