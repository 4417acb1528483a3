"""Shooting solver: eigenvalues, origin fits, round trips, kernel parity."""

import numpy as np
import pytest

from radial_theorems import kernels, numerov
from radial_theorems._numerov_py import numerov_sweep as sweep_py
from radial_theorems.numerov import (
    GridConfig,
    dump_state,
    fit_origin_coefficients,
    load_state,
    solve_bound_state,
)
from radial_theorems.potentials import Coulomb, InverseSquarePlus, Oscillator, PhysicalParams

PARAMS = PhysicalParams()


def test_kernel_backends_agree():
    rng = np.random.default_rng(3)
    w = rng.normal(size=400)
    h = 0.01
    a = kernels.numerov_sweep(w, h, 0.0, 1e-3)
    b = sweep_py(w, h, 0.0, 1e-3)
    assert np.array_equal(a, b) or np.allclose(a, b, rtol=1e-15)


def test_kernel_reproduces_harmonic_solution():
    # y'' = -y with y(0)=0, y'(0)=1 -> sin(x), fourth-order accurate
    h = 0.001
    x = np.arange(0.0, 2.0, h)
    w = -np.ones_like(x)
    y = kernels.numerov_sweep(w, h, 0.0, np.sin(h))
    assert np.allclose(y, np.sin(x), atol=1e-10)


@pytest.mark.parametrize("n,l", [(1, 0), (2, 0), (2, 1), (3, 2)])
def test_coulomb_eigenvalues(n, l):
    st = solve_bound_state(Coulomb(1.0), l, n - l - 1, PARAMS)
    assert st.energy == pytest.approx(-0.5 / n ** 2, rel=1e-9)
    assert st.n_r == n - l - 1


@pytest.mark.parametrize("n_r,l", [(0, 0), (1, 0), (0, 2), (2, 1)])
def test_oscillator_eigenvalues(n_r, l):
    st = solve_bound_state(Oscillator(1.0, PARAMS), l, n_r, PARAMS)
    assert st.energy == pytest.approx(2 * n_r + l + 1.5, rel=1e-9)


def test_kratzer_ground_state_against_oracle():
    # E = -1/2 for l=1, V0=1: the inverse-square term shifts l+1/2 -> P = 1/2
    V = InverseSquarePlus(1.0, base=Coulomb(1.0))
    st = solve_bound_state(V, 1, 0, PARAMS)
    assert st.energy == pytest.approx(-0.5, rel=1e-9)
    assert st.origin.exponent == pytest.approx(0.5, rel=1e-12)


def test_kratzer_soft_exponent_family():
    # V0 = 27/32 gives P = 3/4 and E0 = -1/2 / (1/2 + 3/4 + 1/2)^2... oracle:
    # E = -1/(2 (n_r + 1/2 + P)^2)
    V = InverseSquarePlus(27.0 / 32.0, base=Coulomb(1.0))
    st = solve_bound_state(V, 1, 0, PARAMS)
    assert st.origin.exponent == pytest.approx(0.75, rel=1e-12)
    assert st.energy == pytest.approx(-0.5 / 1.25 ** 2, rel=1e-9)


def test_normalization_of_numeric_state():
    st = solve_bound_state(Coulomb(1.0), 0, 0, PARAMS)
    form = st.form
    x = np.log(form.r)
    from scipy.integrate import simpson

    norm = simpson(form.u ** 2 * form.r, x=x)
    assert norm == pytest.approx(1.0, rel=1e-9)


def test_fitted_origin_coefficient_matches_analytic():
    st = solve_bound_state(Coulomb(1.0), 0, 0, PARAMS)
    assert st.origin.leading_coeff == pytest.approx(2.0, rel=1e-6)
    refit = fit_origin_coefficients(st)
    assert refit.leading_coeff == pytest.approx(2.0, rel=1e-6)
    assert refit.exponent == pytest.approx(0.5, rel=1e-3)


def test_numeric_state_matches_analytic_wavefunction():
    from radial_theorems.states import make_coulomb_state

    num = solve_bound_state(Coulomb(1.0), 1, 0, PARAMS)
    ana = make_coulomb_state(2, 1, 1.0)
    r = np.geomspace(0.05, 15.0, 40)
    assert np.allclose(num.R(r), ana.R(r), atol=1e-8)


def test_dump_and_load_round_trip(tmp_path):
    V = InverseSquarePlus(1.0, base=Coulomb(1.0))
    st = solve_bound_state(V, 1, 0, PARAMS)
    path = tmp_path / "state.dat"
    dump_state(st, str(path))
    back = load_state(str(path), potential=V)
    assert back.energy == st.energy
    assert back.l == st.l
    assert np.array_equal(back.form.r, st.form.r)
    assert np.array_equal(back.form.u, st.form.u)
    assert back.origin.exponent == pytest.approx(st.origin.exponent, rel=1e-12)


def test_grid_config_is_respected():
    cfg = GridConfig(dx=0.004, r_min_factor=1e-5, wkb_budget=30.0)
    st = solve_bound_state(Coulomb(1.0), 0, 0, PARAMS, grid_config=cfg)
    # coarser grid still converges, just less tightly
    assert st.energy == pytest.approx(-0.5, rel=1e-7)


def test_verify_numeric_sum_rule():
    st = solve_bound_state(Coulomb(1.0), 0, 1, PARAMS)  # 2s
    rep = numerov.verify_numeric(st, 1)
    assert rep.passed
