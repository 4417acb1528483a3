"""Numerov bound-state solver on a logarithmic mesh.

The reduced radial equation u'' = [l(l+1)/r^2 + (2m/hbar^2)(V-E)] u is
transformed with u = sqrt(r) v, x = ln r into v'' = G v,

    G(x) = (l + 1/2)^2 + (2m/hbar^2) r^2 (V(r) - E),

which keeps the mesh uniform from deep inside the origin power law out to
the exponential tail.  For soft-singular potentials r^2 V stays finite, so
G(0) = P^2 with the usual origin exponent and nothing special is needed.

Integration starts at r_min with the Dirichlet-selected Frobenius branch
u = r^{1/2+P}(1 + c1 r + c2 r^2), sweeps outward to the outermost turning
point, and is met there by an inward sweep from a WKB-determined r_max.
Eigenvalues are bracketed by node counting and refined by a root find on
the Numerov-consistent matching defect.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson
from scipy.interpolate import CubicSpline
from scipy.optimize import brentq

from .kernels import BACKEND, numerov_sweep
from .potentials import (
    OriginBehavior,
    PhysicalParams,
    Tabulated,
    origin_exponent,
)
from .states import NumericForm, RadialState
from .theorems import hypervirial_power


class BracketingError(RuntimeError):
    """No bound state with the requested node count in the search window."""


class ContaminatedFitError(RuntimeError):
    """The origin power-law fit is polluted by the irregular solution."""


@dataclass(frozen=True)
class GridConfig:
    """Log-mesh parameters: uniform step in x = ln r."""

    dx: float = 0.002
    r_min_factor: float = 1e-6
    wkb_budget: float = 35.0


def _series_coeffs(V, l, energy, P, params):
    """Frobenius start u = r^sigma (1 + c1 r + c2 r^2) from the potential's
    Laurent expansion at the origin (constant term approximated from the
    innermost sample for tabulated potentials)."""
    sigma = 0.5 + P
    two_m = 2.0 * params.mass / params.hbar ** 2
    B = 0.0
    C = -two_m * energy
    lv = V.laurent()
    if lv is not None:
        for c, p in lv.terms:
            if p == -1:
                B += two_m * c
            elif p == 0:
                C += two_m * c
    elif isinstance(V, Tabulated):
        r0 = V.r[0]
        C += two_m * (V.v[0] + V.origin_v0 / r0 ** 2)
    c1 = B / (2.0 * sigma)
    c2 = (B * c1 + C) / (4.0 * sigma + 2.0)
    return sigma, c1, c2


class _Solver:
    """One eigensolve: owns the potential, angular momentum and mesh policy."""

    def __init__(self, V, l, params, cfg):
        self.V = V
        self.l = l
        self.params = params
        self.cfg = cfg
        self.two_m = 2.0 * params.mass / params.hbar ** 2
        self.length = V.natural_length(params)
        self.e_char = params.hbar ** 2 / (2.0 * params.mass * self.length ** 2)
        self.r_cap = V.r[-1] if isinstance(V, Tabulated) else 1e9 * self.length
        self.P = origin_exponent(V, l, params)

    def v_eff(self, r):
        out = self.V(r)
        if self.l:
            out = out + self.params.hbar ** 2 * self.l * (self.l + 1) / (
                2.0 * self.params.mass * r ** 2
            )
        return out

    def _grid(self, energy):
        """Log mesh from r_min to a WKB-budgeted r_max beyond the turning point."""
        cfg = self.cfg
        r_min = cfg.r_min_factor * self.length
        r = max(self.length * 1e-3, 10.0 * r_min)
        while self.v_eff(r) < energy and r < self.r_cap:
            r *= 1.2
        r_tp = min(r, self.r_cap)
        accumulated = 0.0
        r_max = r_tp
        while accumulated < cfg.wkb_budget and r_max < self.r_cap:
            dr = 0.05 * r_max
            k_sq = self.two_m * (self.v_eff(r_max + 0.5 * dr) - energy)
            if k_sq > 0.0:
                accumulated += math.sqrt(k_sq) * dr
            r_max += dr
        r_max = min(r_max, self.r_cap)
        n = max(int(math.ceil(math.log(r_max / r_min) / cfg.dx)) + 1, 16)
        x = np.linspace(math.log(r_min), math.log(r_max), n)
        return np.exp(x), x[1] - x[0]

    def _w(self, r, energy):
        return (self.l + 0.5) ** 2 + self.two_m * r ** 2 * (self.V(r) - energy)

    def _start_values(self, r, energy):
        sigma, c1, c2 = _series_coeffs(self.V, self.l, energy, self.P, self.params)
        u = r ** sigma * (1.0 + c1 * r + c2 * r ** 2)
        return u / np.sqrt(r)

    def _match_index(self, w):
        idx = np.nonzero(w < 0.0)[0]
        if len(idx) == 0:
            return None
        return int(min(max(idx[-1], 2), len(w) - 3))

    def _outward(self, r, h, w, energy, stop):
        v = self._start_values(r[:2], energy)
        return numerov_sweep(w[: stop + 1], h, v[0], v[1])

    @staticmethod
    def _nodes(y):
        mags = np.abs(y)
        keep = mags > 1e-12 * mags.max()
        signs = np.sign(y[keep])
        return int(np.sum(signs[1:] != signs[:-1]))

    def count_nodes(self, energy):
        """Nodes of the full outward sweep; above an eigenvalue the solution
        diverges with flipped sign at the far end, so the count increments
        exactly when the energy crosses it."""
        r, h = self._grid(energy)
        w = self._w(r, energy)
        if not np.any(w < 0.0):
            return 0
        y = self._outward(r, h, w, energy, len(w) - 1)
        signs = np.sign(y[y != 0.0])
        return int(np.sum(signs[1:] != signs[:-1]))

    def _defect_on(self, r, h, energy, return_solution=False):
        """Numerov matching defect at the outermost turning point."""
        w = self._w(r, energy)
        m = self._match_index(w)
        if m is None:
            raise BracketingError("no classically allowed region at this energy")
        n = len(r)
        yl = self._outward(r, h, w, energy, m + 1)
        seed = 1e-140
        grow = math.exp(math.sqrt(max(w[-1], 0.0)) * h)
        yr_rev = numerov_sweep(w[m - 1 :][::-1], h, seed, seed * grow)
        yr = yr_rev[::-1]
        if yr[1] == 0.0 or yl[m] == 0.0:
            raise BracketingError("degenerate matching values")
        scale = yl[m] / yr[1]  # yr[1] sits at global index m
        f = 1.0 - (h * h / 12.0) * w
        defect = (
            f[m + 1] * yr[2] * scale
            + f[m - 1] * yl[m - 1]
            - (12.0 - 10.0 * f[m]) * yl[m]
        ) / max(abs(yl[m]), 1e-300)
        if not return_solution:
            return defect
        v = np.empty(n)
        v[: m + 1] = yl[: m + 1]
        v[m + 1 :] = yr[2:] * scale
        return defect, v, m

    def solve(self, n_r):
        e_hi = self._upper_bound(n_r)
        e_lo = self._lower_bound(n_r, e_hi)
        # bisection on the node count
        for _ in range(80):
            if e_hi - e_lo <= 1e-9 * max(abs(e_lo), abs(e_hi), self.e_char):
                break
            mid = 0.5 * (e_lo + e_hi)
            if self.count_nodes(mid) > n_r:
                e_hi = mid
            else:
                e_lo = mid
        # refine on a frozen mesh
        r, h = self._grid(0.5 * (e_lo + e_hi))
        energy = self._refine(r, h, e_lo, e_hi)
        defect, v, m = self._defect_on(r, h, energy, return_solution=True)
        u = v * np.sqrt(r)
        norm = math.sqrt(simpson(u ** 2 * r, x=np.log(r)))
        u = u / norm
        # sign convention: positive leading coefficient at the origin
        inner = u[: max(8, len(u) // 50)]
        if inner[np.argmax(np.abs(inner))] < 0:
            u = -u
        if self._nodes(u) != n_r:
            raise BracketingError(
                f"converged state has {self._nodes(u)} nodes, wanted {n_r}"
            )
        return self._build_state(r, u, energy, n_r)

    def _refine(self, r, h, e_lo, e_hi):
        width = max(e_hi - e_lo, 1e-14 * max(abs(e_lo), self.e_char))
        a, b = e_lo - 5.0 * width, e_hi + 5.0 * width
        grid = np.linspace(a, b, 13)
        vals = []
        for e in grid:
            try:
                vals.append(self._defect_on(r, h, e))
            except BracketingError:
                vals.append(math.nan)
        for i in range(len(grid) - 1):
            va, vb = vals[i], vals[i + 1]
            if math.isnan(va) or math.isnan(vb) or va * vb > 0:
                continue
            if grid[i + 1] < e_lo - 10 * width or grid[i] > e_hi + 10 * width:
                continue
            return brentq(
                lambda e: self._defect_on(r, h, e),
                grid[i],
                grid[i + 1],
                xtol=1e-14 * max(abs(e_lo), self.e_char),
                rtol=8.9e-16,
            )
        # no sign change found: the node window itself is the best estimate
        return 0.5 * (e_lo + e_hi)

    def _upper_bound(self, n_r):
        if isinstance(self.V, Tabulated):
            v_inf = float(self.V.v[-1])
            confining = False
        else:
            v_inf = float(self.V(1e7 * self.length))
            confining = v_inf > 1e3 * self.e_char
        if confining:
            e_hi = self.e_char
            for _ in range(60):
                if self.count_nodes(e_hi) >= n_r + 1:
                    return e_hi
                e_hi *= 2.0
        else:
            gap = self.e_char
            for _ in range(60):
                e_hi = v_inf - gap
                if self.count_nodes(e_hi) >= n_r + 1:
                    return e_hi
                gap /= 4.0
        raise BracketingError(f"no state with {n_r + 1} nodes in the search window")

    def _lower_bound(self, n_r, e_hi):
        step = max(self.e_char, abs(e_hi))
        e_lo = e_hi - step
        for _ in range(60):
            if self.count_nodes(e_lo) <= n_r:
                return e_lo
            step *= 2.0
            e_lo = e_hi - step
        raise BracketingError("could not bracket the spectrum from below")

    def _build_state(self, r, u, energy, n_r):
        sigma, c1, c2 = _series_coeffs(self.V, self.l, energy, self.P, self.params)
        a, _, residual = _origin_fit(r, u, sigma, c1, c2)
        if residual > 1e-6:
            raise ContaminatedFitError(
                f"origin fit residual {residual:g} exceeds 1e-6"
            )
        spline = CubicSpline(np.log(r), u)
        form = NumericForm(
            r=r, u=u, spline=spline, series_coeffs=(a, c1, c2), sigma=sigma
        )
        origin = OriginBehavior(
            exponent=self.P, leading_coeff=a, leading_power=sigma - 1.0
        )
        return RadialState(
            potential=self.V,
            l=self.l,
            n_r=n_r,
            energy=energy,
            origin=origin,
            form=form,
            params=self.params,
        )


def _origin_fit(r, u, sigma, c1, c2):
    """Power-law fit of the innermost decade after dividing out the series tail."""
    sel = r <= r[0] * 10.0
    if np.count_nonzero(sel) < 8:
        sel = np.zeros_like(r, dtype=bool)
        sel[: max(8, len(r) // 100)] = True
    rr = r[sel]
    z = u[sel] / (1.0 + c1 * rr + c2 * rr ** 2)
    lr, lz = np.log(rr), np.log(np.abs(z))
    slope, intercept = np.polyfit(lr, lz, 1)
    residual = float(np.max(np.abs(lz - (slope * lr + intercept))))
    return math.exp(intercept), slope, residual


def solve_bound_state(V, l, n_r, params=PhysicalParams(), grid_config=GridConfig()):
    """Bound state of V with angular momentum l and n_r radial nodes."""
    if n_r < 0 or l < 0:
        raise ValueError("quantum numbers must be nonnegative")
    return _Solver(V, l, params, grid_config).solve(n_r)


def fit_origin_coefficients(state):
    """Re-extract the leading origin behavior from a numeric state's grid.

    Returns OriginBehavior with the fitted power and coefficient; raises
    when the irregular-branch admixture spoils the power law.
    """
    form = state.form
    if not isinstance(form, NumericForm):
        raise ValueError("fit_origin_coefficients needs a numeric state")
    a, c1, c2 = form.series_coeffs
    coeff, slope, residual = _origin_fit(form.r, form.u, form.sigma, c1, c2)
    if residual > 1e-6:
        raise ContaminatedFitError(f"origin fit residual {residual:g} exceeds 1e-6")
    return OriginBehavior(
        exponent=slope - 0.5, leading_coeff=coeff, leading_power=slope - 1.0
    )


def verify_numeric(state, s):
    """Run the power-law hypervirial rule on a numeric state (1e-5 tolerance)."""
    return hypervirial_power(state, s)


def dump_state(state, path):
    """Write the grid as three columns (r, u, R) with a metadata header."""
    form = state.form
    if not isinstance(form, NumericForm):
        raise ValueError("dump_state needs a numeric state")
    header = (
        f"E={state.energy!r} l={state.l} n_r={state.n_r} "
        f"P={state.origin.exponent!r} leading_coeff={state.origin.leading_coeff!r} "
        f"sigma={form.sigma!r} c1={form.series_coeffs[1]!r} c2={form.series_coeffs[2]!r}"
    )
    data = np.column_stack([form.r, form.u, form.u / form.r])
    np.savetxt(path, data, header=header)


def load_state(path, potential=None, params=PhysicalParams()):
    """Re-load a dumped grid as a Numeric RadialState."""
    meta = {}
    with open(path) as fh:
        first = fh.readline()
    for token in first.lstrip("#").split():
        key, _, val = token.partition("=")
        meta[key] = float(val)
    data = np.loadtxt(path)
    r, u = data[:, 0], data[:, 1]
    sigma = meta["sigma"]
    a = meta["leading_coeff"]
    form = NumericForm(
        r=r,
        u=u,
        spline=CubicSpline(np.log(r), u),
        series_coeffs=(a, meta.get("c1", 0.0), meta.get("c2", 0.0)),
        sigma=sigma,
    )
    origin = OriginBehavior(
        exponent=meta["P"], leading_coeff=a, leading_power=sigma - 1.0
    )
    return RadialState(
        potential=potential,
        l=int(meta["l"]),
        n_r=int(meta["n_r"]),
        energy=meta["E"],
        origin=origin,
        form=form,
        params=params,
    )
