"""Radial operators and their action on analytic states.

Supported operators are Laurent multipliers f(r), the Hermitian radial
momentum p_r = (hbar/i)(d/dr + 1/r), and the two orderings p_r f and f p_r.
Every operator carries its origin singularity exponent beta (A ~ r^-beta),
which drives the boundary-term trichotomy.

For hermiticity-defect and time-derivative checks the Hamiltonian has to be
applied to A R analytically; ExpSeries implements the small closed algebra
(real powers of r) x (shared exponential weight) that all those expressions
live in.
"""

from dataclasses import dataclass

import numpy as np

from .laurent import LaurentPoly, _as_laurent
from .states import EXP_GAUSS, EXP_LINEAR, AnalyticForm, evaluate_R, second_derivative_R

MULTIPLY = "multiply"
PR = "pr"
PR_AFTER_F = "pr-after-f"  # A = p_r f(r)
F_AFTER_PR = "f-after-pr"  # A = f(r) p_r


@dataclass(frozen=True)
class OperatorSpec:
    """A radial operator with its singularity exponent beta.

    kind selects the composition; f is the Laurent multiplier (ignored for
    the bare momentum).  beta is derived from kind and f at construction:
    each power of p_r counts one inverse power of r.
    """

    kind: str
    f: LaurentPoly = None
    beta: int = None

    def __post_init__(self):
        if self.kind not in (MULTIPLY, PR, PR_AFTER_F, F_AFTER_PR):
            raise ValueError(f"unknown operator kind {self.kind!r}")
        if self.kind == PR:
            f = None
            beta = 1
        else:
            f = _as_laurent(self.f)
            if f.is_zero:
                raise ValueError("zero multiplier")
            if self.kind == MULTIPLY:
                beta = -f.min_power
            else:
                beta = 1 - f.min_power
        object.__setattr__(self, "f", f)
        if self.beta is not None and self.beta != beta:
            raise ValueError(f"beta={self.beta} inconsistent with kind/f (expected {beta})")
        object.__setattr__(self, "beta", beta)

    @classmethod
    def multiply(cls, f):
        return cls(MULTIPLY, f=_as_laurent(f))

    @classmethod
    def coordinate(cls):
        return cls(MULTIPLY, f=LaurentPoly.monomial(1.0, 1))

    @classmethod
    def pr(cls):
        return cls(PR)

    @classmethod
    def pr_after_f(cls, f):
        return cls(PR_AFTER_F, f=_as_laurent(f))

    @classmethod
    def f_after_pr(cls, f):
        return cls(F_AFTER_PR, f=_as_laurent(f))

    @property
    def momentum_bearing(self):
        return self.kind != MULTIPLY

    def phase(self, params):
        """The constant factor pulled out of A R: 1 or hbar/i."""
        return 1.0 if self.kind == MULTIPLY else params.hbar / 1j

    def apply_real(self, state, r):
        """(A R)(r) / phase and its derivative, both real.

        Uses exact R, R' and R'' of the state.
        """
        R, dR = evaluate_R(state, r)
        if self.kind == MULTIPLY:
            f = self.f(r)
            df = self.f.derivative()(r)
            return f * R, df * R + f * dR
        d2R = second_derivative_R(state, r)
        g = dR + R / r  # (A R)/phase for bare p_r
        dg = d2R + dR / r - R / r ** 2
        if self.kind == PR:
            return g, dg
        f = self.f(r)
        df = self.f.derivative()(r)
        if self.kind == F_AFTER_PR:
            return f * g, df * g + f * dg
        # p_r f: (fR)' + fR/r = f'R + f g
        d2f = self.f.derivative().derivative()(r)
        val = df * R + f * g
        dval = d2f * R + df * dR + df * g + f * dg
        return val, dval


# ---------------------------------------------------------------------------
# closed symbolic algebra for H applied to A R (analytic states only)


class ExpSeries:
    """sum_p c_p r^p times a shared exponential weight.

    Powers p are reals; the weight is exp(-scale r) or exp(-scale r^2 / 2)
    inherited from the state the series was built from.
    """

    def __init__(self, powers, exp_kind, scale):
        self.powers = {float(p): float(c) for p, c in powers.items() if c != 0.0}
        self.exp_kind = exp_kind
        self.scale = scale

    @classmethod
    def from_form(cls, form: AnalyticForm):
        powers = {form.lead + j: c for j, c in enumerate(form.coeffs) if c != 0.0}
        return cls(powers, form.exp_kind, form.scale)

    def _check(self, other):
        if self.exp_kind != other.exp_kind or self.scale != other.scale:
            raise ValueError("incompatible exponential weights")

    def __add__(self, other):
        self._check(other)
        powers = dict(self.powers)
        for p, c in other.powers.items():
            powers[p] = powers.get(p, 0.0) + c
        return ExpSeries(powers, self.exp_kind, self.scale)

    def scaled(self, factor):
        return ExpSeries(
            {p: c * factor for p, c in self.powers.items()}, self.exp_kind, self.scale
        )

    def times_power(self, shift, factor=1.0):
        return ExpSeries(
            {p + shift: c * factor for p, c in self.powers.items()},
            self.exp_kind,
            self.scale,
        )

    def times_laurent(self, f: LaurentPoly):
        out = {}
        for c, k in f.terms:
            for p, cp in self.powers.items():
                out[p + k] = out.get(p + k, 0.0) + c * cp
        return ExpSeries(out, self.exp_kind, self.scale)

    def derivative(self):
        out = {}
        for p, c in self.powers.items():
            if p != 0.0:
                out[p - 1] = out.get(p - 1, 0.0) + p * c
            if self.exp_kind == EXP_LINEAR:
                out[p] = out.get(p, 0.0) - self.scale * c
            else:
                out[p + 1] = out.get(p + 1, 0.0) - self.scale * c
        return ExpSeries(out, self.exp_kind, self.scale)

    def value(self, r):
        r = np.asarray(r, dtype=float)
        acc = np.zeros_like(r)
        for p, c in self.powers.items():
            acc = acc + c * r ** p
        if self.exp_kind == EXP_LINEAR:
            return acc * np.exp(-self.scale * r)
        return acc * np.exp(-0.5 * self.scale * r ** 2)

    @property
    def min_power(self):
        return min(self.powers) if self.powers else 0.0


def apply_operator_series(op: OperatorSpec, series: ExpSeries):
    """(A R) / phase as an ExpSeries."""
    if op.kind == MULTIPLY:
        return series.times_laurent(op.f)
    g = series.derivative() + series.times_power(-1)
    if op.kind == PR:
        return g
    if op.kind == F_AFTER_PR:
        return g.times_laurent(op.f)
    return series.times_laurent(op.f.derivative()) + g.times_laurent(op.f)


def apply_hamiltonian_series(series: ExpSeries, l, v_laurent: LaurentPoly, params):
    """H applied to an ExpSeries in the angular-momentum-l sector."""
    kin = series.derivative().derivative() + series.derivative().times_power(-1, 2.0)
    out = kin.scaled(-params.hbar ** 2 / (2.0 * params.mass))
    if l:
        out = out + series.times_power(
            -2, params.hbar ** 2 * l * (l + 1) / (2.0 * params.mass)
        )
    return out + series.times_laurent(v_laurent)
