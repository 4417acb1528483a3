"""Central potentials, their origin classification and origin exponents.

Classification by the limit of r^2 V(r) at the origin:

    regular        r^2 V -> 0            R ~ C_l r^l
    soft-singular  r^2 V -> -v0 (finite) R ~ a_st r^{-1/2 + P}
    singular       r^2 V -> +-inf        falling to the center (rejected)

with P = sqrt((l+1/2)^2 - 2 m v0 / hbar^2).  Only the standard branch with
P >= 1/2 is admitted here; the self-adjoint-extension region 0 < P < 1/2
is refused explicitly.
"""

import math
from dataclasses import dataclass

import numpy as np

from .laurent import LaurentPoly

REGULAR = "regular"
SOFT_SINGULAR = "soft-singular"
SINGULAR = "singular"


class ClassificationError(ValueError):
    """The limit of r^2 V(r) could not be established."""


class FallingToCenterError(ValueError):
    """The inverse-square attraction is too strong: (l+1/2)^2 < 2 m v0 / hbar^2."""


class UnsupportedExtensionError(ValueError):
    """0 < P < 1/2 requires a self-adjoint extension, which is out of scope."""


@dataclass(frozen=True)
class PhysicalParams:
    """Global constants hbar and m in whatever unit system the caller uses."""

    hbar: float = 1.0
    mass: float = 1.0

    def __post_init__(self):
        if self.hbar <= 0 or self.mass <= 0:
            raise ValueError("hbar and mass must be strictly positive")


@dataclass(frozen=True)
class OriginBehavior:
    """Leading behavior R(r) -> leading_coeff * r^leading_power at the origin.

    exponent is P; regular potentials have P = l + 1/2 and leading_power = l,
    soft-singular ones have leading_power = -1/2 + P.
    """

    exponent: float
    leading_coeff: float
    leading_power: float


class Potential:
    """Base class: evaluable V(r), V'(r) and origin data."""

    def __call__(self, r):
        raise NotImplementedError

    def dv_dr(self, r):
        raise NotImplementedError

    def classification(self, params):
        raise NotImplementedError

    def soft_v0(self, params):
        """Signed strength of the -v0/r^2 origin term (positive = attractive)."""
        return 0.0

    def laurent(self):
        """V as a LaurentPoly, or None if no closed form exists."""
        return None

    def natural_length(self, params):
        """Characteristic length scale used for grid construction."""
        return 1.0


class Coulomb(Potential):
    """V(r) = -e2 / r."""

    def __init__(self, e2):
        if e2 <= 0:
            raise ValueError("e2 must be positive")
        self.e2 = float(e2)

    def __call__(self, r):
        return -self.e2 / r

    def dv_dr(self, r):
        return self.e2 / r ** 2

    def classification(self, params):
        return REGULAR

    def laurent(self):
        return LaurentPoly.monomial(-self.e2, -1)

    def natural_length(self, params):
        return params.hbar ** 2 / (params.mass * self.e2)

    def __repr__(self):
        return f"Coulomb(e2={self.e2})"


class Oscillator(Potential):
    """V(r) = (m/2) omega^2 r^2."""

    def __init__(self, omega, params=None):
        if omega <= 0:
            raise ValueError("omega must be positive")
        self.omega = float(omega)
        self._mass = (params or PhysicalParams()).mass

    def __call__(self, r):
        return 0.5 * self._mass * self.omega ** 2 * r ** 2

    def dv_dr(self, r):
        return self._mass * self.omega ** 2 * r

    def classification(self, params):
        return REGULAR

    def laurent(self):
        return LaurentPoly.monomial(0.5 * self._mass * self.omega ** 2, 2)

    def natural_length(self, params):
        return math.sqrt(params.hbar / (params.mass * self.omega))

    def __repr__(self):
        return f"Oscillator(omega={self.omega})"


class InverseSquarePlus(Potential):
    """V(r) = base(r) - v0 / r^2, with v0 > 0 attractive and v0 < 0 repulsive.

    base may be None (pure inverse-square), Coulomb, or Oscillator; the
    Coulomb + attractive inverse-square combination is the Kratzer potential.
    """

    def __init__(self, v0, base=None):
        if v0 == 0:
            raise ValueError("v0 must be nonzero; use the base potential directly")
        self.v0 = float(v0)
        self.base = base

    def __call__(self, r):
        v = -self.v0 / r ** 2
        if self.base is not None:
            v = v + self.base(r)
        return v

    def dv_dr(self, r):
        d = 2.0 * self.v0 / r ** 3
        if self.base is not None:
            d = d + self.base.dv_dr(r)
        return d

    def classification(self, params):
        return SOFT_SINGULAR

    def soft_v0(self, params):
        return self.v0

    def laurent(self):
        poly = LaurentPoly.monomial(-self.v0, -2)
        if self.base is not None:
            base = self.base.laurent()
            if base is None:
                return None
            poly = poly + base
        return poly

    def natural_length(self, params):
        if self.base is not None:
            return self.base.natural_length(params)
        return 1.0

    def __repr__(self):
        return f"InverseSquarePlus(v0={self.v0}, base={self.base!r})"


class Tabulated(Potential):
    """Sampled potential: strictly increasing radii with values.

    The origin inverse-square coefficient must be supplied explicitly
    (origin_v0, positive = attractive); extracting it from samples is too
    ill-conditioned to automate.
    """

    def __init__(self, r, v, origin_v0=0.0):
        r = np.asarray(r, dtype=float)
        v = np.asarray(v, dtype=float)
        if r.ndim != 1 or r.shape != v.shape or len(r) < 4:
            raise ValueError("need matching 1-d arrays with at least 4 samples")
        if not np.all(np.diff(r) > 0):
            raise ValueError("radii must be strictly increasing")
        self.r = r
        self.v = v
        self.origin_v0 = float(origin_v0)
        from scipy.interpolate import CubicSpline

        self._spline = CubicSpline(r, v)

    def __call__(self, r):
        return self._spline(r)

    def dv_dr(self, r):
        return self._spline(r, 1)

    def classification(self, params):
        if self.origin_v0 != 0.0:
            return SOFT_SINGULAR
        # establish the limit of r^2 V from the innermost samples
        k = min(8, len(self.r))
        probe = self.r[:k] ** 2 * self.v[:k]
        if abs(probe[0]) < 1e3 * max(1.0, abs(self.v[-1]) + 1.0):
            if not np.all(np.isfinite(probe)):
                raise ClassificationError("non-finite samples near the origin")
            # decreasing |r^2 V| towards the origin means a vanishing limit
            if abs(probe[0]) <= abs(probe[-1]) + 1e-12:
                return REGULAR
        diffs = np.diff(np.sign(np.diff(probe)))
        if np.any(diffs != 0):
            raise ClassificationError("oscillatory r^2 V near the origin")
        return SINGULAR

    def soft_v0(self, params):
        return self.origin_v0

    def natural_length(self, params):
        return self.r[-1] / 20.0

    def __repr__(self):
        return f"Tabulated({len(self.r)} points, origin_v0={self.origin_v0})"


def load_tabulated(path):
    """Read a two-column (r, V) text file; `# v0=<value>` header is honored."""
    v0 = 0.0
    rows = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line.lstrip("#").strip()
                if body.startswith("v0="):
                    v0 = float(body[3:])
                continue
            parts = line.split()
            rows.append((float(parts[0]), float(parts[1])))
    r, v = zip(*rows)
    return Tabulated(np.array(r), np.array(v), origin_v0=v0)


def classify_potential(V, params):
    """Origin classification of V per the limit of r^2 V(r)."""
    return V.classification(params)


def origin_exponent(V, l, params):
    """The origin exponent P for angular momentum l.

    Regular potentials give P = l + 1/2.  Soft-singular ones give
    P = sqrt((l+1/2)^2 - 2 m v0 / hbar^2); imaginary P or 0 < P < 1/2
    raise, since neither branch is supported here.
    """
    kind = classify_potential(V, params)
    if kind == SINGULAR:
        raise FallingToCenterError("strongly singular potential: no origin exponent")
    if kind == REGULAR:
        return l + 0.5
    v0 = V.soft_v0(params)
    p_sq = (l + 0.5) ** 2 - 2.0 * params.mass * v0 / params.hbar ** 2
    if p_sq < 0:
        raise FallingToCenterError(
            f"(l+1/2)^2 = {(l + 0.5) ** 2} < 2 m v0 / hbar^2 = {(l + 0.5) ** 2 - p_sq}"
        )
    p = math.sqrt(p_sq)
    if p < 0.5 - 1e-14:
        raise UnsupportedExtensionError(
            f"P = {p} < 1/2 requires a self-adjoint extension (unsupported)"
        )
    return p
