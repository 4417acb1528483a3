"""Verification engine for boundary-corrected radial quantum theorems.

Builds normalized radial bound states (closed-form Coulomb/oscillator or
Numerov-solved), evaluates the boundary extra term of the origin limit, and
checks the modified Kramers/hypervirial sum rules, the modified Ehrenfest
balances and related identities to machine precision.
"""

from .boundary import (
    DIVERGENT,
    FINITE,
    ZERO,
    PiResult,
    boundary_bracket_numeric,
    hermiticity_defect,
    pi_analytic,
    pi_prime,
    pi_total,
)
from .kernels import BACKEND
from .laurent import LaurentPoly
from .matrix_elements import (
    DivergentMomentError,
    IncompatibleStatesError,
    cross_element,
    expectation,
    moment,
    moment_closed,
    moment_quadrature,
)
from .numerov import (
    BracketingError,
    ContaminatedFitError,
    GridConfig,
    dump_state,
    fit_origin_coefficients,
    load_state,
    solve_bound_state,
    verify_numeric,
)
from .operators import OperatorSpec
from .potentials import (
    Coulomb,
    FallingToCenterError,
    InverseSquarePlus,
    Oscillator,
    OriginBehavior,
    PhysicalParams,
    Tabulated,
    UnsupportedExtensionError,
    classify_potential,
    load_tabulated,
    origin_exponent,
)
from .reports import emit_report
from .states import RadialState, make_coulomb_state, make_oscillator_state
from .theorems import (
    contact_density_check,
    ehrenfest_coordinate,
    ehrenfest_radial,
    hypervirial_general,
    hypervirial_power,
    kramers,
    time_derivative_check,
)

__version__ = "0.1.0"
