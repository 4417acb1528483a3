"""Command-line front end: theorem sweeps and report emission.

One subcommand per theorem family; all physical parameters are flags with
default 1 so every emitted number is reproducible from the command line.
Exit status: 0 when every report passes, 1 when any fails, 2 on bad
configuration.
"""

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import numerov, theorems
from .boundary import FINITE, boundary_bracket_numeric, pi_analytic
from .laurent import LaurentPoly
from .operators import OperatorSpec
from .potentials import Coulomb, InverseSquarePlus, Oscillator, PhysicalParams, load_tabulated
from .reports import CheckReport, emit_report
from .states import make_coulomb_state, make_oscillator_state


class ConfigError(ValueError):
    """Bad command-line configuration."""


def _parse_range(text):
    """'1..5' or '3' -> inclusive list of integers."""
    try:
        if ".." in text:
            lo, hi = text.split("..")
            lo, hi = int(lo), int(hi)
            if hi < lo:
                raise ValueError
            return list(range(lo, hi + 1))
        return [int(text)]
    except ValueError as exc:
        raise ConfigError(f"bad range {text!r} (expected 'a..b' or 'n')") from exc


def _params(args):
    return PhysicalParams(hbar=args.hbar, mass=args.mass)


def _potential(args):
    name = args.potential
    if name == "coulomb":
        return Coulomb(args.e2)
    if name == "oscillator":
        return Oscillator(args.omega, _params(args))
    if name == "kratzer":
        return InverseSquarePlus(args.v0, base=Coulomb(args.e2))
    if name == "invsq":
        base = None
        if args.omega > 0.0:
            base = Oscillator(args.omega, _params(args))
        return InverseSquarePlus(args.v0, base=base)
    if name == "tabulated":
        if not args.file:
            raise ConfigError("--file is required for tabulated potentials")
        return load_tabulated(args.file)
    raise ConfigError(f"unknown potential {name!r}")


def _analytic_states(args):
    """All analytic states selected by the --n / --nr / --l flags."""
    params = _params(args)
    states = []
    if args.potential == "coulomb":
        for n in _parse_range(args.n):
            ls = _parse_range(args.l) if args.l else range(n)
            for l in ls:
                if 0 <= l <= n - 1:
                    states.append(make_coulomb_state(n, l, args.e2, params))
    elif args.potential == "oscillator":
        for n_r in _parse_range(args.nr):
            ls = _parse_range(args.l) if args.l else [0]
            for l in ls:
                states.append(make_oscillator_state(n_r, l, args.omega, params))
    else:
        raise ConfigError("analytic sweeps support coulomb and oscillator only")
    return states


def _parse_operator(text):
    """'pr', 'r', 'r^T', 'pr*r^T' or 'r^T*pr' -> OperatorSpec."""

    def mono(body):
        if body == "r":
            return LaurentPoly.monomial(1.0, 1)
        if body.startswith("r^"):
            return LaurentPoly.monomial(1.0, int(body[2:]))
        raise ConfigError(f"bad operator factor {body!r}")

    if text == "pr":
        return OperatorSpec.pr()
    if text == "coordinate":
        return OperatorSpec.coordinate()
    if text.startswith("pr*"):
        return OperatorSpec.pr_after_f(mono(text[3:]))
    if text.endswith("*pr"):
        return OperatorSpec.f_after_pr(mono(text[:-3]))
    return OperatorSpec.multiply(mono(text))


def _pool():
    workers = os.environ.get("RADIAL_THEOREMS_THREADS")
    workers = int(workers) if workers else min(8, os.cpu_count() or 1)
    return ThreadPoolExecutor(max_workers=max(1, workers))


def _run_cases(funcs):
    """Evaluate thunks concurrently, preserving the given (sorted) order."""
    if len(funcs) <= 1:
        return [f() for f in funcs]
    with _pool() as pool:
        return list(pool.map(lambda f: f(), funcs))


def _emit(args, reports):
    text = emit_report(reports, args.format)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    return 0 if all(r.passed for r in reports) else 1


# ---------------------------------------------------------------------------
# subcommands


def _cmd_solve(args):
    params = _params(args)
    V = _potential(args)
    state = numerov.solve_bound_state(V, args.l_single, args.nodes, params)
    if args.dump:
        numerov.dump_state(state, args.dump)
    report = CheckReport(
        name="solve",
        case={
            "potential": repr(V),
            "l": state.l,
            "n_r": state.n_r,
            "hbar": params.hbar,
            "mass": params.mass,
        },
        lhs=state.energy,
        rhs=state.energy,
        residual=0.0,
        scale=max(abs(state.energy), 1e-300),
        tolerance=1.0,
        info={
            "energy": state.energy,
            "P": state.origin.exponent,
            "leading_coeff": state.origin.leading_coeff,
        },
    )
    return _emit(args, [report])


def _cmd_kramers(args):
    modes = [args.mode] if args.mode != "both" else [theorems.MODIFIED, theorems.CLASSIC]
    cases = []
    for state in _analytic_states(args):
        for s in _parse_range(args.s):
            if s < -(2 * state.l + 1):
                continue
            for mode in modes:
                if mode == theorems.CLASSIC and s <= -(2 * state.l + 1):
                    pass  # classic is still evaluated; it is expected to fail there
                cases.append((state, s, mode))
    cases.sort(key=lambda c: (c[0].l, c[0].n_r, c[1], c[2]))
    reports = _run_cases([lambda c=c: theorems.kramers(c[0], c[1], c[2]) for c in cases])
    return _emit(args, reports)


def _cmd_hypervirial(args):
    reports = []
    cases = []
    for state in _analytic_states(args):
        for s in _parse_range(args.s):
            if s < -(2 * state.l + 1):
                continue
            cases.append((state, s))
    cases.sort(key=lambda c: (c[0].l, c[0].n_r, c[1]))
    if args.formulation == "power":
        thunks = [lambda c=c: theorems.hypervirial_power(c[0], c[1]) for c in cases]
    else:
        thunks = [
            lambda c=c: theorems.hypervirial_general(
                c[0], LaurentPoly.monomial(1.0, c[1] + 1), args.formulation
            )
            for c in cases
        ]
    reports = _run_cases(thunks)
    return _emit(args, reports)


def _cmd_ehrenfest(args):
    states = _analytic_states(args)
    reports = _run_cases(
        [lambda s=s: theorems.ehrenfest_radial(s) for s in states]
        + [lambda s=s: theorems.ehrenfest_coordinate(s) for s in states]
    )
    return _emit(args, reports)


def _cmd_bracket(args):
    op = _parse_operator(args.op)
    reports = []
    for state in _analytic_states(args):
        analytic = pi_analytic(state.origin, op, state.params)
        numeric = boundary_bracket_numeric(state, op)
        target = analytic.value if analytic.verdict == FINITE else 0j
        residual = abs(numeric - target)
        scale = max(abs(target), 1.0)
        reports.append(
            CheckReport(
                name="boundary-bracket",
                case={
                    "potential": repr(state.potential),
                    "n_r": state.n_r,
                    "l": state.l,
                    "op": args.op,
                },
                lhs=target,
                rhs=numeric,
                residual=residual,
                scale=scale,
                tolerance=1e-6,
                info={
                    "verdict": analytic.verdict,
                    "exponent_margin": analytic.exponent_margin,
                    "formula_used": analytic.formula_used,
                },
            )
        )
    return _emit(args, reports)


def _cmd_contact(args):
    states = [s for s in _analytic_states(args) if s.l == 0]
    if not states:
        raise ConfigError("no l = 0 states selected")
    reports = _run_cases([lambda s=s: theorems.contact_density_check(s) for s in states])
    return _emit(args, reports)


def _cmd_timederiv(args):
    params = _params(args)
    if args.potential != "coulomb":
        raise ConfigError("timederiv supports the coulomb potential")
    try:
        n_a, n_b = (int(x) for x in args.pair.split(","))
    except ValueError as exc:
        raise ConfigError(f"bad --pair {args.pair!r}") from exc
    l = int(args.l) if args.l else 0
    a = make_coulomb_state(n_a, l, args.e2, params)
    b = make_coulomb_state(n_b, l, args.e2, params)
    op = _parse_operator(args.op)
    report = theorems.time_derivative_check(a, b, op)
    return _emit(args, [report])


def _cmd_suite(args):
    """The full verification matrix over both analytic potentials."""
    params = _params(args)
    thunks = []
    for n in range(1, 6):
        for l in range(n):
            st = make_coulomb_state(n, l, args.e2, params)
            for s in range(-(2 * l + 1), 5):
                thunks.append(lambda st=st, s=s: theorems.kramers(st, s))
    for n_r in range(5):
        for l in range(5):
            st = make_oscillator_state(n_r, l, args.omega, params)
            for s in range(-(2 * l + 1), 5):
                thunks.append(lambda st=st, s=s: theorems.kramers(st, s))
    for n in range(1, 4):
        for l in range(n):
            st = make_coulomb_state(n, l, args.e2, params)
            thunks.append(lambda st=st: theorems.ehrenfest_radial(st))
            thunks.append(lambda st=st: theorems.ehrenfest_coordinate(st))
            if l == 0:
                thunks.append(lambda st=st: theorems.contact_density_check(st))
    a = make_coulomb_state(1, 0, args.e2, params)
    b = make_coulomb_state(2, 0, args.e2, params)
    for op in (OperatorSpec.coordinate(), OperatorSpec.pr()):
        thunks.append(lambda op=op: theorems.time_derivative_check(a, b, op))
    reports = _run_cases(thunks)
    return _emit(args, reports)


# ---------------------------------------------------------------------------


def _add_common(sub):
    sub.add_argument("--hbar", type=float, default=1.0)
    sub.add_argument("--mass", type=float, default=1.0)
    sub.add_argument("--e2", type=float, default=1.0, help="Coulomb strength")
    sub.add_argument("--omega", type=float, default=1.0, help="oscillator frequency")
    sub.add_argument("--v0", type=float, default=1.0, help="inverse-square strength")
    sub.add_argument("--file", default=None, help="tabulated potential file")
    sub.add_argument("--format", choices=("table", "json", "csv"), default="table")
    sub.add_argument("--output", default=None, help="write output to a file")


def _add_state_selection(sub):
    sub.add_argument("--potential", default="coulomb")
    sub.add_argument("--n", default="1..3", help="Coulomb principal numbers, 'a..b'")
    sub.add_argument("--nr", default="0..2", help="oscillator radial numbers, 'a..b'")
    sub.add_argument("--l", default=None, help="angular momenta, 'a..b' (default: all)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="radial-theorems",
        description="verify boundary-corrected radial quantum theorems",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("solve", help="Numerov bound state")
    _add_common(p)
    p.add_argument("--potential", default="kratzer")
    p.add_argument("--l", dest="l_single", type=int, default=0)
    p.add_argument("--nodes", type=int, default=0)
    p.add_argument("--dump", default=None, help="grid dump path")
    p.set_defaults(func=_cmd_solve)

    p = subs.add_parser("kramers", help="Kramers sum-rule sweep")
    _add_common(p)
    _add_state_selection(p)
    p.add_argument("--s", default="-1..4")
    p.add_argument("--mode", choices=("classic", "modified", "both"), default="modified")
    p.set_defaults(func=_cmd_kramers)

    p = subs.add_parser("hypervirial", help="hypervirial sum-rule sweep")
    _add_common(p)
    _add_state_selection(p)
    p.add_argument("--s", default="-1..3")
    p.add_argument(
        "--formulation", choices=("commutator", "bracket", "power"), default="power"
    )
    p.set_defaults(func=_cmd_hypervirial)

    p = subs.add_parser("ehrenfest", help="Ehrenfest force balances")
    _add_common(p)
    _add_state_selection(p)
    p.set_defaults(func=_cmd_ehrenfest)

    p = subs.add_parser("bracket", help="boundary bracket: analytic vs numeric")
    _add_common(p)
    _add_state_selection(p)
    p.add_argument("--op", default="pr")
    p.set_defaults(func=_cmd_bracket)

    p = subs.add_parser("contact", help="contact-density relation")
    _add_common(p)
    _add_state_selection(p)
    p.set_defaults(func=_cmd_contact)

    p = subs.add_parser("timederiv", help="superposition time-derivative identity")
    _add_common(p)
    p.add_argument("--potential", default="coulomb")
    p.add_argument("--pair", default="1,2", help="principal numbers 'nA,nB'")
    p.add_argument("--l", default=None)
    p.add_argument("--op", default="coordinate")
    p.set_defaults(func=_cmd_timederiv)

    p = subs.add_parser("suite", help="full verification matrix")
    _add_common(p)
    p.set_defaults(func=_cmd_suite)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
