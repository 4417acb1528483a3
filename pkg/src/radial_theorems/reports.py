"""Immutable verification reports and their serialization.

Every verifier returns one of the report types below.  Serialization keeps
full float precision: JSON uses Python's shortest round-trip repr, so a
re-parse reproduces every numeric field bit-exactly.
"""

import io
import json
from dataclasses import dataclass, field


def _num(x):
    """JSON-safe numeric value; complex becomes {re, im}."""
    if hasattr(x, "item"):  # numpy scalar
        x = x.item()
    if isinstance(x, complex):
        if x.imag == 0.0:
            return x.real
        return {"re": x.real, "im": x.imag}
    return x


@dataclass(frozen=True)
class SumRuleReport:
    """Outcome of a sum-rule check: sum(lhs_terms) should equal rhs_boundary."""

    rule: str
    case: dict
    lhs_terms: tuple  # ((name, value), ...)
    rhs_boundary: float
    residual: float
    scale: float
    tolerance: float
    delta_triggered: bool

    @property
    def passed(self):
        return abs(self.residual) <= self.tolerance * self.scale

    @property
    def verdict(self):
        return "pass" if self.passed else "fail"


@dataclass(frozen=True)
class ForceBalanceReport:
    """Radial-momentum Ehrenfest balance for a stationary state.

    balance = centrifugal + mean_force + boundary_force must vanish.  In
    combined mode the individually divergent centrifugal and force moments
    are integrated jointly; the joint finite remainder is then carried in
    mean_force and centrifugal is reported as 0.
    """

    case: dict
    centrifugal: float
    mean_force: float
    boundary_force: float
    balance: float
    combined_mode: bool
    scale: float
    tolerance: float

    @property
    def passed(self):
        return abs(self.balance) <= self.tolerance * self.scale

    @property
    def verdict(self):
        return "pass" if self.passed else "fail"


@dataclass(frozen=True)
class CheckReport:
    """A generic two-sided identity check: lhs should equal rhs."""

    name: str
    case: dict
    lhs: float
    rhs: float
    residual: float
    scale: float
    tolerance: float
    info: dict = field(default_factory=dict)

    @property
    def passed(self):
        return abs(self.residual) <= self.tolerance * self.scale

    @property
    def verdict(self):
        return "pass" if self.passed else "fail"


@dataclass(frozen=True)
class TimeDerivativeReport:
    """Per-time residuals of d<A>/dt = (i/hbar)<[H,A]> + Pi on a superposition."""

    case: dict
    times: tuple
    residuals: tuple  # complex, with Pi included
    pi_values: tuple  # Pi(t), complex
    omitted_residuals: tuple  # (i/hbar)<[H,A]> - d<A>/dt, equals -Pi(t)
    scale: float
    tolerance: float

    @property
    def max_residual(self):
        return max(abs(x) for x in self.residuals)

    @property
    def passed(self):
        return self.max_residual <= self.tolerance * self.scale

    @property
    def verdict(self):
        return "pass" if self.passed else "fail"


def report_to_dict(report):
    """Flatten any report into the JSON schema."""
    if isinstance(report, SumRuleReport):
        return {
            "rule": report.rule,
            "case": report.case,
            "lhs_terms": [{"name": n, "value": _num(v)} for n, v in report.lhs_terms],
            "rhs_boundary": _num(report.rhs_boundary),
            "residual": _num(report.residual),
            "scale": _num(report.scale),
            "tolerance": report.tolerance,
            "pass": bool(report.passed),
            "delta_triggered": report.delta_triggered,
        }
    if isinstance(report, ForceBalanceReport):
        return {
            "rule": "ehrenfest-radial",
            "case": report.case,
            "lhs_terms": [
                {"name": "centrifugal", "value": _num(report.centrifugal)},
                {"name": "mean_force", "value": _num(report.mean_force)},
                {"name": "boundary_force", "value": _num(report.boundary_force)},
            ],
            "rhs_boundary": 0.0,
            "residual": _num(report.balance),
            "scale": _num(report.scale),
            "tolerance": report.tolerance,
            "pass": bool(report.passed),
            "combined_mode": report.combined_mode,
        }
    if isinstance(report, CheckReport):
        return {
            "rule": report.name,
            "case": report.case,
            "lhs_terms": [{"name": "lhs", "value": _num(report.lhs)}],
            "rhs_boundary": _num(report.rhs),
            "residual": _num(report.residual),
            "scale": report.scale,
            "tolerance": report.tolerance,
            "pass": bool(report.passed),
            "info": {k: _num(v) for k, v in report.info.items()},
        }
    if isinstance(report, TimeDerivativeReport):
        return {
            "rule": "time-derivative",
            "case": report.case,
            "times": [_num(t) for t in report.times],
            "residuals": [_num(x) for x in report.residuals],
            "pi_values": [_num(x) for x in report.pi_values],
            "omitted_residuals": [_num(x) for x in report.omitted_residuals],
            "residual": _num(report.max_residual),
            "scale": _num(report.scale),
            "tolerance": report.tolerance,
            "pass": bool(report.passed),
        }
    raise TypeError(f"unknown report type {type(report).__name__}")


def emit_json(reports):
    return json.dumps([report_to_dict(r) for r in reports], indent=2)


_CSV_COLUMNS = (
    "rule",
    "potential",
    "n_r",
    "l",
    "s_or_f",
    "mode",
    "lhs_terms",
    "rhs_boundary",
    "residual",
    "scale",
    "tolerance",
    "pass",
    "delta_triggered",
)


def _csv_row(d):
    case = d.get("case", {})
    terms = d.get("lhs_terms", [])
    row = {
        "rule": d.get("rule", ""),
        "potential": case.get("potential", ""),
        "n_r": case.get("n_r", ""),
        "l": case.get("l", ""),
        "s_or_f": case.get("s_or_f", case.get("s", "")),
        "mode": case.get("mode", ""),
        "lhs_terms": ";".join(f"{t['name']}={t['value']!r}" for t in terms),
        "rhs_boundary": repr(d.get("rhs_boundary", "")),
        "residual": repr(d.get("residual", "")),
        "scale": repr(d.get("scale", "")),
        "tolerance": repr(d.get("tolerance", "")),
        "pass": d.get("pass", ""),
        "delta_triggered": d.get("delta_triggered", ""),
    }
    return [str(row[c]) for c in _CSV_COLUMNS]


def emit_csv(reports):
    import csv

    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(_CSV_COLUMNS)
    for r in reports:
        writer.writerow(_csv_row(report_to_dict(r)))
    return buf.getvalue()


def emit_table(reports):
    """Aligned human-readable table; failing rows are marked."""
    rows = []
    for r in reports:
        d = report_to_dict(r)
        case = d.get("case", {})
        rows.append(
            (
                d.get("rule", ""),
                str(case.get("potential", "")),
                str(case.get("n_r", "")),
                str(case.get("l", "")),
                str(case.get("s_or_f", case.get("s", ""))),
                f"{_as_float(d.get('residual', 0.0)):.3e}",
                "ok" if d.get("pass") else "FAIL",
            )
        )
    header = ("rule", "potential", "n_r", "l", "s/f", "residual", "status")
    rows.insert(0, header)
    widths = [max(len(row[i]) for row in rows) for i in range(len(header))]
    lines = []
    for i, row in enumerate(rows):
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
        if i == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def _as_float(x):
    if isinstance(x, dict):
        return abs(complex(x.get("re", 0.0), x.get("im", 0.0)))
    try:
        return float(x)
    except (TypeError, ValueError):
        return 0.0


def emit_report(reports, format):
    """Serialize reports as 'table', 'json' or 'csv'."""
    if format == "json":
        return emit_json(reports)
    if format == "csv":
        return emit_csv(reports)
    if format == "table":
        return emit_table(reports)
    raise ValueError(f"unknown format {format!r}")
