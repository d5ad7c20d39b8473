"""Command-line driver.

Subcommands:
  spectrum     sweep the magnetic field and tabulate all eight levels
  crossings    validated crossing catalog at a fixed electric configuration
  b1           first-crossing location versus E or versus theta
  gap          crossing gap at the first crossing versus E or theta
  fit          power-law fit of a two-column data file
  audit        randomized discriminant factorization audit
  plot         render a data file as an SVG line plot
  hamiltonian  dump the 8x8 matrix at one configuration

Exit codes: 0 success, 1 usage or input error, 2 validation failure.
Every command is deterministic: identical invocations emit identical bytes.
Data files are UTF-8 CSV with '#' provenance comments echoing all inputs,
a header row naming columns with units, and 12-significant-digit values.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from .algebra import AlgebraError
from .crossings import (CrossingError, b1_approx_tilde, b1_exact_tilde,
                        crossing_catalog, gap_lowest_pair)
from .discriminant import audit_triple
from .fitting import FIT_MODELS, FitError, fit_power_law
from .hamiltonian import build_hamiltonian, format_matrix
from .model import (DEFAULT_CONSTANTS, ConfigError, EnergyUnit,
                    FieldConfiguration, MoleculeParameters, b_field_from_tilde,
                    convert_energy, molecule_from_config, scale_parameters)
from .plotting import PlotError, render_line_plot
from .spectrum import SpectrumError, analytic_eigenvalues

_UNIT_BY_FLAG = {"percm": EnergyUnit.INVERSE_CM, "ghz": EnergyUnit.GHZ}


class _Parser(argparse.ArgumentParser):
    """argparse variant whose usage errors exit with status 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(1)


def _fmt(value) -> str:
    return format(float(value), ".12g")


def _emit(text: str, out_path) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(command: str, provenance: dict, header, rows) -> str:
    lines = [f"# ohcross {command}"]
    for key in sorted(provenance):
        value = provenance[key]
        text = _fmt(value) if isinstance(value, float) else str(value)
        lines.append(f"# {key} = {text}")
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(
            cell if isinstance(cell, str) else _fmt(cell) for cell in row))
    return "\n".join(lines) + "\n"


def _molecule(args) -> MoleculeParameters:
    if getattr(args, "config", None):
        return molecule_from_config(args.config)
    return MoleculeParameters()


def _molecule_provenance(mol: MoleculeParameters) -> dict:
    return {
        "delta_ghz": mol.lambda_doubling / (2.0 * math.pi * 1e9),
        "mu_e_debye": mol.electric_dipole / DEFAULT_CONSTANTS.debye,
    }


def _theta(args, default: float = 0.0) -> float:
    if getattr(args, "theta_deg", None) is not None:
        return math.radians(args.theta_deg)
    if getattr(args, "theta_rad", None) is not None:
        return args.theta_rad
    return default


def _theta_range(args) -> tuple:
    deg = (args.theta_min_deg, args.theta_max_deg)
    rad = (args.theta_min_rad, args.theta_max_rad)
    if deg != (None, None):
        if None in deg or rad != (None, None):
            raise ValueError("theta sweep takes --theta-min-deg with "
                             "--theta-max-deg, not mixed with radians")
        return math.radians(deg[0]), math.radians(deg[1])
    if None in rad:
        raise ValueError("theta sweep needs --theta-min-deg/--theta-max-deg "
                         "or --theta-min-rad/--theta-max-rad")
    return float(rad[0]), float(rad[1])


def _check_sweep(lo: float, hi: float, points: int) -> None:
    if not lo < hi:
        raise ValueError("sweep range must satisfy min < max")
    if points < 2:
        raise ValueError("sweep needs at least 2 points")


def _read_data(path) -> tuple:
    """Parse a CSV data file: ('#' comments skipped) header + float rows."""
    header = None
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if header is None:
                header = line.split(",")
                continue
            cells = line.split(",")
            if len(cells) != len(header):
                raise PlotError(f"row has {len(cells)} cells, header has "
                                f"{len(header)}")
            try:
                rows.append([float(c) for c in cells])
            except ValueError as exc:
                raise PlotError(f"non-numeric value in data row: {line}") from exc
    if header is None or not rows:
        raise PlotError("data file has no rows")
    columns = [list(col) for col in zip(*rows)]
    return header, columns


def _cmd_spectrum(args) -> int:
    mol = _molecule(args)
    theta = _theta(args)
    _check_sweep(args.b_min, args.b_max, args.points)
    unit = _UNIT_BY_FLAG[args.unit]
    rows = []
    for b in np.linspace(args.b_min, args.b_max, args.points):
        p = scale_parameters(mol, FieldConfiguration(
            e_field=args.e_vcm * 100.0, b_field=float(b), theta=theta))
        lams = analytic_eigenvalues(p).lambdas
        rows.append([float(b)] + [convert_energy(v, EnergyUnit.GHZ, unit)
                                  for v in lams])
    provenance = {
        "b_min_tesla": float(args.b_min), "b_max_tesla": float(args.b_max),
        "points": args.points, "e_vcm": float(args.e_vcm),
        "theta_rad": theta, "unit": args.unit,
    }
    provenance.update(_molecule_provenance(mol))
    header = ["b_tesla"] + [f"lambda_{k}_{args.unit}" for k in range(1, 9)]
    _emit(_csv("spectrum", provenance, header, rows), args.out)
    return 0


def _cmd_crossings(args) -> int:
    mol = _molecule(args)
    theta = _theta(args)
    unit = _UNIT_BY_FLAG[args.unit]
    p = scale_parameters(mol, FieldConfiguration(
        e_field=args.e_vcm * 100.0, b_field=0.0, theta=theta))
    records = crossing_catalog(p, include_mirror=args.include_mirror)
    rows = [[rec.b_location, rec.kind, f"{rec.pair[0]}-{rec.pair[1]}",
             convert_energy(rec.gap, EnergyUnit.GHZ, unit), rec.source]
            for rec in records]
    provenance = {
        "e_vcm": float(args.e_vcm), "theta_rad": theta,
        "include_mirror": args.include_mirror, "unit": args.unit,
    }
    provenance.update(_molecule_provenance(mol))
    header = ["b_tesla", "kind", "pair", f"gap_{args.unit}", "source"]
    _emit(_csv("crossings", provenance, header, rows), args.out)
    return 0


def _sweep_rows(args, mol, value_fn):
    """Rows of (sweep value, value_fn outputs) for b1 and gap sweeps."""
    if args.vs == "e":
        _check_sweep(args.e_min, args.e_max, args.points)
        theta = _theta(args)
        rows = []
        for e_vcm in np.linspace(args.e_min, args.e_max, args.points):
            p = scale_parameters(mol, FieldConfiguration(
                e_field=float(e_vcm) * 100.0, b_field=0.0, theta=theta))
            rows.append([float(e_vcm)] + value_fn(p))
        provenance = {
            "vs": "e", "e_min_vcm": float(args.e_min),
            "e_max_vcm": float(args.e_max), "points": args.points,
            "theta_rad": theta,
        }
        return "e_vcm", rows, provenance
    lo, hi = _theta_range(args)
    _check_sweep(lo, hi, args.points)
    rows = []
    for theta in np.linspace(lo, hi, args.points):
        p = scale_parameters(mol, FieldConfiguration(
            e_field=args.e_vcm * 100.0, b_field=0.0, theta=float(theta)))
        rows.append([float(theta)] + value_fn(p))
    provenance = {
        "vs": "theta", "theta_min_rad": lo, "theta_max_rad": hi,
        "points": args.points, "e_vcm": float(args.e_vcm),
    }
    return "theta_rad", rows, provenance


def _cmd_b1(args) -> int:
    mol = _molecule(args)

    def locate(p) -> list:
        exact = b1_exact_tilde(p.e_tilde, p.delta_tilde, p.theta)
        approx = b1_approx_tilde(p.e_tilde, p.delta_tilde, p.theta)
        return [b_field_from_tilde(exact), b_field_from_tilde(approx)]

    x_name, rows, provenance = _sweep_rows(args, mol, locate)
    provenance.update(_molecule_provenance(mol))
    header = [x_name, "b1_exact_tesla", "b1_approx_tesla"]
    _emit(_csv("b1", provenance, header, rows), args.out)
    return 0


def _cmd_gap(args) -> int:
    mol = _molecule(args)
    unit = _UNIT_BY_FLAG[args.unit]

    def measure(p) -> list:
        bt1 = b1_exact_tilde(p.e_tilde, p.delta_tilde, p.theta)
        gap = gap_lowest_pair(p.with_b_tilde(bt1))
        return [convert_energy(gap, EnergyUnit.GHZ, unit)]

    x_name, rows, provenance = _sweep_rows(args, mol, measure)
    provenance["unit"] = args.unit
    provenance.update(_molecule_provenance(mol))
    header = [x_name, f"gap_{args.unit}"]
    _emit(_csv("gap", provenance, header, rows), args.out)
    return 0


def _cmd_fit(args) -> int:
    header, columns = _read_data(args.infile)
    if not 1 <= args.x_col <= len(columns) or not 1 <= args.y_col <= len(columns):
        raise ValueError(f"column selection outside 1..{len(columns)}")
    window = None
    if args.window_min is not None or args.window_max is not None:
        if args.window_min is None or args.window_max is None:
            raise ValueError("give both --window-min and --window-max")
        window = (args.window_min, args.window_max)
    xs = columns[args.x_col - 1]
    ys = columns[args.y_col - 1]
    result = fit_power_law(xs, ys, args.model, window=window)
    used = [v for v in xs if result.window[0] <= v <= result.window[1]]
    lines = [
        f"model: {result.model}",
        f"coefficient: {_fmt(result.coefficient)}",
        f"exponent: {_fmt(result.exponent)}",
        f"rms_residual: {_fmt(result.rms_residual)}",
        f"window_min: {_fmt(result.window[0])}",
        f"window_max: {_fmt(result.window[1])}",
        f"points_used: {len(used)}",
    ]
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_audit(args) -> int:
    mol = _molecule(args)
    fault = ("g6", -1.0) if args.inject_g6_flip else None
    report = audit_triple(molecule=mol, n_samples=args.samples,
                          seed=args.seed, fault=fault)
    lines = []
    for sec in report.sections:
        tag = "PASS" if sec.passed else "FAIL"
        lines.append(f"[{tag}] {sec.name}: max_rel={sec.max_rel_error:.6e} "
                     f"tol={sec.tolerance:.0e} samples={sec.samples}")
    if report.suspects:
        lines.append("suspects: " + ", ".join(report.suspects))
    lines.append(f"audit: {'PASS' if report.passed else 'FAIL'}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0 if report.passed else 2


def _cmd_plot(args) -> int:
    header, columns = _read_data(args.infile)
    if len(columns) < 2:
        raise PlotError("plot needs an x column plus at least one series")
    svg = render_line_plot(
        columns[0], columns[1:], header[1:],
        title=args.title if args.title is not None else "",
        x_label=args.x_label if args.x_label is not None else header[0],
        y_label=args.y_label if args.y_label is not None else "")
    _emit(svg, args.out)
    return 0


def _cmd_hamiltonian(args) -> int:
    mol = _molecule(args)
    theta = _theta(args)
    p = scale_parameters(mol, FieldConfiguration(
        e_field=args.e_vcm * 100.0, b_field=args.b_tesla, theta=theta))
    _emit(format_matrix(build_hamiltonian(p)), args.out)
    return 0


def _add_angle_flags(sp) -> None:
    group = sp.add_mutually_exclusive_group()
    group.add_argument("--theta-deg", type=float,
                       help="angle between fields, degrees")
    group.add_argument("--theta-rad", type=float,
                       help="angle between fields, radians")


def _add_output_flags(sp, unit: bool = True) -> None:
    sp.add_argument("--config", help="molecule config JSON file "
                                     "(keys delta_ghz, mu_e_debye)")
    sp.add_argument("--out", help="output path (default stdout)")
    if unit:
        sp.add_argument("--unit", choices=("percm", "ghz"), default="percm",
                        help="energy output unit (default percm)")


def _add_sweep_flags(sp) -> None:
    sp.add_argument("--vs", choices=("e", "theta"), required=True,
                    help="sweep variable")
    sp.add_argument("--e-vcm", type=float, default=0.0,
                    help="fixed electric field, V/cm (theta sweeps)")
    sp.add_argument("--e-min", type=float, help="sweep start, V/cm")
    sp.add_argument("--e-max", type=float, help="sweep end, V/cm")
    _add_angle_flags(sp)
    sp.add_argument("--theta-min-deg", type=float)
    sp.add_argument("--theta-max-deg", type=float)
    sp.add_argument("--theta-min-rad", type=float)
    sp.add_argument("--theta-max-rad", type=float)
    sp.add_argument("--points", type=int, default=51)


def build_parser() -> _Parser:
    parser = _Parser(prog="ohcross",
                     description="Level-crossing analysis of the eight-state "
                                 "Stark-Zeeman model")
    subs = parser.add_subparsers(dest="command", required=True,
                                 parser_class=_Parser)

    sp = subs.add_parser("spectrum", help="tabulate all levels along B")
    sp.add_argument("--e-vcm", type=float, default=0.0)
    _add_angle_flags(sp)
    sp.add_argument("--b-min", type=float, default=0.0)
    sp.add_argument("--b-max", type=float, required=True)
    sp.add_argument("--points", type=int, default=101)
    _add_output_flags(sp)
    sp.set_defaults(func=_cmd_spectrum)

    sp = subs.add_parser("crossings", help="crossing catalog at fixed E, theta")
    sp.add_argument("--e-vcm", type=float, default=0.0)
    _add_angle_flags(sp)
    sp.add_argument("--include-mirror", action="store_true",
                    help="also list the mirrored negative-B locations")
    _add_output_flags(sp)
    sp.set_defaults(func=_cmd_crossings)

    sp = subs.add_parser("b1", help="first-crossing location sweep")
    _add_sweep_flags(sp)
    _add_output_flags(sp, unit=False)
    sp.set_defaults(func=_cmd_b1)

    sp = subs.add_parser("gap", help="first-crossing gap sweep")
    _add_sweep_flags(sp)
    _add_output_flags(sp)
    sp.set_defaults(func=_cmd_gap)

    sp = subs.add_parser("fit", help="power-law fit of a data file")
    sp.add_argument("--in", dest="infile", required=True,
                    help="CSV data file to fit")
    sp.add_argument("--model", choices=FIT_MODELS, required=True)
    sp.add_argument("--window-min", type=float)
    sp.add_argument("--window-max", type=float)
    sp.add_argument("--x-col", type=int, default=1)
    sp.add_argument("--y-col", type=int, default=2)
    sp.add_argument("--out", help="output path (default stdout)")
    sp.set_defaults(func=_cmd_fit)

    sp = subs.add_parser("audit", help="discriminant factorization audit")
    sp.add_argument("--samples", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=7)
    sp.add_argument("--inject-g6-flip", action="store_true",
                    help="corrupt the g6 octic coefficient to exercise "
                         "breach detection and localization")
    sp.add_argument("--config", help="molecule config JSON file")
    sp.add_argument("--out", help="output path (default stdout)")
    sp.set_defaults(func=_cmd_audit)

    sp = subs.add_parser("plot", help="render a data file as SVG")
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--title")
    sp.add_argument("--x-label")
    sp.add_argument("--y-label")
    sp.add_argument("--out", help="output path (default stdout)")
    sp.set_defaults(func=_cmd_plot)

    sp = subs.add_parser("hamiltonian", help="dump the 8x8 matrix")
    sp.add_argument("--b-tesla", type=float, default=0.0)
    sp.add_argument("--e-vcm", type=float, default=0.0)
    _add_angle_flags(sp)
    sp.add_argument("--config", help="molecule config JSON file")
    sp.add_argument("--out", help="output path (default stdout)")
    sp.set_defaults(func=_cmd_hamiltonian)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except (SpectrumError, CrossingError, AlgebraError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except (ConfigError, FitError, PlotError, OSError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))
