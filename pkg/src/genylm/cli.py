"""Command-line front end.

Angles are given in degrees on the command line and converted to radians
before anything is evaluated.
"""
from __future__ import annotations

import argparse
import cmath
import contextlib
import csv
import math
import sys

import numpy as np

from .amplitudes import M_VALUES, amplitude_matrix
from .harmonics import AxisVariant, HarmonicFamily, Source
from .quadrature import DEFAULT_GRID
from .verify import DEFAULT_TOLERANCES, errata_report, orthonormality_report, std_gram_matrix, validation_suite
from .wigner import Direction
from .quadrature import sphere_grid

CSV_HEADER = ["theta_deg", "phi_deg", "re", "im", "abs2"]
DISPLAY_ZERO = 1e-14


class ConfigError(ValueError):
    pass


def fmt15(x: float) -> str:
    """15 significant digits; round-off below DISPLAY_ZERO prints as 0."""
    if abs(x) < DISPLAY_ZERO:
        return "0"
    return f"{x:#.15g}"


def _family(args) -> HarmonicFamily:
    return HarmonicFamily(Source(args.source), AxisVariant(args.variant))


def _direction(pair) -> Direction:
    return Direction.from_degrees(*pair)


def _open_output(path):
    if path in (None, "-"):
        return contextlib.nullcontext(sys.stdout)
    return open(path, "w", newline="")


def _write_rows(path, header, rows):
    with _open_output(path) as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in row])


def cmd_eval(args) -> int:
    axis = _direction(args.axis)
    theta, phi = (math.radians(a) for a in args.at)
    if not 0.0 <= theta <= math.pi:
        raise ConfigError(f"--at theta must lie in [0, 180] degrees, got {args.at[0]}")
    value = complex(_family(args).evaluate(args.m, axis, theta, phi))
    modulus = abs(value)
    phase = cmath.phase(value) if modulus >= DISPLAY_ZERO else 0.0
    print(fmt15(value.real), fmt15(value.imag))
    print(fmt15(modulus), fmt15(phase))
    return 0


def cmd_table(args) -> int:
    axis = _direction(args.axis)
    if args.kind in ("amplitudes", "amplitudes-printed"):
        a = amplitude_matrix(axis, as_printed=args.kind == "amplitudes-printed")
        header = ["m_i", "m_f", "re", "im", "abs2"]
    else:
        grid = sphere_grid(*args.grid)
        if args.kind == "gram":
            a = orthonormality_report(_family(args), axis, grid).gram
        else:
            a = std_gram_matrix(grid)
        header = ["m_prime", "m", "re", "im", "abs2"]
    rows = []
    for i, mi in enumerate(M_VALUES):
        for j, mf in enumerate(M_VALUES):
            z = complex(a[i, j])
            rows.append([mi, mf, z.real, z.imag, z.real**2 + z.imag**2])
    _write_rows(args.output, header, rows)
    return 0


def plot_data(family: HarmonicFamily, m: int, axis: Direction, n_theta: int, n_phi: int):
    """Rows of (theta_deg, phi_deg, re, im, abs2) over a uniform grid, theta outer."""
    theta_deg = np.linspace(0.0, 180.0, n_theta)
    phi_deg = np.linspace(0.0, 360.0, n_phi, endpoint=False)
    rows = []
    for td in theta_deg:
        values = family.evaluate(m, axis, np.radians(td), np.radians(phi_deg))
        for pd, z in zip(phi_deg, np.broadcast_to(values, phi_deg.shape)):
            rows.append([float(td), float(pd), float(z.real), float(z.imag), float(z.real**2 + z.imag**2)])
    return rows


def cmd_plotdata(args) -> int:
    rows = plot_data(_family(args), args.m, _direction(args.axis), *args.grid)
    _write_rows(args.output, CSV_HEADER, rows)
    return 0


def _parse_tolerances(items) -> dict:
    out = {}
    for item in items or ():
        name, sep, value = item.partition("=")
        if not sep or name not in DEFAULT_TOLERANCES:
            raise ConfigError(f"bad --tol {item!r}; names: {', '.join(DEFAULT_TOLERANCES)}")
        try:
            tol = float(value)
        except ValueError:
            raise ConfigError(f"bad tolerance value in {item!r}") from None
        if not (tol > 0 and math.isfinite(tol)):
            raise ConfigError(f"tolerance must be positive, got {item!r}")
        out[name] = tol
    return out


def _format_ratio(r) -> str:
    if r is None:
        return "none"
    if abs(r.imag) < DISPLAY_ZERO:
        return repr(r.real)
    return f"{r.real!r}{r.imag:+}j"


def _format_finding(tag, f) -> str:
    line = f"{tag} {f.name} max_deviation={f.max_deviation:.3e} ratio={_format_ratio(f.ratio)}"
    if f.corrected_prefactor is not None:
        line += f" printed_prefactor={f.printed_prefactor!r} corrected_prefactor={f.corrected_prefactor!r}"
    return line


def cmd_validate(args) -> int:
    tolerances = _parse_tolerances(args.tol)
    families = None
    if args.family:
        families = [HarmonicFamily.parse(name) for name in args.family]
    checks, flags = validation_suite(families, tuple(args.grid), args.seed, tolerances)
    for c in checks:
        print(f"CHECK {c.name} {c.residual:.3e} {c.tolerance:.0e} {'PASS' if c.passed else 'FAIL'}")
    for f in flags:
        print(_format_finding("FLAG", f))
    n_pass = sum(c.passed for c in checks)
    print(f"SUMMARY {n_pass}/{len(checks)} PASS")
    return 0 if n_pass == len(checks) else 1


def cmd_errata(args) -> int:
    tol = DEFAULT_TOLERANCES["substitution_agreement"]
    for f in errata_report(args.seed, args.directions, sphere_grid(*args.grid), tol):
        print(_format_finding("ERRATUM" if f.max_deviation >= tol else "OK", f))
    return 0


def _positive_int(s: str) -> int:
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{s!r} is not an integer") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"{s!r} must be >= 1")
    return v


def _m_value(s: str) -> int:
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{s!r} is not an integer") from None
    if v not in M_VALUES:
        raise argparse.ArgumentTypeError(f"m must be one of -2..2, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="genylm", description="Generalized l=2 spherical harmonics.")
    sub = p.add_subparsers(dest="command", required=True)

    def axis_opt(sp):
        sp.add_argument("--axis", nargs=2, type=float, default=(0.0, 0.0), metavar=("THETA_P", "PHI_P"),
                        help="quantization axis in degrees (default: 0 0)")

    def family_opts(sp):
        sp.add_argument("--source", choices=[s.value for s in Source], default=Source.COMPOSED.value)
        sp.add_argument("--variant", choices=[v.value for v in AxisVariant], default=AxisVariant.Z_PRIME.value)

    def grid_opt(sp, default=DEFAULT_GRID):
        sp.add_argument("--grid", nargs=2, type=_positive_int, default=default, metavar=("N_THETA", "N_PHI"))

    sp = sub.add_parser("eval", help="evaluate one generalized harmonic at one point")
    sp.add_argument("--m", type=_m_value, required=True)
    axis_opt(sp)
    sp.add_argument("--at", nargs=2, type=float, required=True, metavar=("THETA", "PHI"),
                    help="evaluation point in degrees")
    family_opts(sp)
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("table", help="amplitude or Gram matrix as CSV")
    sp.add_argument("--kind", choices=["amplitudes", "amplitudes-printed", "gram", "std-gram"], default="amplitudes")
    axis_opt(sp)
    family_opts(sp)
    grid_opt(sp)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("validate", help="run the verification battery")
    sp.add_argument("--family", action="append",
                    help="check only this family (repeatable), e.g. composed-z, paper-closed-x, substitution-y")
    grid_opt(sp)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--tol", action="append", metavar="NAME=VALUE", help="override one tolerance")
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("errata", help="printed x'/y' forms and amplitude table vs the derivation rules")
    grid_opt(sp)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--directions", type=_positive_int, default=10)
    sp.set_defaults(func=cmd_errata)

    sp = sub.add_parser("plot-data", help="CSV samples of one harmonic on a uniform angle grid")
    sp.add_argument("--m", type=_m_value, required=True)
    axis_opt(sp)
    family_opts(sp)
    grid_opt(sp, default=(19, 36))
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_plotdata)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:  # includes ConfigError and invalid angles
        print(f"genylm: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
