"""Command-line front end.

Exit status: 0 on success, 1 if any sweep row or oracle check failed, 2 on a config error.
"""
from __future__ import annotations

import argparse
import math
import sys
import warnings

from . import config as cfgmod
from .errors import BiphotonError, ConfigParseError, InvalidConfigError
from .geometry import derive_biphoton_coeffs, derive_heralded_coeffs, symmetric_cloud_length
from .oam import TruncationWarning, spiral_spectrum
from .schmidt import schmidt_number
from .sweeps import (
    DEFAULT_OUTPUTS,
    OUTPUTS,
    SweepRow,
    SweepSpec,
    canonical_variable,
    emit_csv,
    emit_spectrum_csv,
    run_oracle_suite,
    run_sweep,
)

EXIT_OK, EXIT_FAILED, EXIT_CONFIG = 0, 1, 2


def _cmd_coeffs(args):
    config = cfgmod.load_config(args.config)
    c = derive_biphoton_coeffs(config)
    h = derive_heralded_coeffs(c, config.wg)
    for name, value in (("A", c.A), ("B", c.B), ("C", c.C), ("D", c.D), ("F", h.F), ("G", h.G)):
        print(f"{name} = {value:.12g} um^2")
    return EXIT_OK


def _cmd_schmidt(args):
    r = schmidt_number(derive_biphoton_coeffs(cfgmod.load_config(args.config)))
    print(f"K = {r.K:.12g}")
    print(f"Kx = {r.Kx:.12g}")
    print(f"Ky = {r.Ky:.12g}")
    return EXIT_OK


def _cmd_oam(args):
    config = cfgmod.load_config(args.config)
    h = derive_heralded_coeffs(derive_biphoton_coeffs(config), config.wg)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", TruncationWarning)
        spectrum = spiral_spectrum(h, args.mmax)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    print("m,P")
    for m, p in spectrum.to_rows():
        print(f"{m},{p:.12g}")
    print(f"# residual = {spectrum.residual:.3e}")
    if args.spectrum_out:
        row = SweepRow(variable_value=config.phi_deg, spectrum=spectrum)
        emit_spectrum_csv([row], args.spectrum_out)
    return EXIT_OK


def _parse_bound(text, variable):
    """Sweep bounds: bare numbers are degrees (angle) or um (lengths); suffixes allowed."""
    variable = canonical_variable(variable)
    try:
        if variable == "angle":
            return math.degrees(cfgmod.parse_quantity(text, cfgmod.ANGLE_UNITS, default_unit="deg"))
        return cfgmod.parse_quantity(text, cfgmod.LENGTH_UNITS, default_unit="um")
    except ValueError as exc:
        raise InvalidConfigError(str(exc)) from None


def _cmd_sweep(args):
    base = cfgmod.load_config(args.config)
    outputs = frozenset(o.strip() for o in args.outputs.split(",") if o.strip())
    spec = SweepSpec(
        variable=args.var,
        start=_parse_bound(args.start, args.var),
        stop=_parse_bound(args.stop, args.var),
        steps=args.steps,
        base=base,
        outputs=outputs,
    )
    rows = run_sweep(spec, workers=args.workers)
    failed = [r for r in rows if r.error]
    for r in failed:
        print(f"row {r.variable_value:.12g}: {r.error}", file=sys.stderr)
    if len(failed) < len(rows):
        emit_csv(rows, args.out)
        if args.spectrum_out:
            emit_spectrum_csv(rows, args.spectrum_out)
    return EXIT_FAILED if failed else EXIT_OK


def _cmd_oracle(args):
    report = run_oracle_suite(cfgmod.load_config(args.config), grid=args.grid)
    for check in report.checks:
        print(check.line())
    return EXIT_OK if report.passed else EXIT_FAILED


def _cmd_symmetry(args):
    config = cfgmod.load_config(args.config)
    print(f"L* = {symmetric_cloud_length(config.R, config.w0):.12g} um")
    return EXIT_OK


def _cmd_preset(args):
    sys.stdout.write(cfgmod.PRESETS[args.name])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="biphoton", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    config_help = "config file, or a preset name (fig2, fig3, fig4)"

    p = sub.add_parser("coeffs", help="print the Gaussian widths A..D and F, G")
    p.add_argument("config", help=config_help)
    p.set_defaults(func=_cmd_coeffs)

    p = sub.add_parser("schmidt", help="print the Schmidt number")
    p.add_argument("config", help=config_help)
    p.set_defaults(func=_cmd_schmidt)

    p = sub.add_parser("oam", help="print the spiral spectrum of the heralded Stokes photon")
    p.add_argument("config", help=config_help)
    p.add_argument("--mmax", type=int, default=None, help="Bessel truncation order (default: automatic)")
    p.add_argument("--spectrum-out", metavar="PATH")
    p.set_defaults(func=_cmd_oam)

    p = sub.add_parser("sweep", help="sweep one parameter and write a CSV")
    p.add_argument("config", help=config_help)
    p.add_argument("--var", required=True, choices=["angle", "length", "w0", "w1"])
    p.add_argument("--from", dest="start", required=True, help="start (deg or um unless suffixed)")
    p.add_argument("--to", dest="stop", required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--out", required=True, metavar="PATH")
    p.add_argument("--outputs", default=",".join(sorted(DEFAULT_OUTPUTS)),
                   help=f"comma list from {{{','.join(sorted(OUTPUTS))}}}")
    p.add_argument("--spectrum-out", metavar="PATH", help="long-format spectra (needs oam_full)")
    p.add_argument("--workers", type=int, default=None, help="default: $BIPHOTON_WORKERS or CPU count")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("oracle", help="run every closed-form versus oracle comparison")
    p.add_argument("config", help=config_help)
    p.add_argument("--grid", type=int, default=1024, help="SVD grid points per axis")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("symmetry", help="print the cloud length giving cylindrical symmetry")
    p.add_argument("config", help=config_help)
    p.set_defaults(func=_cmd_symmetry)

    p = sub.add_parser("preset", help="print a built-in preset config")
    p.add_argument("name", choices=sorted(cfgmod.PRESETS))
    p.set_defaults(func=_cmd_preset)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigParseError, InvalidConfigError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (BiphotonError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
