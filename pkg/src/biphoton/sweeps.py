"""Parameter sweeps, CSV output and the combined closed-form-versus-oracle report.

No physics lives here: every number comes from the geometry, mode_function, oam and
schmidt modules.
"""
from __future__ import annotations

import csv
import dataclasses
import io
import math
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import BiphotonError, InvalidConfigError
from .geometry import ExperimentConfig, derive_biphoton_coeffs, derive_heralded_coeffs
from .mode_function import heralded_norm, normalization_check, paraxial_discrepancy
from .oam import TruncationWarning, spiral_spectrum, spiral_spectrum_oracle, spiral_weight
from .schmidt import schmidt_number, schmidt_oracle_svd

CSV_COLUMNS = ("variable_value", "A", "B", "C", "D", "F", "G", "K", "P0", "spectrum_json")
OUTPUTS = frozenset({"schmidt", "oam_p0", "oam_full", "coeffs"})
DEFAULT_OUTPUTS = frozenset({"coeffs", "schmidt", "oam_p0"})
MAX_STEPS = 10 ** 6

# variable name -> (config field, display unit -> internal factor)
VARIABLES = {
    "angle": ("phi", math.pi / 180),
    "cloud_length": ("L", 1.0),
    "pump_waist": ("w0", 1.0),
    "filter_width": ("w1", 1.0),
}
ALIASES = {"length": "cloud_length", "w0": "pump_waist", "w1": "filter_width"}


def canonical_variable(name: str) -> str:
    name = ALIASES.get(name, name)
    if name not in VARIABLES:
        raise InvalidConfigError(f"unknown sweep variable {name!r}")
    return name


@dataclass(frozen=True)
class SweepSpec:
    """start/stop are in display units: degrees for angle, um for lengths."""

    variable: str
    start: float
    stop: float
    steps: int
    base: ExperimentConfig
    outputs: frozenset = DEFAULT_OUTPUTS

    def __post_init__(self):
        object.__setattr__(self, "variable", canonical_variable(self.variable))
        object.__setattr__(self, "outputs", frozenset(self.outputs))
        unknown = self.outputs - OUTPUTS
        if unknown:
            raise InvalidConfigError(f"unknown output(s): {', '.join(sorted(unknown))}")
        if not self.start < self.stop:
            raise InvalidConfigError("sweep start must be below stop")
        if not 2 <= self.steps <= MAX_STEPS:
            raise InvalidConfigError(f"steps must lie in [2, {MAX_STEPS}]")
        if self.variable == "angle" and not (0 <= self.start and self.stop <= 90):
            raise InvalidConfigError("angle sweeps must stay within [0, 90] degrees")

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.steps)

    def config_at(self, value: float) -> ExperimentConfig:
        fld, factor = VARIABLES[self.variable]
        return dataclasses.replace(self.base, **{fld: value * factor})


@dataclass
class SweepRow:
    variable_value: float
    A: float | None = None
    B: float | None = None
    C: float | None = None
    D: float | None = None
    F: float | None = None
    G: float | None = None
    K: float | None = None
    P0: float | None = None
    spectrum: object = None
    error: str | None = None

    @property
    def spectrum_json(self):
        return None if self.spectrum is None else self.spectrum.to_json()


def compute_row(spec: SweepSpec, value: float) -> SweepRow:
    row = SweepRow(variable_value=float(value))
    try:
        config = spec.config_at(value)
        coeffs = derive_biphoton_coeffs(config)
        herald = derive_heralded_coeffs(coeffs, config.wg)
        if "coeffs" in spec.outputs:
            row.A, row.B, row.C, row.D = coeffs.A, coeffs.B, coeffs.C, coeffs.D
            row.F, row.G = herald.F, herald.G
        if "schmidt" in spec.outputs:
            row.K = schmidt_number(coeffs).K
        if "oam_full" in spec.outputs:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", TruncationWarning)
                row.spectrum = spiral_spectrum(herald)
            row.P0 = row.spectrum.p0
        elif "oam_p0" in spec.outputs:
            row.P0 = spiral_weight(herald, 0)
    except BiphotonError as exc:
        row.error = f"{type(exc).__name__}: {exc}"
    return row


def default_workers() -> int:
    env = os.environ.get("BIPHOTON_WORKERS")
    if env:
        try:
            n = int(env)
        except ValueError:
            raise InvalidConfigError(f"BIPHOTON_WORKERS must be an integer, got {env!r}") from None
        if n < 1:
            raise InvalidConfigError("BIPHOTON_WORKERS must be >= 1")
        return n
    return os.cpu_count() or 1


def run_sweep(spec: SweepSpec, workers: int | None = None) -> list[SweepRow]:
    """One row per step, in sweep order. Failed rows carry ``error`` instead of values."""
    workers = workers or default_workers()
    values = spec.values()
    if workers == 1:
        return [compute_row(spec, v) for v in values]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda v: compute_row(spec, v), values))


def _fmt(x) -> str:
    if x is None:
        return ""
    return f"{x:.12g}"


def format_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in rows:
        writer.writerow([_fmt(r.variable_value), _fmt(r.A), _fmt(r.B), _fmt(r.C), _fmt(r.D),
                         _fmt(r.F), _fmt(r.G), _fmt(r.K), _fmt(r.P0), r.spectrum_json or ""])
    return buf.getvalue()


def _write(path, text):
    path = Path(path)
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write {path}: {exc.strerror}") from exc


def emit_csv(rows, path) -> None:
    """Write successful rows; rows with an error are left out."""
    good = [r for r in rows if r.error is None]
    if not good:
        raise ValueError("no rows to write")
    _write(path, format_csv(good))


def emit_spectrum_csv(rows, path) -> None:
    """Long format: one line per (variable_value, OAM index)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("variable_value", "m", "P"))
    n = 0
    for r in rows:
        if r.spectrum is None:
            continue
        for m, p in r.spectrum.to_rows():
            writer.writerow((_fmt(r.variable_value), m, _fmt(p)))
            n += 1
    if n == 0:
        raise ValueError("no spectra to write")
    _write(path, buf.getvalue())


# -- oracle suite ------------------------------------------------------------

PARAXIAL_FRACTION = 0.01


@dataclass
class CheckResult:
    name: str
    passed: bool
    measured: float | None
    tolerance: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        measured = "n/a" if self.measured is None else f"{self.measured:.3e}"
        text = f"{status}  {self.name:<24} measured={measured} tol={self.tolerance:.0e}"
        return text + (f"  ({self.detail})" if self.detail else "")


@dataclass
class OracleReport:
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _run_check(name, tol, fn) -> CheckResult:
    try:
        measured, detail = fn()
    except BiphotonError as exc:
        return CheckResult(name, False, None, tol, f"{type(exc).__name__}: {exc}")
    return CheckResult(name, measured <= tol, measured, tol, detail)


def paraxial_valid(config: ExperimentConfig) -> bool:
    """Cloud much shorter than the pump and detection Rayleigh ranges."""
    rayleigh = math.pi * min(config.w0, config.w1) ** 2 / config.lambda_p
    return config.L <= PARAXIAL_FRACTION * rayleigh


def run_oracle_suite(config: ExperimentConfig, grid: int = 1024) -> OracleReport:
    coeffs = derive_biphoton_coeffs(config)
    herald = derive_heralded_coeffs(coeffs, config.wg)
    report = OracleReport()

    report.checks.append(_run_check(
        "normalization", 1e-9, lambda: (abs(normalization_check(coeffs) - 1.0), "")))
    report.checks.append(_run_check(
        "heralded_norm", 1e-9, lambda: (abs(heralded_norm(herald) - 1.0), "")))

    def schmidt_check():
        closed = schmidt_number(coeffs).K
        oracle = schmidt_oracle_svd(coeffs, grid).K
        return abs(oracle - closed) / closed, f"K={closed:.6g} svd={oracle:.6g}"

    report.checks.append(_run_check("schmidt_svd", 1e-3, schmidt_check))

    spectra = {}

    def spiral_check():
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", TruncationWarning)
            quad = spiral_spectrum(herald)
        fft = spiral_spectrum_oracle(herald)
        spectra["fft"] = fft
        keys = set(quad.weights) | set(fft.weights)
        return max(abs(quad[m] - fft[m]) for m in keys), f"P0={quad.p0:.6g}"

    report.checks.append(_run_check("spiral_fft", 1e-4, spiral_check))

    def parity_check():
        fft = spectra.get("fft") or spiral_spectrum_oracle(herald)
        return max(fft[m] for m in fft.weights if m % 2), ""

    report.checks.append(_run_check("spiral_odd_parity", 1e-12, parity_check))

    if paraxial_valid(config):
        report.checks.append(_run_check(
            "paraxial_full_integral", 1e-2, lambda: (paraxial_discrepancy(config), f"L={config.L:g}um")))
    return report
