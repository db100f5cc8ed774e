"""Physical parameters of the cold-cloud Raman source and the Gaussian widths derived from them.

Lengths are in micrometres, wavenumbers in rad/um, angles in radians.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.constants import c as _C_M_PER_S

from .errors import InvalidConfigError

SPEED_OF_LIGHT = _C_M_PER_S * 1e6  # um/s


def _require_positive(**values):
    for name, value in values.items():
        if not (math.isfinite(value) and value > 0):
            raise InvalidConfigError(f"{name} must be positive, got {value!r}")


@dataclass(frozen=True)
class ExperimentConfig:
    """Geometry of the interaction volume and detection optics.

    R, L: transverse and longitudinal 1/e size of the atomic density.
    w0: pump/control waist. w1: detection filter width. wg: heralding mode waist.
    phi: emission angle of the Stokes photon from the pump axis.
    """

    R: float
    L: float
    w0: float
    w1: float
    wg: float
    phi: float = 0.0
    lambda_p: float = 0.780
    n_p: float = 1.0

    def __post_init__(self):
        _require_positive(
            cloud_transverse_size=self.R,
            cloud_length=self.L,
            pump_waist=self.w0,
            detection_filter_width=self.w1,
            herald_mode_waist=self.wg,
            pump_wavelength=self.lambda_p,
        )
        if not (0.0 <= self.phi <= math.pi / 2):
            raise InvalidConfigError(
                f"emission_angle must lie in [0, 90] degrees, got {math.degrees(self.phi)!r} deg"
            )
        if not (math.isfinite(self.n_p) and self.n_p >= 1.0):
            raise InvalidConfigError(f"refractive_index must be >= 1, got {self.n_p!r}")

    @property
    def phi_deg(self) -> float:
        return math.degrees(self.phi)

    @property
    def k_pump(self) -> float:
        """Pump wavenumber in the medium, rad/um."""
        return 2 * math.pi * self.n_p / self.lambda_p


@dataclass(frozen=True)
class BiphotonCoefficients:
    """Gaussian widths (um^2) of the double-Gaussian two-photon amplitude.

    A and B weight the sum and difference of the x wavevectors, D and C the
    sum and difference of the y wavevectors.
    """

    A: float
    B: float
    C: float
    D: float

    def __post_init__(self):
        _require_positive(A=self.A, B=self.B, C=self.C, D=self.D)

    def scaled(self, s: float) -> "BiphotonCoefficients":
        return BiphotonCoefficients(s * self.A, s * self.B, s * self.C, s * self.D)


@dataclass(frozen=True)
class HeraldedCoefficients:
    """Widths (um^2) of the Stokes mode after projecting the anti-Stokes photon on a Gaussian."""

    F: float
    G: float

    def __post_init__(self):
        _require_positive(F=self.F, G=self.G)


@dataclass(frozen=True)
class PhaseMatchingInputs:
    omega_p: float
    omega_c: float
    omega_s: float
    omega_as: float
    k_p: float
    k_c: float
    k_s: float
    k_as: float
    phi_s: float
    phi_as: float

    def __post_init__(self):
        _require_positive(
            omega_p=self.omega_p, omega_c=self.omega_c, omega_s=self.omega_s, omega_as=self.omega_as,
            k_p=self.k_p, k_c=self.k_c, k_s=self.k_s, k_as=self.k_as,
        )

    @classmethod
    def degenerate(cls, config: ExperimentConfig) -> "PhaseMatchingInputs":
        """All four fields at the pump line centre, anti-Stokes at pi - phi."""
        omega = 2 * math.pi * SPEED_OF_LIGHT / config.lambda_p
        k = config.k_pump
        return cls(omega, omega, omega, omega, k, k, k, k, config.phi, math.pi - config.phi)


def transverse_overlap_width(R: float, w0: float) -> float:
    """w0^2 R^2 / (2 R^2 + w0^2): pump/control Gaussian convolved with the cloud profile."""
    return w0 * w0 * R * R / (2 * R * R + w0 * w0)


def derive_biphoton_coeffs(config: ExperimentConfig) -> BiphotonCoefficients:
    overlap = transverse_overlap_width(config.R, config.w0)
    filt = config.w1 ** 2 / 2
    s2 = math.sin(config.phi) ** 2
    c2 = math.cos(config.phi) ** 2
    A = overlap + filt
    D = overlap * c2 + config.L ** 2 * s2 + filt
    return BiphotonCoefficients(A=A, B=filt, C=filt, D=D)


def _project(a: float, b: float, wg2: float) -> float:
    return (4 * a * b + (a + b) * wg2) / (a + b + wg2)


def derive_heralded_coeffs(coeffs: BiphotonCoefficients, wg: float) -> HeraldedCoefficients:
    _require_positive(herald_mode_waist=wg)
    wg2 = wg * wg
    return HeraldedCoefficients(
        F=_project(coeffs.A, coeffs.B, wg2),
        G=_project(coeffs.C, coeffs.D, wg2),
    )


def heralded_from_config(config: ExperimentConfig) -> HeraldedCoefficients:
    return derive_heralded_coeffs(derive_biphoton_coeffs(config), config.wg)


def symmetric_cloud_length(R: float, w0: float) -> float:
    """Cloud length at which A == D for every emission angle."""
    _require_positive(cloud_transverse_size=R, pump_waist=w0)
    return R / math.sqrt(1 + 2 * (R / w0) ** 2)


def check_phase_matching(inputs: PhaseMatchingInputs) -> tuple[float, float, float]:
    """Signed residuals (energy, longitudinal, transverse) of the central phase-matching relations.

    The longitudinal row is k_p - k_c - k_s cos(phi_s) + k_as cos(phi_as), exactly as the
    relations are usually written for this geometry; with phi_as = pi - phi_s it only
    vanishes for degenerate wavenumbers at phi_s = 90 deg.
    """
    energy = inputs.omega_p + inputs.omega_c - inputs.omega_s - inputs.omega_as
    longitudinal = (
        inputs.k_p - inputs.k_c
        - inputs.k_s * math.cos(inputs.phi_s)
        + inputs.k_as * math.cos(inputs.phi_as)
    )
    transverse = inputs.k_s * math.sin(inputs.phi_s) - inputs.k_as * math.sin(inputs.phi_as)
    return energy, longitudinal, transverse
