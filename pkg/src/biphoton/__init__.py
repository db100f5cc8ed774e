"""Spatial two-photon state of Raman-scattered photon pairs from a cold atomic cloud."""
from .errors import (
    BiphotonError,
    ConfigParseError,
    EvanescentPumpError,
    InvalidConfigError,
    QuadratureError,
    ResolutionError,
)
from .geometry import (
    BiphotonCoefficients,
    ExperimentConfig,
    HeraldedCoefficients,
    PhaseMatchingInputs,
    check_phase_matching,
    derive_biphoton_coeffs,
    derive_heralded_coeffs,
    heralded_from_config,
    symmetric_cloud_length,
)
from .mode_function import (
    eval_closed_form,
    eval_full_integral,
    heralded_stokes_amplitude,
    normalization_check,
    paraxial_discrepancy,
    phase_mismatch,
)
from .oam import SpiralSpectrum, spiral_spectrum, spiral_spectrum_oracle, spiral_weight
from .schmidt import SchmidtResult, schmidt_number, schmidt_number_1d, schmidt_oracle_svd

__version__ = "0.1.0"
