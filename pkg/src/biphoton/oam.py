"""Spiral (OAM) decomposition of the heralded Stokes mode.

The heralded mode is an elliptical Gaussian, so in polar wavevector coordinates
exp(-(F-G) rho^2 cos(2 theta) / 8) expands in even harmonics with modified Bessel
coefficients. Odd OAM indices carry no weight.
"""
from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate, special

from .errors import QuadratureError, ResolutionError
from .geometry import HeraldedCoefficients
from .mode_function import heralded_stokes_amplitude

QUAD_TOL = 1e-10
TRUNCATION_TOL = 1e-6
TAIL_WEIGHT = 1e-8
MAX_ORDER = 64
EXPONENT_CUTOFF = 40.0


class TruncationWarning(UserWarning):
    pass


@dataclass
class SpiralSpectrum:
    """OAM weights keyed by integer index; absent indices have zero weight.

    m_max is the Bessel truncation order: stored indices reach +-2 m_max.
    """

    weights: dict[int, float]
    m_max: int
    residual: float = field(default=0.0)

    def __getitem__(self, m: int) -> float:
        return self.weights.get(m, 0.0)

    @property
    def total(self) -> float:
        return math.fsum(self.weights.values())

    @property
    def p0(self) -> float:
        return self[0]

    def to_json(self) -> str:
        """Compact JSON object, keys in ascending OAM index."""
        items = sorted(self.weights.items())
        return json.dumps({str(m): float(f"{p:.12g}") for m, p in items}, separators=(",", ":"))

    def to_rows(self):
        return [(m, p) for m, p in sorted(self.weights.items())]


def _upper_limit(h: HeraldedCoefficients) -> float:
    # net exponent of the scaled integrand is -min(F, G) u / 2 with u = rho^2
    return 2 * EXPONENT_CUTOFF / min(h.F, h.G)


def spiral_weight(h: HeraldedCoefficients, m: int, tol: float = QUAD_TOL) -> float:
    """Weight of OAM index 2m, for Bessel order m (negative m mirrors positive m)."""
    m = abs(int(m))
    F, G = h.F, h.G
    if F == G:
        return 1.0 if m == 0 else 0.0
    x_rate = abs(G - F) / 8
    net_rate = min(F, G) / 2

    # rho drho = du/2; exp(-(F+G)u/4) I_m(x)^2 = exp(-net_rate u) * (e^{-x} I_m(x))^2
    def integrand(u):
        return math.exp(-net_rate * u) * special.ive(m, x_rate * u) ** 2

    val, err = integrate.quad(integrand, 0.0, _upper_limit(h), epsabs=tol * 1e-2 / math.sqrt(F * G),
                              epsrel=1e-12, limit=400)
    weight = math.sqrt(F * G) / 2 * val
    abs_err = math.sqrt(F * G) / 2 * err
    if not math.isfinite(weight) or abs_err > tol:
        raise QuadratureError(f"radial integral for m={m} not converged (error {abs_err:.2e})")
    return weight


def spiral_spectrum(h: HeraldedCoefficients, m_max: int | None = None) -> SpiralSpectrum:
    """Weights on OAM indices -2 m_max .. 2 m_max (even only).

    With m_max=None the order grows until the last two weights both fall below 1e-8,
    capped at 64. A residual above 1e-6 raises a TruncationWarning.
    """
    if m_max is not None and m_max < 0:
        raise ValueError("m_max must be >= 0")
    per_order = [spiral_weight(h, 0)]
    if m_max is None:
        m = 0
        while m < MAX_ORDER:
            m += 1
            per_order.append(spiral_weight(h, m))
            if m >= 2 and per_order[-1] < TAIL_WEIGHT and per_order[-2] < TAIL_WEIGHT:
                break
        m_max = m
    else:
        per_order += [spiral_weight(h, m) for m in range(1, m_max + 1)]

    weights = {0: per_order[0]}
    for m, p in enumerate(per_order[1:], start=1):
        weights[2 * m] = p
        weights[-2 * m] = p
    spectrum = SpiralSpectrum(dict(sorted(weights.items())), m_max)
    spectrum.residual = 1.0 - spectrum.total
    if spectrum.residual > TRUNCATION_TOL:
        warnings.warn(f"spiral spectrum truncated at m_max={m_max}: residual {spectrum.residual:.2e}",
                      TruncationWarning, stacklevel=2)
    return spectrum


def _fft_weights(h, radial_samples, azimuthal_samples, u_max):
    nodes, wts = np.polynomial.legendre.leggauss(radial_samples)
    u = u_max / 2 * (nodes + 1)
    du = u_max / 2 * wts
    rho = np.sqrt(u)
    theta = 2 * np.pi * np.arange(azimuthal_samples) / azimuthal_samples
    field = heralded_stokes_amplitude(h, (rho[:, None] * np.cos(theta), rho[:, None] * np.sin(theta)))
    # Phi = (2 pi)^(-1/2) sum_m a_m e^{i m theta}
    a = np.fft.fft(field, axis=1) * math.sqrt(2 * np.pi) / azimuthal_samples
    # integral of |a_m|^2 rho drho = 1/2 integral of |a_m|^2 du
    return 0.5 * (np.abs(a) ** 2).T @ du


def spiral_spectrum_oracle(h: HeraldedCoefficients, radial_samples: int = 256,
                           azimuthal_samples: int = 256, check: bool = True,
                           stability_tol: float = 1e-5) -> SpiralSpectrum:
    """Brute-force spectrum: sample the heralded mode on a polar grid, FFT each ring, integrate radially.

    Contains every index (odd ones included) in -N/2 .. N/2 - 1. With ``check`` the
    computation is repeated at doubled resolution and ResolutionError is raised if any
    weight moves by more than ``stability_tol``; the finer result is returned.
    """
    if azimuthal_samples < 64 or azimuthal_samples & (azimuthal_samples - 1):
        raise ValueError("azimuthal_samples must be a power of two >= 64")
    if radial_samples < 128:
        raise ValueError("radial_samples must be >= 128")
    u_max = _upper_limit(h)
    p = _fft_weights(h, radial_samples, azimuthal_samples, u_max)
    n = azimuthal_samples
    if check:
        fine = _fft_weights(h, 2 * radial_samples, 2 * azimuthal_samples, u_max)
        # compare on the indices both resolutions represent
        k = np.arange(-n // 2, n // 2)
        delta = np.max(np.abs(fine[k] - p[k]))
        if delta > stability_tol:
            raise ResolutionError(f"FFT spectrum moved by {delta:.2e} on doubling the resolution")
        p, n = fine, 2 * n
    m = np.fft.fftfreq(n, d=1.0 / n).astype(int)
    order = np.argsort(m)
    weights = {int(m[i]): float(p[i]) for i in order}
    spectrum = SpiralSpectrum(weights, n // 4)
    spectrum.residual = 1.0 - spectrum.total
    return spectrum
