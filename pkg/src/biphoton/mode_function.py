"""Two-photon spatial amplitude: paraxial double-Gaussian form, heralded Stokes mode,
and a brute-force integral over the pump/control spectra used to validate the former.

Wavevectors are (qx, qy) pairs in rad/um; components may be numpy arrays and broadcast.
"""
from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np
from scipy import integrate

from .errors import EvanescentPumpError, InvalidConfigError, QuadratureError
from .geometry import (
    SPEED_OF_LIGHT,
    BiphotonCoefficients,
    ExperimentConfig,
    HeraldedCoefficients,
    PhaseMatchingInputs,
)

NORM_TOL = 1e-9
HALF_WIDTH_SIGMAS = 8.0


class PhaseMismatch(NamedTuple):
    delta0: np.ndarray | float
    delta1: np.ndarray | float
    delta2: np.ndarray | float


def _split(q):
    qx, qy = q
    return np.asarray(qx, dtype=float), np.asarray(qy, dtype=float)


def _scalar_or_array(x):
    return float(x) if np.ndim(x) == 0 else x


def eval_closed_form(coeffs: BiphotonCoefficients, q_s, q_as):
    """Normalised double-Gaussian amplitude Phi(q_s, q_as), units of um^2."""
    A, B, C, D = coeffs.A, coeffs.B, coeffs.C, coeffs.D
    sx, sy = _split(q_s)
    ax, ay = _split(q_as)
    exponent = (
        -A / 4 * (sx + ax) ** 2
        - B / 4 * (sx - ax) ** 2
        - C / 4 * (sy - ay) ** 2
        - D / 4 * (sy + ay) ** 2
    )
    peak = (A * B * C * D) ** 0.25 / math.pi
    return _scalar_or_array(peak * np.exp(exponent))


def _gauss_kronrod_2d(f, half_u, half_v, rtol):
    """Adaptive 2-d Gauss-Kronrod (21-point product rule) of f(u, v) over a centred rectangle."""
    res = integrate.cubature(
        lambda x: f(x[:, 0], x[:, 1]),
        [-half_u, -half_v], [half_u, half_v],
        rule="gk21", rtol=rtol * 1e-2, atol=0.0,
    )
    rel = res.error / abs(res.estimate) if res.estimate else math.inf
    if res.status != "converged" or not math.isfinite(res.estimate) or rel > rtol:
        raise QuadratureError(f"2-d quadrature relative error estimate {rel:.2e} exceeds {rtol:.0e}")
    return float(res.estimate)


def normalization_check(coeffs: BiphotonCoefficients, tol: float = NORM_TOL) -> float:
    """Integral of |Phi|^2 over all four wavevector components.

    The x and y planes are integrated separately (each a 2-d adaptive quadrature in the
    sum/difference coordinates, where the plane's Gaussian is axis-aligned) and multiplied; |Phi|^2 factorises between the planes.
    """
    peak2 = eval_closed_form(coeffs, (0.0, 0.0), (0.0, 0.0)) ** 2
    w = HALF_WIDTH_SIGMAS

    def x_plane(u, v):
        qs, qas = (u + v) / 2, (u - v) / 2
        return eval_closed_form(coeffs, (qs, 0.0), (qas, 0.0)) ** 2 / 2

    def y_plane(u, v):
        qs, qas = (u + v) / 2, (u - v) / 2
        return eval_closed_form(coeffs, (0.0, qs), (0.0, qas)) ** 2 / 2

    # each plane integrates to peak2 times its own factor of the total
    ix = _gauss_kronrod_2d(x_plane, w / math.sqrt(coeffs.A), w / math.sqrt(coeffs.B), tol / 2)
    iy = _gauss_kronrod_2d(y_plane, w / math.sqrt(coeffs.D), w / math.sqrt(coeffs.C), tol / 2)
    return ix * iy / peak2


def heralded_stokes_amplitude(h: HeraldedCoefficients, q_s):
    """Stokes-photon mode after the anti-Stokes photon is projected on a Gaussian, unit norm."""
    qx, qy = _split(q_s)
    peak = (h.F * h.G) ** 0.25 / math.sqrt(2 * math.pi)
    return _scalar_or_array(peak * np.exp(-h.F / 4 * qx ** 2 - h.G / 4 * qy ** 2))


def heralded_norm(h: HeraldedCoefficients, tol: float = NORM_TOL) -> float:
    w = HALF_WIDTH_SIGMAS
    return _gauss_kronrod_2d(
        lambda x, y: heralded_stokes_amplitude(h, (x, y)) ** 2,
        w / math.sqrt(h.F), w / math.sqrt(h.G), tol,
    )


def phase_mismatch(config: ExperimentConfig, inputs: PhaseMatchingInputs, q_s, q_as) -> PhaseMismatch:
    """Wavevector mismatches along the three axes, written in the Stokes frame.

    delta0 and delta1 do not involve the pump wavenumber, so they are evaluated first
    and then fed to k_p = sqrt((omega_p n_p / c)^2 - delta0^2 - delta1^2).
    """
    phi = config.phi
    sx, sy = _split(q_s)
    ax, ay = _split(q_as)
    d0 = sx + ax
    d1 = (inputs.k_s - inputs.k_as) * math.sin(phi) + (sy - ay) * math.cos(phi)
    kp2 = (inputs.omega_p * config.n_p / SPEED_OF_LIGHT) ** 2 - d0 ** 2 - d1 ** 2
    if np.any(kp2 <= 0):
        raise EvanescentPumpError("pump longitudinal wavenumber is imaginary for these wavevectors")
    k_p = np.sqrt(kp2)
    d2 = k_p - inputs.k_c - (inputs.k_s + inputs.k_as) * math.cos(phi) + (sy - ay) * math.sin(phi)
    return PhaseMismatch(_scalar_or_array(d0), _scalar_or_array(d1), _scalar_or_array(d2))


def _longitudinal(k2, q2):
    """sqrt(k^2 - q^2) written to avoid cancellation when q << k."""
    if np.any(q2 >= k2):
        raise EvanescentPumpError("pump/control longitudinal wavenumber is imaginary on the integration support")
    k = math.sqrt(k2)
    return k - q2 / (k + np.sqrt(k2 - q2))


def eval_full_integral(
    config: ExperimentConfig,
    inputs: PhaseMatchingInputs,
    q_s,
    q_as,
    nodes: int = 12,
    check_nodes: int | None = 20,
    rtol: float = 1e-10,
    chunk: int = 16,
):
    """Amplitude from integrating over the pump and control transverse spectra.

    No paraxial simplification is made for the pump and control: their longitudinal
    wavenumbers keep the full sqrt(k^2 - |q|^2) dependence. The result is complex and
    carries an arbitrary overall scale (compare shapes, not magnitudes).

    Coordinates follow the closed form: the anti-Stokes y axis is mirrored with respect
    to the Stokes one, so q_s^y + q_as^y is the combination fed by the pump.
    The integral over q_p, q_c (4-d) uses Gauss-Hermite nodes centred on the transverse
    Gaussian; ``check_nodes`` re-evaluates at a higher order and raises QuadratureError
    if the two disagree by more than ``rtol`` relative to the largest sample.
    """
    sx, sy = _split(q_s)
    ax, ay = _split(q_as)
    sx, sy, ax, ay = np.broadcast_arrays(sx, sy, ax, ay)
    shape = sx.shape
    args = [a.ravel() for a in (sx, sy, ax, ay)]
    value = _full_integral_flat(config, inputs, *args, nodes=nodes, chunk=chunk)
    if check_nodes:
        ref = _full_integral_flat(config, inputs, *args, nodes=check_nodes, chunk=chunk)
        scale = np.max(np.abs(ref)) if ref.size else 0.0
        if scale > 0 and np.max(np.abs(ref - value)) > rtol * scale:
            raise QuadratureError(
                f"pump/control quadrature not converged: {np.max(np.abs(ref - value)) / scale:.2e} > {rtol:.0e}"
            )
        value = ref
    value = value.reshape(shape)
    return complex(value) if value.ndim == 0 else value


def _full_integral_flat(config, inputs, sx, sy, ax, ay, nodes, chunk):
    R2, L2, w02, w12 = config.R ** 2, config.L ** 2, config.w0 ** 2, config.w1 ** 2
    phi = config.phi
    kp2 = (inputs.omega_p * config.n_p / SPEED_OF_LIGHT) ** 2
    kc2 = (inputs.omega_c * config.n_p / SPEED_OF_LIGHT) ** 2
    dk = inputs.k_s - inputs.k_as

    # Q = q_p + q_c carries the transverse mismatch; P = (q_p - q_c)/2 only enters the
    # longitudinal one. E_p E_c = exp(-w0^2 |Q|^2 / 8 - w0^2 |P|^2 / 2), unit Jacobian.
    alpha = w02 / 8 + R2 / 4
    beta = w02 / 2
    t, wt = np.polynomial.hermite.hermgauss(nodes)
    tq = t / math.sqrt(alpha)
    tp = t / math.sqrt(beta)
    w4 = (wt[:, None, None, None] * wt[None, :, None, None] * wt[None, None, :, None] * wt[None, None, None, :])
    w4 = w4.ravel() / (alpha * beta)
    Qx0, Qy0, Px, Py = (g.ravel() for g in np.meshgrid(tq, tq, tp, tp, indexing="ij"))

    out = np.empty(sx.size, dtype=complex)
    for start in range(0, sx.size, chunk):
        sl = slice(start, start + chunk)
        Sx = (sx[sl] + ax[sl])[:, None]
        Sy = (sy[sl] + ay[sl])[:, None]
        target_x = Sx
        target_y = Sy * math.cos(phi) + dk * math.sin(phi)
        mu_x = R2 / 4 * target_x / alpha
        mu_y = R2 / 4 * target_y / alpha
        Qx = Qx0[None, :] + mu_x
        Qy = Qy0[None, :] + mu_y
        qpx, qpy = Qx / 2 + Px, Qy / 2 + Py
        qcx, qcy = Qx / 2 - Px, Qy / 2 - Py
        kz_p = _longitudinal(kp2, qpx ** 2 + qpy ** 2)
        kz_c = _longitudinal(kc2, qcx ** 2 + qcy ** 2)
        # control runs along -z; Stokes and anti-Stokes leave back to back
        d_long = kz_p - kz_c - dk * math.cos(phi) + Sy * math.sin(phi)
        d_x = Qx - target_x
        d_y = Qy - target_y
        log_f = (
            -w02 / 4 * (qpx ** 2 + qpy ** 2 + qcx ** 2 + qcy ** 2)
            - R2 / 4 * (d_x ** 2 + d_y ** 2)
            - L2 / 4 * d_long ** 2
        )
        log_w = -alpha * ((Qx - mu_x) ** 2 + (Qy - mu_y) ** 2) - beta * (Px ** 2 + Py ** 2)
        integral = np.exp(log_f - log_w) @ w4
        filters = np.exp(-w12 / 4 * (sx[sl] ** 2 + sy[sl] ** 2 + ax[sl] ** 2 + ay[sl] ** 2))
        out[sl] = filters * integral
    return out


def sample_planes(coeffs: BiphotonCoefficients, n: int = 21, span: float = 3.0):
    """Sample points on the (q_s^x, q_as^x) plane at q^y = 0 and the (q_s^y, q_as^y) plane at q^x = 0.

    Each plane is an n x n square grid covering +-span widths of its widest Gaussian factor.
    Returns (q_s, q_as) as pairs of flat arrays.
    """
    hx = span / math.sqrt(min(coeffs.A, coeffs.B))
    hy = span / math.sqrt(min(coeffs.C, coeffs.D))
    gx = np.linspace(-hx, hx, n)
    gy = np.linspace(-hy, hy, n)
    s_x, a_x = (g.ravel() for g in np.meshgrid(gx, gx, indexing="ij"))
    s_y, a_y = (g.ravel() for g in np.meshgrid(gy, gy, indexing="ij"))
    zeros = np.zeros(n * n)
    q_s = (np.concatenate([s_x, zeros]), np.concatenate([zeros, s_y]))
    q_as = (np.concatenate([a_x, zeros]), np.concatenate([zeros, a_y]))
    return q_s, q_as


def relative_l2_distance(reference, candidate) -> float:
    """||c * candidate - reference|| / ||reference|| with the complex scale c chosen optimally."""
    reference = np.asarray(reference, dtype=complex).ravel()
    candidate = np.asarray(candidate, dtype=complex).ravel()
    denom = np.vdot(candidate, candidate)
    if denom == 0:
        raise InvalidConfigError("candidate amplitude vanishes on every sample")
    scale = np.vdot(candidate, reference) / denom
    return float(np.linalg.norm(scale * candidate - reference) / np.linalg.norm(reference))


def paraxial_discrepancy(config: ExperimentConfig, inputs: PhaseMatchingInputs | None = None,
                         n: int = 21, **kwargs) -> float:
    """Relative L2 distance between the full integral and the closed form on two sample planes."""
    from .geometry import derive_biphoton_coeffs

    if inputs is None:
        inputs = PhaseMatchingInputs.degenerate(config)
    coeffs = derive_biphoton_coeffs(config)
    q_s, q_as = sample_planes(coeffs, n)
    closed = eval_closed_form(coeffs, q_s, q_as)
    full = eval_full_integral(config, inputs, q_s, q_as, **kwargs)
    return relative_l2_distance(closed, full)
