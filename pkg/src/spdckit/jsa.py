"""Joint spectral amplitudes of collinear SPDC in the plane-wave picture.

A two-photon joint spectral amplitude factors into the pump spectral
envelope times the crystal's phasematching function,

    f(omega_s, omega_i) = alpha(Omega_s + Omega_i) * phi(delta_k * L),

with Omega the detuning from each field's central frequency. This module
builds that product on a discrete frequency grid. The construction applies
a flat joint phase: every spectral component is taken to be in phase, so
the returned amplitude matrix is real and nonnegative. Complex-phased
amplitudes arise only from the focused-beam projection in
:mod:`spdckit.fibercoupling`.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .dispersion import (
    AxisAssignment,
    CrystalSpec,
    DispersionModel,
    idler_wavelength,
    inverse_group_velocity,
    wavevector,
)
from .units import C_LIGHT, wavelength_to_omega

TWO_PI = 2.0 * math.pi

# Gaussian stand-in for the central sinc lobe: sinc(x) ~ exp(-GAMMA_SINC x^2).
# The coefficient makes the two curves' 1/e widths coincide.
GAMMA_SINC = 0.193

# Edge-amplitude fraction above which a grid is flagged as too narrow.
_EDGE_FRACTION = 1e-3


class GridCoverageWarning(UserWarning):
    """Grid edges carry more than a small fraction of the peak amplitude.

    For a sinc profile the envelope decays only like 1/x, so wide windows
    still trip this check; it is advisory. Purity and rate integrals should
    be checked for window convergence rather than silenced.
    """


class JsaError(ValueError):
    """Invalid inputs to JSA construction."""


@dataclass(frozen=True)
class PumpSpec:
    """Pump field parameters.

    Attributes:
        wavelength: Central vacuum wavelength in meters.
        sigma: Amplitude-Gaussian spectral width in rad/s. The envelope is
            exp(-(Omega_s + Omega_i)^2 / sigma^2).
        waist: Beam waist w0 in meters (used by the fiber-coupling model).
        waist_position: Waist location z0 relative to the crystal center,
            meters (positive toward the exit face).
    """

    wavelength: float
    sigma: float
    waist: float = 220e-6
    waist_position: float = 0.0

    def __post_init__(self) -> None:
        if self.sigma <= 0:
            raise JsaError(f"pump sigma must be positive, got {self.sigma}")
        if self.waist <= 0:
            raise JsaError(f"pump waist must be positive, got {self.waist}")

    @property
    def omega0(self) -> float:
        return wavelength_to_omega(self.wavelength)


def pump_fwhm_nm_to_sigma(pump_wavelength: float, fwhm_nm: float) -> float:
    """Convert an intensity-FWHM bandwidth in nm to the amplitude sigma.

    Spectrometers report the full width at half maximum of the intensity
    spectrum. For the amplitude envelope exp(-Omega^2/sigma^2) the intensity
    is exp(-2 Omega^2/sigma^2), whose half-maximum points sit at
    Omega = +-sigma*sqrt(ln2/2), so FWHM_omega = sigma*sqrt(2 ln 2). A small
    wavelength interval converts to angular frequency through
    |dw/dlam| = 2 pi c / lam^2. Hence

        sigma = (2 pi c / lam_p^2) * FWHM_nm * 1e-9 / sqrt(2 ln 2).
    """
    if fwhm_nm <= 0:
        raise JsaError(f"bandwidth must be positive, got {fwhm_nm} nm")
    fwhm_omega = TWO_PI * C_LIGHT / pump_wavelength**2 * fwhm_nm * 1e-9
    return fwhm_omega / math.sqrt(2.0 * math.log(2.0))


def pump_sigma_to_fwhm_nm(pump_wavelength: float, sigma: float) -> float:
    """Inverse of :func:`pump_fwhm_nm_to_sigma`."""
    if sigma <= 0:
        raise JsaError(f"sigma must be positive, got {sigma}")
    fwhm_omega = sigma * math.sqrt(2.0 * math.log(2.0))
    return fwhm_omega * pump_wavelength**2 / (TWO_PI * C_LIGHT) * 1e9


def pump_envelope(pump: PumpSpec, detuning_s, detuning_i):
    """Pump spectral envelope exp(-(Omega_s+Omega_i)^2 / sigma_p^2).

    Maximal on the energy-conservation ridge Omega_s = -Omega_i, where the
    signal/idler pair draws exactly the central pump frequency.
    """
    total = np.asarray(detuning_s) + np.asarray(detuning_i)
    return np.exp(-((total / pump.sigma) ** 2))


def phasematching_sinc(delta_k, length: float):
    """sinc(delta_k L / 2) with the removable singularity -> 1.

    numpy's sinc is the normalized sin(pi x)/(pi x), so the argument is
    divided by pi to recover the plain sin(x)/x.
    """
    x = np.asarray(delta_k) * length / 2.0
    return np.sinc(x / np.pi)


def phasematching_gaussian(delta_k, length: float):
    """Gaussian profile exp(-gamma (delta_k L / 2)^2), gamma = 0.193.

    Models an apodized poling profile whose response keeps the central
    sinc lobe's width but has no side lobes.
    """
    x = np.asarray(delta_k) * length / 2.0
    return np.exp(-GAMMA_SINC * x * x)


def phasematching_bandwidth(
    model: DispersionModel,
    crystal: CrystalSpec,
    pump_wavelength: float,
    signal_wavelength: float,
) -> float:
    """1/e amplitude half-width of the phasematching function along Omega_i.

    Equals 2 / (|k'_p - k'_i| L sqrt(gamma)) in rad/s, using the Gaussian
    stand-in for the central lobe.
    """
    lam_i = idler_wavelength(pump_wavelength, signal_wavelength)
    kp_p = inverse_group_velocity(model, crystal.axes.pump,
                                  wavelength_to_omega(pump_wavelength))
    kp_i = inverse_group_velocity(model, crystal.axes.idler,
                                  wavelength_to_omega(lam_i))
    return 2.0 / (abs(kp_p - kp_i) * crystal.length * math.sqrt(GAMMA_SINC))


@dataclass(frozen=True)
class SpectralGrid:
    """Uniform rectangular grid of signal/idler angular frequencies."""

    signal_omegas: np.ndarray
    idler_omegas: np.ndarray

    def __post_init__(self) -> None:
        for name, arr in (("signal", self.signal_omegas),
                          ("idler", self.idler_omegas)):
            if arr.ndim != 1 or arr.size < 2:
                raise JsaError(f"{name} axis needs at least 2 samples")
            steps = np.diff(arr)
            if np.any(steps <= 0):
                raise JsaError(f"{name} axis must be strictly increasing")
            if not np.allclose(steps, steps[0], rtol=1e-9, atol=0.0):
                raise JsaError(f"{name} axis must be uniformly spaced")

    @property
    def signal_step(self) -> float:
        return float(self.signal_omegas[1] - self.signal_omegas[0])

    @property
    def idler_step(self) -> float:
        return float(self.idler_omegas[1] - self.idler_omegas[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.signal_omegas.size, self.idler_omegas.size

    @classmethod
    def design(
        cls,
        model: DispersionModel,
        crystal: CrystalSpec,
        pump: PumpSpec,
        signal_wavelength: float,
        points: int = 512,
        span_bandwidths: float = 4.0,
    ) -> "SpectralGrid":
        """Build a grid centered on the phasematched triplet.

        The signal window spans +-span_bandwidths * (sigma_p + sigma_pm):
        the signal marginal is pump-dominated near group-velocity matching.
        The idler window spans +-span_bandwidths * (sigma_pm + |D| *
        (sigma_p + sigma_pm)), widening with the group-velocity mismatch
        ratio D since the phasematching ridge tilts into the idler axis.
        """
        from .dispersion import dispersion_parameter_D

        if points < 2:
            raise JsaError(f"grid needs at least 2 points, got {points}")
        sigma_pm = phasematching_bandwidth(model, crystal, pump.wavelength,
                                           signal_wavelength)
        d_ratio = dispersion_parameter_D(model, pump.wavelength,
                                         signal_wavelength, crystal.axes)
        omega_s0 = wavelength_to_omega(signal_wavelength)
        omega_i0 = pump.omega0 - omega_s0
        span_s = span_bandwidths * (pump.sigma + sigma_pm)
        span_i = span_bandwidths * (sigma_pm + abs(d_ratio) * (pump.sigma + sigma_pm))
        return cls(
            signal_omegas=np.linspace(omega_s0 - span_s, omega_s0 + span_s, points),
            idler_omegas=np.linspace(omega_i0 - span_i, omega_i0 + span_i, points),
        )


@dataclass(frozen=True)
class JsaMatrix:
    """Discretized joint spectral amplitude.

    Attributes:
        grid: Frequency grid the amplitude lives on.
        amplitude: Complex array of shape grid.shape; f(omega_s, omega_i).
        normalized: True when sum |f|^2 * dws * dwi == 1.
    """

    grid: SpectralGrid
    amplitude: np.ndarray
    normalized: bool = False

    def __post_init__(self) -> None:
        if self.amplitude.shape != self.grid.shape:
            raise JsaError(
                f"amplitude shape {self.amplitude.shape} does not match grid "
                f"shape {self.grid.shape}"
            )
        if not np.all(np.isfinite(self.amplitude)):
            raise JsaError("amplitude contains non-finite entries")

    def intensity(self) -> np.ndarray:
        """Joint spectral intensity |f|^2."""
        return np.abs(self.amplitude) ** 2

    def norm_residual(self) -> float:
        """|sum |f|^2 dws dwi - 1|, zero for a normalized matrix."""
        total = float(np.sum(self.intensity())
                      * self.grid.signal_step * self.grid.idler_step)
        return abs(total - 1.0)


def delta_k(
    model: DispersionModel,
    crystal: CrystalSpec,
    dk_mode: str,
    omega_s,
    omega_i,
    center: tuple[float, float] | None = None,
):
    """Collinear phase mismatch k_p - k_s - k_i + 2 pi / poling_period.

    Args:
        model: Sellmeier data.
        crystal: Geometry (supplies poling period and axis assignment).
        dk_mode: ``"full"`` evaluates exact wavevectors at each grid
            frequency. ``"first_order"`` expands to first order in the
            detunings: (k'_p - k'_s) Omega_s + (k'_p - k'_i) Omega_i, with
            the inverse group velocities taken at the expansion center.
        omega_s: Signal angular frequencies (scalar or array, rad/s).
        omega_i: Idler angular frequencies, broadcastable against omega_s.
        center: (omega_s0, omega_i0) expansion center. Required for
            first_order mode; ignored for full mode.

    Returns:
        Phase mismatch in 1/m, broadcast shape of the inputs.
    """
    axes = crystal.axes
    grating = TWO_PI / crystal.poling_period
    if dk_mode == "full":
        omega_p = np.asarray(omega_s) + np.asarray(omega_i)
        k_p = wavevector(model, axes.pump, TWO_PI * C_LIGHT / omega_p)
        k_s = wavevector(model, axes.signal, TWO_PI * C_LIGHT / np.asarray(omega_s))
        k_i = wavevector(model, axes.idler, TWO_PI * C_LIGHT / np.asarray(omega_i))
        return k_p - k_s - k_i + grating
    if dk_mode == "first_order":
        if center is None:
            raise JsaError("first_order delta_k needs an expansion center "
                           "(omega_s0, omega_i0)")
        omega_s0, omega_i0 = center
        kp_p = inverse_group_velocity(model, axes.pump, omega_s0 + omega_i0)
        kp_s = inverse_group_velocity(model, axes.signal, omega_s0)
        kp_i = inverse_group_velocity(model, axes.idler, omega_i0)
        det_s = np.asarray(omega_s) - omega_s0
        det_i = np.asarray(omega_i) - omega_i0
        return (kp_p - kp_s) * det_s + (kp_p - kp_i) * det_i
    raise JsaError(f"unknown dk_mode {dk_mode!r}; expected 'full' or 'first_order'")


def compute_jsa(
    model: DispersionModel,
    crystal: CrystalSpec,
    pump: PumpSpec,
    grid: SpectralGrid,
    pm_profile: str | None = None,
    dk_mode: str = "full",
) -> JsaMatrix:
    """Normalized plane-wave JSA on the given grid.

    The amplitude is the pump envelope times the magnitude of the
    phasematching profile (flat joint phase; see module docstring), then
    normalized so that sum |f|^2 * dws * dwi = 1.

    Args:
        pm_profile: ``"sinc"`` or ``"gaussian"``; None defers to
            crystal.apodized.
        dk_mode: Passed to :func:`delta_k`; the expansion center for
            first_order mode is the grid center.

    Warns:
        GridCoverageWarning: When any grid-edge amplitude exceeds 1e-3 of
            the peak, meaning the window clips non-negligible support.
    """
    profile = pm_profile if pm_profile is not None else (
        "gaussian" if crystal.apodized else "sinc")
    if profile not in ("sinc", "gaussian"):
        raise JsaError(f"unknown pm_profile {profile!r}")

    omega_s = grid.signal_omegas[:, None]
    omega_i = grid.idler_omegas[None, :]
    omega_s0 = float(np.mean(grid.signal_omegas))
    omega_i0 = float(np.mean(grid.idler_omegas))

    # Detunings are taken against the pump's own center so that the two
    # arguments sum to omega_s + omega_i - omega_p0 regardless of where the
    # grid sits.
    alpha = pump_envelope(pump, omega_s - (pump.omega0 - omega_i0),
                          omega_i - omega_i0)
    mismatch = delta_k(model, crystal, dk_mode, omega_s, omega_i,
                       center=(omega_s0, omega_i0))
    if profile == "sinc":
        phi = phasematching_sinc(mismatch, crystal.length)
    else:
        phi = phasematching_gaussian(mismatch, crystal.length)

    amplitude = alpha * np.abs(phi)
    total = np.sum(amplitude**2) * grid.signal_step * grid.idler_step
    if total <= 0 or not np.isfinite(total):
        raise JsaError("JSA has no support on this grid; check centers")
    amplitude = amplitude / math.sqrt(total)

    peak = float(np.max(amplitude))
    edge = max(float(np.max(amplitude[0, :])), float(np.max(amplitude[-1, :])),
               float(np.max(amplitude[:, 0])), float(np.max(amplitude[:, -1])))
    if edge > _EDGE_FRACTION * peak:
        warnings.warn(
            f"grid edge amplitude is {edge / peak:.2e} of the peak "
            f"(threshold {_EDGE_FRACTION}); window may clip spectral support",
            GridCoverageWarning,
            stacklevel=2,
        )
    return JsaMatrix(grid=grid, amplitude=amplitude.astype(np.complex128),
                     normalized=True)
