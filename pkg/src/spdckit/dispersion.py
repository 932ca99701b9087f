"""Refractive-index models and group-velocity engineering for periodically poled KTP.

The crystal geometry is fixed by the process this package models: propagation
along the crystallographic X axis, with a Type-II polarization assignment of
pump and idler along Y and signal along Z. Refractive indices come from
published Sellmeier fits carried as data on :class:`DispersionModel`, so
alternate coefficient sets can be loaded from configuration without touching
code.

Sellmeier form used here, with u = (wavelength in micrometers)^2:

    n^2(u) = A + sum_k B_k * u / (u - C_k) + sum_k D_k / (u - E_k) + F * u

which covers the common "resonance" (B, C), "Kato-style pole" (D, E) and
quadratic infrared correction (F) terms. Derivatives are analytic; see
:func:`inverse_group_velocity`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .units import C_LIGHT, wavelength_to_omega

TWO_PI = 2.0 * math.pi

# Relative tolerance below which the group-velocity denominator k'_p - k'_i
# is considered degenerate and the dispersion parameter undefined.
_DEGENERACY_RTOL = 1e-6


class DispersionError(ValueError):
    """Base class for dispersion-domain errors."""


class WavelengthRangeError(DispersionError):
    """Wavelength outside a model's declared validity range."""


class GroupVelocityDegeneracyError(DispersionError):
    """Pump and idler inverse group velocities too close to divide by."""


class NoGvmPointError(DispersionError):
    """No group-velocity-matched signal wavelength inside the search bracket."""


class NoQpmSolutionError(DispersionError):
    """First-order quasi-phase matching impossible (non-positive poling period)."""


@dataclass(frozen=True)
class SellmeierCoefficients:
    """One axis' Sellmeier fit.

    Attributes:
        a: Constant term in n^2.
        resonances: Sequence of (B_k, C_k) pairs for B*u/(u - C) terms, C in um^2.
        poles: Sequence of (D_k, E_k) pairs for D/(u - E) terms, E in um^2.
        quadratic: Coefficient F of the u term (um^-2), usually negative.
    """

    a: float
    resonances: tuple[tuple[float, float], ...] = ()
    poles: tuple[tuple[float, float], ...] = ()
    quadratic: float = 0.0

    def n_squared(self, u: float) -> float:
        value = self.a + self.quadratic * u
        for b, c in self.resonances:
            value += b * u / (u - c)
        for d, e in self.poles:
            value += d / (u - e)
        return value

    def dn_squared_du(self, u: float) -> float:
        # d/du of B*u/(u-C) is -B*C/(u-C)^2; of D/(u-E) is -D/(u-E)^2.
        value = self.quadratic
        for b, c in self.resonances:
            value -= b * c / (u - c) ** 2
        for d, e in self.poles:
            value -= d / (u - e) ** 2
        return value


@dataclass(frozen=True)
class DispersionModel:
    """Per-axis Sellmeier data plus validity bounds and provenance.

    Attributes:
        y: Coefficients for the Y axis (pump and idler polarization).
        z: Coefficients for the Z axis (signal polarization).
        validity_range: (min, max) vacuum wavelength in meters over which
            evaluation is allowed.
        citation: Free-text identification of the published coefficient sets.
    """

    y: SellmeierCoefficients
    z: SellmeierCoefficients
    validity_range: tuple[float, float] = (0.40e-6, 2.50e-6)
    citation: str = ""

    def coefficients(self, axis: str) -> SellmeierCoefficients:
        if axis == "y":
            return self.y
        if axis == "z":
            return self.z
        raise DispersionError(f"unknown crystal axis {axis!r}; expected 'y' or 'z'")

    def check_range(self, wavelength) -> None:
        lo, hi = self.validity_range
        w_min = float(np.min(wavelength))
        w_max = float(np.max(wavelength))
        if w_min < lo:
            raise WavelengthRangeError(
                f"wavelength {w_min * 1e9:.1f} nm below validity bound "
                f"{lo * 1e9:.1f} nm"
            )
        if w_max > hi:
            raise WavelengthRangeError(
                f"wavelength {w_max * 1e9:.1f} nm above validity bound "
                f"{hi * 1e9:.1f} nm"
            )


# Default coefficient data for flux-grown KTP.
#
# Y axis: Fan et al., Appl. Opt. 26, 2390 (1987), n_y fit
#         n^2 = 2.19229 + 0.83547/(1 - 0.04970/lam^2) - 0.01621 lam^2.
# Z axis: Fradkin et al., Appl. Phys. Lett. 74, 914 (1999), n_z fit
#         n^2 = 2.12725 + 1.18431/(1 - 0.0514852/lam^2)
#                       + 0.6603/(1 - 100.00507/lam^2) - 0.00968956 lam^2.
#
# Both are published against lam in micrometers. The infrared ends of these
# fits are extrapolations beyond the authors' measurement ranges; the
# validity_range below bounds how far this module lets callers push them.
KTP_DEFAULT = DispersionModel(
    y=SellmeierCoefficients(a=2.19229, resonances=((0.83547, 0.04970),),
                            quadratic=-0.01621),
    z=SellmeierCoefficients(a=2.12725,
                            resonances=((1.18431, 0.0514852),
                                        (0.6603, 100.00507)),
                            quadratic=-0.00968956),
    validity_range=(0.40e-6, 2.50e-6),
    citation=("KTP n_y: Fan et al., Appl. Opt. 26, 2390 (1987); "
              "KTP n_z: Fradkin et al., Appl. Phys. Lett. 74, 914 (1999)"),
)


@dataclass(frozen=True)
class AxisAssignment:
    """Which crystal axis each field's polarization lies along."""

    pump: str = "y"
    signal: str = "z"
    idler: str = "y"

    def __post_init__(self) -> None:
        for role, axis in (("pump", self.pump), ("signal", self.signal),
                           ("idler", self.idler)):
            if axis not in ("y", "z"):
                raise DispersionError(
                    f"{role} axis must be 'y' or 'z', got {axis!r}"
                )


@dataclass(frozen=True)
class CrystalSpec:
    """Poled-crystal geometry.

    Attributes:
        length: Crystal length L in meters.
        poling_period: First-order poling period in meters.
        axes: Polarization axis per field role.
        apodized: When True, operations default to the Gaussian
            phasematching profile instead of sinc.
    """

    length: float
    poling_period: float
    axes: AxisAssignment = field(default_factory=AxisAssignment)
    apodized: bool = False

    def __post_init__(self) -> None:
        if self.length <= 0:
            raise ValueError(f"crystal length must be positive, got {self.length}")
        if self.poling_period <= 0:
            raise ValueError(
                f"poling period must be positive, got {self.poling_period}"
            )


def refractive_index(model: DispersionModel, axis: str, wavelength):
    """Refractive index n(lambda) on a crystal axis.

    Scalar in, scalar out; numpy arrays broadcast element-wise.

    Args:
        model: Sellmeier data.
        axis: ``"y"`` or ``"z"``.
        wavelength: Vacuum wavelength in meters, inside the validity range.

    Raises:
        WavelengthRangeError: Outside the model's validity range, naming the
            violated bound.
    """
    model.check_range(wavelength)
    u = (np.asarray(wavelength) * 1e6) ** 2
    n_sq = model.coefficients(axis).n_squared(u)
    if np.any(n_sq <= 1.0):
        raise DispersionError(
            f"Sellmeier form returned n^2 <= 1 inside the evaluated range on "
            f"axis {axis!r}; coefficient data is unphysical there"
        )
    result = np.sqrt(n_sq)
    return float(result) if np.isscalar(wavelength) else result


def _dn_dlambda(model: DispersionModel, axis: str, wavelength):
    """Analytic dn/dlambda in 1/m. Chain rule through u = (lambda_um)^2."""
    coeff = model.coefficients(axis)
    lam_um = np.asarray(wavelength) * 1e6
    u = lam_um ** 2
    n = refractive_index(model, axis, wavelength)
    # dn/du = (1/2n) d(n^2)/du ; du/dlam_um = 2 lam_um ; then per meter.
    dn_dlam_um = (lam_um / n) * coeff.dn_squared_du(u)
    return dn_dlam_um * 1e6


def group_index(model: DispersionModel, axis: str, wavelength):
    """Group index n_g = n - lambda * dn/dlambda."""
    n = refractive_index(model, axis, wavelength)
    return n - wavelength * _dn_dlambda(model, axis, wavelength)


def wavevector(model: DispersionModel, axis: str, wavelength):
    """Scalar wavevector magnitude k = 2 pi n / lambda in 1/m."""
    return TWO_PI * refractive_index(model, axis, wavelength) / wavelength


def inverse_group_velocity(model: DispersionModel, axis: str, omega):
    """k' = dk/d(omega) in s/m, from analytic Sellmeier differentiation.

    The derivative is exact (no finite-difference step to tune): with
    k = n(lambda) * omega / c and lambda = 2 pi c / omega,

        k' = (n - lambda dn/dlambda) / c = n_g / c.
    """
    wavelength = TWO_PI * C_LIGHT / omega
    return group_index(model, axis, wavelength) / C_LIGHT


def idler_wavelength(pump_wavelength: float, signal_wavelength: float) -> float:
    """Energy-conserving idler wavelength: 1/lam_i = 1/lam_p - 1/lam_s."""
    inv = 1.0 / pump_wavelength - 1.0 / signal_wavelength
    if inv <= 0.0:
        raise DispersionError(
            f"signal wavelength {signal_wavelength * 1e9:.1f} nm not longer "
            f"than pump {pump_wavelength * 1e9:.1f} nm; no idler exists"
        )
    return 1.0 / inv


def dispersion_parameter_D(
    model: DispersionModel,
    pump_wavelength: float,
    signal_wavelength: float,
    axes: AxisAssignment = AxisAssignment(),
) -> float:
    """Group-velocity mismatch ratio D = -(k'_p - k'_s) / (k'_p - k'_i).

    D = 0 means the pump group velocity matches the signal's, the condition
    for a spectrally factorable source when the idler walks off strongly.

    Raises:
        GroupVelocityDegeneracyError: When |k'_p - k'_i| is below 1e-6 of
            k'_p, which would make the ratio meaningless.
    """
    lam_i = idler_wavelength(pump_wavelength, signal_wavelength)
    kp_p = inverse_group_velocity(model, axes.pump,
                                  wavelength_to_omega(pump_wavelength))
    kp_s = inverse_group_velocity(model, axes.signal,
                                  wavelength_to_omega(signal_wavelength))
    kp_i = inverse_group_velocity(model, axes.idler,
                                  wavelength_to_omega(lam_i))
    denominator = kp_p - kp_i
    if abs(denominator) < _DEGENERACY_RTOL * abs(kp_p):
        raise GroupVelocityDegeneracyError(
            "pump and idler inverse group velocities are degenerate "
            f"(|k'_p - k'_i| = {abs(denominator):.3e} s/m); dispersion "
            "parameter undefined"
        )
    return -(kp_p - kp_s) / denominator


def solve_poling_period(
    model: DispersionModel,
    pump_wavelength: float,
    signal_wavelength: float,
    axes: AxisAssignment = AxisAssignment(),
) -> float:
    """First-order poling period closing the collinear phase mismatch.

    Solves 2 pi / Lambda = k_s + k_i - k_p at the central triplet, the
    closed-form inversion of the quasi-phase-matching condition
    k_p - k_s - k_i + 2 pi / Lambda = 0.

    Raises:
        NoQpmSolutionError: If k_s + k_i <= k_p, which would require a
            non-positive poling period (no first-order grating exists).
    """
    lam_i = idler_wavelength(pump_wavelength, signal_wavelength)
    k_p = wavevector(model, axes.pump, pump_wavelength)
    k_s = wavevector(model, axes.signal, signal_wavelength)
    k_i = wavevector(model, axes.idler, lam_i)
    mismatch = k_s + k_i - k_p
    if mismatch <= 0.0:
        raise NoQpmSolutionError(
            "collinear mismatch k_s + k_i - k_p is non-positive "
            f"({mismatch:.3e} 1/m) for this axis assignment; no first-order "
            "poling period exists"
        )
    return TWO_PI / mismatch


def find_gvm_wavelengths(
    model: DispersionModel,
    pump_wavelength: float,
    axes: AxisAssignment = AxisAssignment(),
    bracket: tuple[float, float] = (700e-9, 900e-9),
    tolerance: float = 1e-4,
) -> tuple[float, float]:
    """Signal/idler pair where the dispersion parameter D crosses zero.

    Bisects D(signal wavelength) over the bracket. Bisection is deliberate:
    D is cheap, smooth, and monotone here, and bracketed bisection cannot
    overshoot the validity range the way a Newton step could.

    Args:
        model: Sellmeier data.
        pump_wavelength: Pump vacuum wavelength in meters.
        axes: Polarization assignment.
        bracket: Signal-wavelength search interval in meters.
        tolerance: Stop once |D| falls below this at the midpoint.

    Returns:
        (signal wavelength, idler wavelength) in meters.

    Raises:
        NoGvmPointError: If D has the same sign at both bracket ends.
    """
    lo, hi = bracket
    d_lo = dispersion_parameter_D(model, pump_wavelength, lo, axes)
    d_hi = dispersion_parameter_D(model, pump_wavelength, hi, axes)
    if d_lo == 0.0:
        return lo, idler_wavelength(pump_wavelength, lo)
    if d_hi == 0.0:
        return hi, idler_wavelength(pump_wavelength, hi)
    if math.copysign(1.0, d_lo) == math.copysign(1.0, d_hi):
        raise NoGvmPointError(
            f"D({lo * 1e9:.0f} nm) = {d_lo:+.4f} and D({hi * 1e9:.0f} nm) = "
            f"{d_hi:+.4f} have the same sign; no group-velocity-matched "
            "signal wavelength in the bracket"
        )
    mid = 0.5 * (lo + hi)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        d_mid = dispersion_parameter_D(model, pump_wavelength, mid, axes)
        if abs(d_mid) < tolerance:
            break
        if math.copysign(1.0, d_mid) == math.copysign(1.0, d_lo):
            lo, d_lo = mid, d_mid
        else:
            hi = mid
    else:
        raise NoGvmPointError(
            f"bisection did not reach |D| < {tolerance} within 200 iterations"
        )
    return mid, idler_wavelength(pump_wavelength, mid)
