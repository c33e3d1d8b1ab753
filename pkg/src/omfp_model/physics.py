"""Pointwise physics of the adiabatically eliminated cavity.

All functions accept scalars or arrays of displacements ``u`` and return
floats for scalar input, arrays otherwise.
"""

import math

import numpy as np
from numpy.typing import ArrayLike, NDArray

from core.errors import NegativeDampingError, PreconditionError
from core.lib import acoth_to_temperature, coth_half_inverse
from omfp_model.models import ModelParams, QuarticExpansion

FloatOrArray = float | NDArray[np.float64]


def _out(value: NDArray) -> FloatOrArray:
    return float(value) if np.ndim(value) == 0 else value


def detuning_shift(u: ArrayLike, p: ModelParams) -> FloatOrArray:
    """Effective detuning Delta'(u) = Delta + g0*u."""
    return _out(p.delta + p.g0 * np.asarray(u, dtype=float))


def displacement_for_detuning(delta_prime: ArrayLike, p: ModelParams) -> FloatOrArray:
    """Inverse of :func:`detuning_shift`."""
    if p.g0 == 0:
        raise PreconditionError("Displacement is undefined for a decoupled cavity (lambda = 0)")
    return _out((np.asarray(delta_prime, dtype=float) - p.delta) / p.g0)


def lorentzian_kernel(delta_prime: ArrayLike, kappa: float) -> FloatOrArray:
    """Normalized cavity response (kappa/2)**2 / (Delta'**2 + (kappa/2)**2)."""
    half = 0.25 * kappa * kappa
    return _out(half / (np.asarray(delta_prime, dtype=float) ** 2 + half))


def photon_number(u: ArrayLike, p: ModelParams) -> FloatOrArray:
    """Mean intracavity photon number at displacement ``u``."""
    return _out(p.n_max * np.asarray(lorentzian_kernel(detuning_shift(u, p), p.kappa)))


def effective_potential(u: ArrayLike, p: ModelParams) -> FloatOrArray:
    """
    Effective potential in units of hbar*Omega_m.

    V(u) = u**2/4 - (kappa/2) * n_max * arctan(2 Delta'(u) / kappa), which is
    the bare harmonic term plus the integrated radiation-pressure force.
    """
    u_arr = np.asarray(u, dtype=float)
    dp = np.asarray(detuning_shift(u_arr, p))
    return _out(0.25 * u_arr**2 - 0.5 * p.kappa * p.n_max * np.arctan(2.0 * dp / p.kappa))


def static_force(u: ArrayLike, p: ModelParams) -> FloatOrArray:
    """
    Total static force -dV/du in units of hbar*Omega_m/x_zpf.

    The momentum equation of motion in (u, w) is w' = 2*F(u) - Gamma*w + noise.
    """
    u_arr = np.asarray(u, dtype=float)
    return _out(-0.5 * u_arr + p.g0 * np.asarray(photon_number(u_arr, p)))


def potential_curvature(u: ArrayLike, p: ModelParams) -> FloatOrArray:
    """Second derivative V''(u); equals Omega**2/2 for a local harmonic frequency Omega."""
    dp = np.asarray(detuning_shift(u, p))
    denom = dp**2 + 0.25 * p.kappa**2
    dn_ddp = -p.n_max * 0.5 * p.kappa**2 * dp / denom**2
    return _out(0.5 - p.g0**2 * dn_ddp)


def optical_damping(u: ArrayLike, p: ModelParams) -> FloatOrArray:
    """Optical damping rate; positive on the red (cooling) side Delta' < 0."""
    dp = np.asarray(detuning_shift(u, p))
    n = np.asarray(photon_number(u, p))
    denom = dp**2 + 0.25 * p.kappa**2
    return _out(-4.0 * p.g0**2 * dp * p.kappa * n / denom**2)


def optical_diffusion(u: ArrayLike, p: ModelParams) -> FloatOrArray:
    """
    Shot-noise momentum diffusion in the flat-spectrum approximation.

    Rate of growth of var(w); equals 2*D/(m*hbar*Omega_m) for the raw
    diffusion constant D = 2 m hbar Omega_m g0**2 kappa n / (Delta'**2 + kappa**2/4).
    """
    dp = np.asarray(detuning_shift(u, p))
    n = np.asarray(photon_number(u, p))
    return _out(4.0 * p.g0**2 * p.kappa * n / (dp**2 + 0.25 * p.kappa**2))


def force_spectrum(omega: ArrayLike, u: ArrayLike, p: ModelParams) -> FloatOrArray:
    """
    Frequency-resolved radiation-pressure noise at fixed displacement.

    Same units as :func:`optical_diffusion`, to which it reduces at omega = 0.
    Diagnostic only; the generator uses the flat approximation.
    """
    omega_arr = np.asarray(omega, dtype=float)
    dp = np.asarray(detuning_shift(u, p))
    n = np.asarray(photon_number(u, p))
    return _out(4.0 * p.g0**2 * p.kappa * n / ((omega_arr + dp) ** 2 + 0.25 * p.kappa**2))


def thermal_diffusion(p: ModelParams) -> float:
    """Brownian momentum diffusion 2*Gamma_m*coth(1/(2 T_b)); T_b = 0 gives the zero-point value."""
    return 2.0 * p.gamma_m * float(coth_half_inverse(p.T_b))


def total_damping(u: ArrayLike, p: ModelParams) -> FloatOrArray:
    return _out(p.gamma_m + np.asarray(optical_damping(u, p)))


def total_diffusion(u: ArrayLike, p: ModelParams) -> FloatOrArray:
    return _out(thermal_diffusion(p) + np.asarray(optical_diffusion(u, p)))


def phonon_occupation(temperature: float) -> float:
    """Bose occupation of the mechanical mode at ``temperature``."""
    if temperature <= 0:
        return 0.0
    return 1.0 / math.expm1(1.0 / temperature)


def quartic_expansion(p: ModelParams) -> QuarticExpansion:
    """
    Expand V/hbar about Delta' = Delta'* on the tuning line.

    Raises:
        PreconditionError: If (n_max, Delta) is off the tuning line or lambda = 0
    """
    if p.lam == 0:
        raise PreconditionError("Quartic expansion needs lambda > 0")
    if not p.is_on_tuning_line():
        raise PreconditionError(
            f"Detuning {p.delta:.6g} is off the tuning line (expected {p.tuning_line_delta():.6g})"
        )
    b = (1.0 / p.lam - 0.75 * math.sqrt(3.0) * p.n_max) / (2.0 * p.kappa)
    c = (9.0 * math.sqrt(3.0) / 16.0) * p.n_max / p.kappa**3
    u_star = float(displacement_for_detuning(p.delta_prime_star, p))
    v0 = float(effective_potential(u_star, p))
    return QuarticExpansion(v0=v0, b=b, c=c, u_star=u_star, g0=p.g0)


def effective_temperature(p: ModelParams, u_e: float) -> float:
    """
    Temperature from the fluctuation-dissipation ratio at equilibrium ``u_e``.

    coth(1/(2 T_eff)) = D_tot / (2 Gamma_tot). With no thermal bath coupling
    the ratio is taken in closed form, -(Delta'**2 + kappa**2/4) / (2 Delta').

    Raises:
        NegativeDampingError: If Gamma_tot(u_e) <= 0
    """
    if p.gamma_m == 0:
        dp = float(detuning_shift(u_e, p))
        if dp >= 0 or p.n_max == 0:
            raise NegativeDampingError(f"No optical cooling at Delta'={dp:.6g}; Gamma_tot <= 0")
        ratio = -(dp * dp + 0.25 * p.kappa**2) / (2.0 * dp)
    else:
        gamma = float(total_damping(u_e, p))
        if gamma <= 0:
            raise NegativeDampingError(f"Gamma_tot={gamma:.6g} at u={u_e:.6g}; point is self-oscillating")
        ratio = float(total_diffusion(u_e, p)) / (2.0 * gamma)

    if ratio <= 1.0:
        return 0.0
    return float(acoth_to_temperature(ratio))
