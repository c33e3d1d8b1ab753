"""Dimensionless model parameters and pointwise physics."""

from omfp_model.models import ModelParams, QuarticExpansion
from omfp_model.physics import (
    detuning_shift,
    displacement_for_detuning,
    effective_potential,
    effective_temperature,
    force_spectrum,
    lorentzian_kernel,
    optical_damping,
    optical_diffusion,
    potential_curvature,
    phonon_occupation,
    photon_number,
    quartic_expansion,
    static_force,
    thermal_diffusion,
    total_damping,
    total_diffusion,
)

__all__ = [
    "ModelParams",
    "QuarticExpansion",
    "detuning_shift",
    "displacement_for_detuning",
    "effective_potential",
    "effective_temperature",
    "force_spectrum",
    "lorentzian_kernel",
    "optical_damping",
    "optical_diffusion",
    "potential_curvature",
    "phonon_occupation",
    "photon_number",
    "quartic_expansion",
    "static_force",
    "thermal_diffusion",
    "total_damping",
    "total_diffusion",
]
