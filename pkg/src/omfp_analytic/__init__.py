"""Dissipationless spectra of the quartic-truncated well: orbits, closed forms and limits."""

from omfp_analytic.elliptic import complete_elliptic_K
from omfp_analytic.models import AnharmonicPotential, QuarticConstants
from omfp_analytic.orbits import (
    frequency_derivative,
    orbit_fourier_coefficients,
    oscillation_frequency,
    period_by_quadrature,
    resynthesize_orbit,
    scaled_coefficients,
    turning_point,
)
from omfp_analytic.spectra import (
    anharmonic_potential,
    anharmonic_shift,
    dissipationless_spectrum,
    partition_function,
    quartic_constants,
    quartic_eta,
    quartic_peak_frequency,
    quartic_spectrum,
    quartic_temperature,
    validity_ratio,
    weak_anharmonic_spectrum,
)

__all__ = [
    "AnharmonicPotential",
    "QuarticConstants",
    "anharmonic_potential",
    "anharmonic_shift",
    "complete_elliptic_K",
    "dissipationless_spectrum",
    "frequency_derivative",
    "orbit_fourier_coefficients",
    "oscillation_frequency",
    "partition_function",
    "period_by_quadrature",
    "quartic_constants",
    "quartic_eta",
    "quartic_peak_frequency",
    "quartic_spectrum",
    "quartic_temperature",
    "resynthesize_orbit",
    "scaled_coefficients",
    "turning_point",
    "validity_ratio",
    "weak_anharmonic_spectrum",
]
