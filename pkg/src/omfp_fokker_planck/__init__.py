"""Phase-space Fokker-Planck generator, stationary states and Gibbs references."""

from omfp_fokker_planck.generator import assemble_generator, fitted_flux_coefficients, upwind_heating
from omfp_fokker_planck.grid import PhaseWindow, build_phase_grid, phase_window, reference_temperature
from omfp_fokker_planck.models import (
    Generator,
    PhaseGrid,
    Scheme,
    StationaryDiagnostics,
    StationaryProblem,
    StationaryState,
)
from omfp_fokker_planck.stationary import (
    average_damping,
    gibbs_reference,
    gibbs_temperature,
    orbit_averaged_reference,
    shell_inverse_temperatures,
    shell_temperatures,
    solve_stationary,
    stationary_problem,
    stationary_state,
)

__all__ = [
    "Generator",
    "PhaseGrid",
    "PhaseWindow",
    "Scheme",
    "StationaryDiagnostics",
    "StationaryProblem",
    "StationaryState",
    "assemble_generator",
    "average_damping",
    "build_phase_grid",
    "fitted_flux_coefficients",
    "gibbs_reference",
    "gibbs_temperature",
    "orbit_averaged_reference",
    "phase_window",
    "reference_temperature",
    "shell_inverse_temperatures",
    "shell_temperatures",
    "solve_stationary",
    "stationary_problem",
    "stationary_state",
    "upwind_heating",
]
