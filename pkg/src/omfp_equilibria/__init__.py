"""Static equilibria, stability classification and tuning-line constants."""

from omfp_equilibria.models import (
    Dynamics,
    Equilibrium,
    EquilibriumSet,
    RegionMap,
    RenormalizedFrequency,
    RootStability,
)
from omfp_equilibria.regions import stability_region_map
from omfp_equilibria.roots import (
    equilibrium_detunings,
    equilibrium_positions,
    instability_threshold,
    quartic_point,
    renormalized_frequency,
    tuning_line_detuning,
)

__all__ = [
    "Dynamics",
    "Equilibrium",
    "EquilibriumSet",
    "RegionMap",
    "RenormalizedFrequency",
    "RootStability",
    "equilibrium_detunings",
    "equilibrium_positions",
    "instability_threshold",
    "quartic_point",
    "renormalized_frequency",
    "stability_region_map",
    "tuning_line_detuning",
]
