"""Resolvent spectra of the stationary state: displacement, cavity population and emission."""

from omfp_spectra.cavity import (
    bare_cavity_population,
    cavity_population,
    coherent_cavity_field,
    emission_spectrum,
    equilibrium_population,
    incoherent_weight,
    integrated_incoherent_weight,
    normalized_field,
    population_sample,
)
from omfp_spectra.displacement import displacement_spectrum, log_frequency_grid, resolve_problem
from omfp_spectra.models import Observable, PopulationSample, PopulationStatus, SpectrumSeries
from omfp_spectra.resolvent import real_pair_spectrum, resolvent_spectrum, symmetric_midpoints

__all__ = [
    "Observable",
    "PopulationSample",
    "PopulationStatus",
    "SpectrumSeries",
    "bare_cavity_population",
    "cavity_population",
    "coherent_cavity_field",
    "displacement_spectrum",
    "emission_spectrum",
    "equilibrium_population",
    "incoherent_weight",
    "integrated_incoherent_weight",
    "log_frequency_grid",
    "normalized_field",
    "population_sample",
    "real_pair_spectrum",
    "resolve_problem",
    "resolvent_spectrum",
    "symmetric_midpoints",
]
