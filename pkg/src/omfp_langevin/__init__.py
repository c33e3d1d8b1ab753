"""Stochastic trajectory oracle for the Fokker-Planck results."""

from omfp_langevin.dump import SampleDump, read_dump, write_dump
from omfp_langevin.estimators import histogram, ks_distance, ks_distance_gaussian, periodogram
from omfp_langevin.integrator import simulate
from omfp_langevin.models import TrajectoryConfig, TrajectoryEnsemble

__all__ = [
    "SampleDump",
    "TrajectoryConfig",
    "TrajectoryEnsemble",
    "histogram",
    "ks_distance",
    "ks_distance_gaussian",
    "periodogram",
    "read_dump",
    "simulate",
    "write_dump",
]
