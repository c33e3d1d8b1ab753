"""Displacement spectrum S_uu of the stationary state."""

from typing import Any

import numpy as np
from numpy.typing import ArrayLike, NDArray

from core.config import settings
from core.logger_utils import get_logger
from omfp_fokker_planck import StationaryProblem, stationary_problem
from omfp_model import ModelParams
from omfp_spectra.models import Observable, SpectrumSeries
from omfp_spectra.resolvent import resolvent_spectrum

logger = get_logger(__name__)


def log_frequency_grid(omega_min: float, omega_max: float, points: int) -> NDArray[np.float64]:
    return np.geomspace(omega_min, omega_max, points)


def resolve_problem(p: ModelParams, problem: StationaryProblem | None, **grid_options: Any) -> StationaryProblem:
    """Reuse ``problem`` when given, otherwise solve the stationary state of ``p``."""
    if problem is not None:
        return problem
    return stationary_problem(p, **grid_options)


def displacement_spectrum(
    p: ModelParams,
    omegas: ArrayLike | None = None,
    problem: StationaryProblem | None = None,
    jobs: int = settings.JOBS,
    **grid_options: Any,
) -> SpectrumSeries:
    """
    Spectrum of the centered displacement, in x_zpf**2 per Omega_m.

    Raises:
        NoStableEquilibriumError: If ``p`` has no damped stable equilibrium
        SolverError: If the stationary solve fails
    """
    if omegas is None:
        omegas = log_frequency_grid(settings.XX_OMEGA_MIN, settings.XX_OMEGA_MAX, settings.XX_OMEGA_POINTS)
    problem = resolve_problem(p, problem, **grid_options)
    u_obs = Observable.displacement(problem.grid)
    series = resolvent_spectrum(problem.generator, problem.state, u_obs, u_obs, omegas, jobs=jobs, label="xx")
    omega_peak, _ = series.peak(refine=True)
    logger.info("Displacement spectrum computed", n_max=p.n_max, delta=p.delta, peak=round(omega_peak, 6))
    return series
