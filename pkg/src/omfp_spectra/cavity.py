"""Slaved cavity field: population and emission spectrum.

The cavity amplitude follows the mirror adiabatically,
alpha(u) = i*eps / (i*Delta'(u) - kappa/2). Intensities are reported relative
to n_max through the normalized field beta = alpha / sqrt(n_max), whose
squared modulus is the Lorentzian kernel and stays finite at n_max = 0.
"""

from typing import Any

import numpy as np
from numpy.typing import ArrayLike, NDArray

from core.config import settings
from core.errors import NegativeDampingError, NoStableEquilibriumError
from core.logger_utils import get_logger
from omfp_equilibria import equilibrium_positions
from omfp_fokker_planck import StationaryProblem
from omfp_model import ModelParams, detuning_shift, lorentzian_kernel
from omfp_spectra.displacement import log_frequency_grid, resolve_problem
from omfp_spectra.models import Observable, PopulationSample, PopulationStatus, SpectrumSeries
from omfp_spectra.resolvent import resolvent_spectrum, symmetric_midpoints

logger = get_logger(__name__)


def coherent_cavity_field(u: ArrayLike, p: ModelParams) -> complex | NDArray[np.complex128]:
    """alpha(u) in units of sqrt(photons)."""
    dp = np.asarray(detuning_shift(u, p))
    alpha = 1j * p.eps / (1j * dp - 0.5 * p.kappa)
    return complex(alpha) if alpha.ndim == 0 else alpha


def normalized_field(u: ArrayLike, p: ModelParams) -> complex | NDArray[np.complex128]:
    dp = np.asarray(detuning_shift(u, p))
    beta = 0.5j * p.kappa / (1j * dp - 0.5 * p.kappa)
    return complex(beta) if beta.ndim == 0 else beta


def bare_cavity_population(delta: ArrayLike, kappa: float) -> float | NDArray[np.float64]:
    """(kappa/2)**2 / (delta**2 + (kappa/2)**2), the uncoupled cavity response."""
    return lorentzian_kernel(delta, kappa)


def _with_delta(p: ModelParams, delta: float | None) -> ModelParams:
    return p if delta is None else p.replace(delta=delta)


def cavity_population(
    p: ModelParams,
    delta: float | None = None,
    problem: StationaryProblem | None = None,
    **grid_options: Any,
) -> float:
    """
    Stationary average of |beta(u)|**2 at detuning ``delta`` (default ``p.delta``).

    Raises:
        NoStableEquilibriumError: If the drive leaves no damped stable equilibrium
    """
    p = _with_delta(p, delta)
    problem = resolve_problem(p, problem, **grid_options)
    kernel = np.asarray(lorentzian_kernel(detuning_shift(problem.grid.u_nodes, p), p.kappa))
    return float(np.dot(problem.state.marginal_u() * problem.grid.h_u, kernel))


def equilibrium_population(p: ModelParams, delta: float | None = None) -> float:
    """
    |beta|**2 at the deepest damped minimum, the population without mechanical noise.

    At the quartic point its slope in Delta diverges, since the central root
    moves as (Delta - Delta*)**(1/3).

    Raises:
        NoStableEquilibriumError: If every minimum self-oscillates
    """
    p = _with_delta(p, delta)
    best = equilibrium_positions(p).deepest_usable()
    if best is None:
        raise NoStableEquilibriumError(f"No damped stable minimum at n_max={p.n_max:.6g}, delta={p.delta:.6g}")
    return float(lorentzian_kernel(best.delta_prime, p.kappa))


def _field_observable(problem: StationaryProblem, p: ModelParams) -> Observable:
    return Observable.from_function(problem.grid, lambda u: normalized_field(u, p), name="beta")


def _coherent_weight(problem: StationaryProblem, field: Observable) -> float:
    return float(abs(field.mean(problem.state)) ** 2)


def emission_spectrum(
    p: ModelParams,
    omegas: ArrayLike | None = None,
    problem: StationaryProblem | None = None,
    jobs: int = settings.JOBS,
    **grid_options: Any,
) -> SpectrumSeries:
    """
    Incoherent emission spectrum with the coherent delta-peak weight split off.

    Both parts are relative to n_max: the coherent weight is |<beta>|**2 and the
    sampled values integrate (over the full real line) to <|beta|**2> - |<beta>|**2.
    """
    if omegas is None:
        omegas = log_frequency_grid(
            settings.EMISSION_OMEGA_MIN, settings.EMISSION_OMEGA_MAX, settings.EMISSION_OMEGA_POINTS
        )
    problem = resolve_problem(p, problem, **grid_options)
    field = _field_observable(problem, p)
    series = resolvent_spectrum(problem.generator, problem.state, field.conjugate(), field, omegas, jobs=jobs)
    series.values = series.values / (2.0 * np.pi)
    series.coherent_weight = _coherent_weight(problem, field)
    series.label = "cavity"
    logger.info("Emission spectrum computed", n_max=p.n_max, delta=p.delta, coherent=series.coherent_weight)
    return series


def incoherent_weight(p: ModelParams, problem: StationaryProblem | None = None, **grid_options: Any) -> float:
    """
    Weight of the incoherent emission, <|beta|**2> - |<beta>|**2.

    This is the equal-time variance of the slaved field, which the incoherent
    spectrum integrates to over the whole real line. Narrow mechanical
    sidebands and slow switching peaks do not enter.
    """
    problem = resolve_problem(p, problem, **grid_options)
    field = _field_observable(problem, p)
    fluctuation = field.centered(problem.state).values
    return float(problem.state.expectation(np.abs(fluctuation) ** 2).real)


def integrated_incoherent_weight(
    p: ModelParams,
    problem: StationaryProblem | None = None,
    omega_max: float = settings.SUM_RULE_OMEGA_MAX,
    points: int = settings.SUM_RULE_POINTS,
    jobs: int = settings.JOBS,
    **grid_options: Any,
) -> float:
    """
    Midpoint-rule integral of the incoherent emission over [-omega_max, omega_max].

    Cross-check of :func:`incoherent_weight`; it converges only once the grid
    resolves the narrowest line of the spectrum.
    """
    omegas = symmetric_midpoints(omega_max, points)
    series = emission_spectrum(p, omegas, problem=resolve_problem(p, problem, **grid_options), jobs=jobs)
    finite = np.isfinite(series.values)
    return float(np.sum(series.values[finite]) * (omegas[1] - omegas[0]))


def population_sample(
    p: ModelParams,
    delta: float | None = None,
    **grid_options: Any,
) -> PopulationSample:
    """
    Total, coherent and incoherent cavity population at one detuning.

    A point without a damped stable equilibrium is returned with status
    ``unstable`` and NaN values instead of raising.
    """
    p = _with_delta(p, delta)
    try:
        problem = resolve_problem(p, None, **grid_options)
    except (NoStableEquilibriumError, NegativeDampingError) as exc:
        logger.info("Population sample unstable", n_max=p.n_max, delta=p.delta, reason=str(exc))
        nan = float("nan")
        return PopulationSample(p.delta, nan, nan, nan, PopulationStatus.UNSTABLE)
    coherent = _coherent_weight(problem, _field_observable(problem, p))
    return PopulationSample(
        delta=p.delta,
        population=cavity_population(p, problem=problem),
        coherent=coherent,
        incoherent=incoherent_weight(p, problem=problem),
        equilibrium=equilibrium_population(p),
    )
