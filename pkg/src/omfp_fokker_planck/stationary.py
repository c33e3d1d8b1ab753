"""Stationary states of the generator and their Gibbs references."""

import math
import warnings

import numpy as np
import scipy.sparse as sp
from numpy.typing import ArrayLike, NDArray
from scipy.integrate import cumulative_trapezoid, trapezoid
from scipy.sparse.linalg import MatrixRankWarning, spsolve

from core.config import settings
from core.errors import (
    DiscretizationWarning,
    NoStableEquilibriumError,
    PreconditionError,
    SolverError,
    WindowWarning,
)
from core.logger_utils import get_logger
from omfp_equilibria import equilibrium_positions
from omfp_fokker_planck.generator import assemble_generator
from omfp_fokker_planck.grid import build_phase_grid, reference_temperature
from omfp_fokker_planck.models import Generator, PhaseGrid, Scheme, StationaryProblem, StationaryState
from omfp_model import ModelParams, effective_potential, effective_temperature, total_damping, total_diffusion

logger = get_logger(__name__)

ORBIT_POINTS = 4001
SHELL_POINTS = 400
_BRACKET_POINTS = 20001


def solve_stationary(
    generator: Generator,
    clip: float = settings.STATIONARY_CLIP,
    boundary_warn: float = settings.BOUNDARY_MASS_WARN,
    t_eff_reference: float | None = None,
    tolerance: float = settings.STATIONARY_RESIDUAL_TOL,
    undershoot_warn: float = settings.UNDERSHOOT_WARN,
) -> StationaryState:
    """
    Null vector of the generator, normalized to unit mass.

    The first balance equation is replaced by the normalization row; since
    the columns of L sum to zero that row is redundant, so the bordered
    system is regular whenever the null space is one-dimensional.

    The residual is taken on the solved null vector. The central stencil is
    not an M-matrix, so that vector may dip below zero in the far tails; the
    negative share is reported as ``undershoot`` and clipped before the
    weights are normalized.

    Raises:
        SolverError: If the sparse solve fails, returns non-finite values or
            leaves a residual above ``tolerance``
    """
    matrix = generator.matrix
    size = generator.dimension
    bordered = sp.vstack([sp.csr_matrix(np.ones((1, size))), matrix[1:]], format="csc")
    rhs = np.zeros(size)
    rhs[0] = 1.0

    with warnings.catch_warnings():
        warnings.simplefilter("error", MatrixRankWarning)
        try:
            solved = spsolve(bordered, rhs)
        except (MatrixRankWarning, RuntimeError) as exc:
            raise SolverError(f"Stationary solve failed: {exc}") from exc
    if not np.all(np.isfinite(solved)):
        raise SolverError("Stationary solve returned non-finite weights")

    residual = float(np.max(np.abs(matrix @ solved)) / (generator.norm_inf() * np.max(np.abs(solved))))
    if not residual <= tolerance:
        raise SolverError(f"Stationary solve did not converge: residual {residual:.3g} > {tolerance:.1g}")

    undershoot = float(np.sum(np.maximum(-solved, 0.0)) / np.sum(np.abs(solved)))
    if undershoot > undershoot_warn:
        warnings.warn(
            f"Null vector carries {undershoot:.3g} of its weight on negative cells; refine the grid",
            DiscretizationWarning,
            stacklevel=2,
        )
    masses = np.where(solved < clip * solved.max(), 0.0, solved)

    state = StationaryState.from_masses(
        generator.grid, masses, residual=residual, t_eff_reference=t_eff_reference, undershoot=undershoot
    )
    if state.diagnostics.boundary_mass > boundary_warn:
        warnings.warn(
            f"Boundary mass {state.diagnostics.boundary_mass:.3g} exceeds {boundary_warn:.1g}; widen the window",
            WindowWarning,
            stacklevel=2,
        )
    logger.info(
        "Stationary state solved",
        dimension=size,
        residual=residual,
        undershoot=undershoot,
        var_u=round(state.diagnostics.var_u, 6),
        fitted_t_eff=round(state.diagnostics.fitted_t_eff, 6),
    )
    return state


def stationary_problem(
    p: ModelParams,
    n_x: int = settings.GRID_NX,
    n_p: int = settings.GRID_NP,
    padding_sigmas: float = settings.GRID_PADDING_SIGMAS,
    scheme: Scheme | str = settings.FP_SCHEME,
) -> StationaryProblem:
    """Grid, generator and stationary state of ``p`` in one call."""
    grid = build_phase_grid(p, n_x, n_p, padding_sigmas)
    generator = assemble_generator(p, grid, scheme)
    state = solve_stationary(generator, t_eff_reference=reference_temperature(p))
    return StationaryProblem(grid=grid, generator=generator, state=state)


def stationary_state(
    p: ModelParams,
    n_x: int = settings.GRID_NX,
    n_p: int = settings.GRID_NP,
    padding_sigmas: float = settings.GRID_PADDING_SIGMAS,
    scheme: Scheme | str = settings.FP_SCHEME,
) -> StationaryState:
    """
    Stationary phase-space density of ``p``.

    Raises:
        NoStableEquilibriumError: If no damped stable equilibrium exists
        SolverError: If the sparse solve fails
    """
    return stationary_problem(p, n_x, n_p, padding_sigmas, scheme).state


def gibbs_reference(p: ModelParams, grid: PhaseGrid, t_eff: float) -> StationaryState:
    """Normalized exp[-(w**2/4 + V_eff(u)) / T_eff] sampled on ``grid``."""
    if not t_eff > 0 or not math.isfinite(t_eff):
        raise PreconditionError(f"Gibbs reference needs T_eff > 0, got {t_eff}")
    potential = np.asarray(effective_potential(grid.u_nodes, p))
    energy = 0.25 * grid.w_nodes[None, :] ** 2 + (potential - potential.min())[:, None]
    return StationaryState.from_masses(grid, np.exp(-energy / t_eff), t_eff_reference=t_eff)


def gibbs_temperature(p: ModelParams) -> float:
    """
    Effective temperature at the deepest damped stable minimum.

    Raises:
        NoStableEquilibriumError: If every minimum self-oscillates
    """
    best = equilibrium_positions(p).deepest_usable()
    if best is None:
        raise NoStableEquilibriumError(f"No damped stable minimum at n_max={p.n_max:.6g}, delta={p.delta:.6g}")
    return effective_temperature(p, best.u)


def _single_well_profile(p: ModelParams, e_max: float) -> tuple[NDArray[np.float64], NDArray[np.float64], float]:
    """Fine u nodes covering {V - V_min <= e_max}, V - V_min on them, and V_min."""
    if len(equilibrium_positions(p).minima) != 1:
        raise PreconditionError("Energy-shell temperatures need a single well")
    # V - V_min >= u**2/4 - pi*kappa*n_max/2, so the shells stay inside this bracket
    reach = 2.0 * math.sqrt(e_max + 0.5 * math.pi * p.kappa * p.n_max) + 1.0
    coarse = np.linspace(-reach, reach, _BRACKET_POINTS)
    v = np.asarray(effective_potential(coarse, p))
    v_min = float(v.min())
    inside = np.flatnonzero(v - v_min <= e_max)
    step = coarse[1] - coarse[0]
    u = np.linspace(coarse[inside[0]] - step, coarse[inside[-1]] + step, ORBIT_POINTS)
    return u, np.asarray(effective_potential(u, p)) - v_min, v_min


def shell_inverse_temperatures(p: ModelParams, energies: ArrayLike) -> NDArray[np.float64]:
    """
    1/T(E) of the closed orbits of the well, E measured from its bottom.

    On a shell |w| = 2 sqrt(E - V), and 1/T(E) = 4 int Gamma_tot |w| du / int D_tot |w| du.
    With Gamma_tot and D_tot constant this is 4 Gamma / D, the temperature of
    var(w) = 2 T. Shells whose averaged damping is not positive get 0.

    Raises:
        PreconditionError: If the potential has more than one well
    """
    energies = np.asarray(energies, dtype=float)
    u, v, _ = _single_well_profile(p, float(energies.max()))
    gamma = np.asarray(total_damping(u, p))
    diffusion = np.asarray(total_diffusion(u, p))

    speed = np.sqrt(np.maximum(energies[:, None] - v[None, :], 0.0))
    damping = trapezoid(speed * gamma, u, axis=1)
    noise = trapezoid(speed * diffusion, u, axis=1)
    bottom = int(np.argmin(v))
    beta = np.full(energies.shape, 4.0 * gamma[bottom] / diffusion[bottom])
    np.divide(4.0 * damping, noise, out=beta, where=noise > 0)
    return np.maximum(beta, 0.0)


def shell_temperatures(p: ModelParams, energies: ArrayLike) -> NDArray[np.float64]:
    """T(E) of :func:`shell_inverse_temperatures`; inf where the shell is not damped."""
    beta = shell_inverse_temperatures(p, energies)
    with np.errstate(divide="ignore"):
        return 1.0 / beta


def orbit_averaged_reference(p: ModelParams, grid: PhaseGrid) -> StationaryState:
    """
    Energy-diffusion density P = exp(-int_0^E dE'/T(E')) sampled on ``grid``.

    The Gibbs reference freezes Gamma_tot and D_tot at the minimum. When they
    vary across the thermal width, weak damping makes the density a function
    of the orbit energy alone, with the temperature of each shell set by the
    averaged balance of noise and damping along it.

    Raises:
        PreconditionError: If the potential has more than one well
    """
    potential = np.asarray(effective_potential(grid.u_nodes, p))
    energy = 0.25 * grid.w_nodes[None, :] ** 2 + potential[:, None]
    _, _, v_min = _single_well_profile(p, 1.0)
    energy = np.maximum(energy - v_min, 0.0)

    shells = np.linspace(0.0, float(energy.max()), SHELL_POINTS)
    beta = shell_inverse_temperatures(p, shells)
    exponent = cumulative_trapezoid(beta, shells, initial=0.0)
    weights = np.exp(-np.interp(energy, shells, exponent))
    logger.debug("Orbit-averaged reference built", t_bottom=float(1.0 / beta[0]), shells=SHELL_POINTS)
    return StationaryState.from_masses(grid, weights, t_eff_reference=float(1.0 / beta[0]))


def average_damping(st: StationaryState, p: ModelParams) -> float:
    """Mean total damping under the stationary u-marginal."""
    gamma = np.asarray(total_damping(st.grid.u_nodes, p))
    return float(np.dot(st.marginal_u() * st.grid.h_u, gamma))
