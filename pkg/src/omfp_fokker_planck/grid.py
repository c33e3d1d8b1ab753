"""Automatic sizing of the phase-space window."""

import math
from dataclasses import dataclass

import numpy as np

from core.config import settings
from core.errors import ImproperlyConfigured, NoStableEquilibriumError
from core.logger_utils import get_logger
from omfp_equilibria import equilibrium_positions
from omfp_fokker_planck.models import PhaseGrid
from omfp_model import ModelParams, effective_potential, effective_temperature

logger = get_logger(__name__)

MIN_PADDING_SIGMAS = 3.0
_BRACKET_LEVEL = 60.0
_BRACKET_POINTS = 20001


@dataclass(frozen=True)
class PhaseWindow:
    """Rectangular window and the Gibbs statistics it was sized from."""

    u_min: float
    u_max: float
    w_min: float
    w_max: float
    t_eff: float
    mean_u: float
    sigma_u: float

    @property
    def half_width_u(self) -> float:
        return 0.5 * (self.u_max - self.u_min)


def reference_temperature(p: ModelParams) -> float:
    """
    Largest effective temperature over the damped stable minima.

    Raises:
        NoStableEquilibriumError: If every minimum is self-oscillating
    """
    usable = equilibrium_positions(p).usable
    if not usable:
        raise NoStableEquilibriumError(
            f"No damped stable equilibrium at n_max={p.n_max:.6g}, delta={p.delta:.6g}"
        )
    return max(effective_temperature(p, eq.u) for eq in usable)


def phase_window(p: ModelParams, padding_sigmas: float = settings.GRID_PADDING_SIGMAS) -> PhaseWindow:
    """
    Window centered on the Gibbs u-marginal, ``padding_sigmas`` standard deviations wide.

    The u statistics come from a fine 1-d quadrature of exp(-V_eff/T_eff) with
    the full effective potential, so quartic and double wells are sized by
    their actual thermal width. The w half-width uses var(w) = 2 T_eff.

    Raises:
        ImproperlyConfigured: If ``padding_sigmas`` < 3
        NoStableEquilibriumError: If no damped stable equilibrium exists
    """
    if padding_sigmas < MIN_PADDING_SIGMAS:
        raise ImproperlyConfigured(f"padding_sigmas must be >= {MIN_PADDING_SIGMAS}, got {padding_sigmas}")

    t_eff = reference_temperature(p)
    if t_eff <= 0:
        raise NoStableEquilibriumError("Effective temperature vanishes; no thermal window")

    # u**2/4 - V_eff is bounded by pi*kappa*n_max/4, so V - V_min > 60 T outside this bracket
    reach = 2.0 * math.sqrt(_BRACKET_LEVEL * t_eff + 0.5 * math.pi * p.kappa * p.n_max)
    u = np.linspace(-reach, reach, _BRACKET_POINTS)
    v = np.asarray(effective_potential(u, p))
    weights = np.exp(-(v - v.min()) / t_eff)
    weights /= weights.sum()
    mean_u = float(np.dot(weights, u))
    sigma_u = float(math.sqrt(np.dot(weights, (u - mean_u) ** 2)))

    w_half = padding_sigmas * math.sqrt(2.0 * t_eff)
    return PhaseWindow(
        u_min=mean_u - padding_sigmas * sigma_u,
        u_max=mean_u + padding_sigmas * sigma_u,
        w_min=-w_half,
        w_max=w_half,
        t_eff=t_eff,
        mean_u=mean_u,
        sigma_u=sigma_u,
    )


def build_phase_grid(
    p: ModelParams,
    n_x: int = settings.GRID_NX,
    n_p: int = settings.GRID_NP,
    padding_sigmas: float = settings.GRID_PADDING_SIGMAS,
) -> PhaseGrid:
    """Cell-centered ``n_x`` by ``n_p`` grid over :func:`phase_window`."""
    window = phase_window(p, padding_sigmas)
    try:
        grid = PhaseGrid.from_window(window.u_min, window.u_max, window.w_min, window.w_max, n_x, n_p)
    except ValueError as exc:
        raise ImproperlyConfigured(str(exc)) from exc
    logger.debug(
        "Phase grid built",
        n_x=n_x,
        n_p=n_p,
        window=[round(edge, 4) for edge in grid.window],
        t_eff=window.t_eff,
    )
    return grid
