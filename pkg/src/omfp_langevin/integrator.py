"""Semiclassical Langevin trajectories of the mirror.

    du = w dt
    dw = (2 F(u) - Gamma_tot(u) w) dt + sqrt(D_tot(u)) dW

The momentum is advanced first and the position with the updated momentum
(semi-implicit Euler-Maruyama). The noise is additive in w, so the scheme is
consistent; the ordering keeps the conservative part symplectic.
"""

import math
import warnings
from concurrent.futures import ThreadPoolExecutor, as_completed

import numpy as np
from numpy.typing import NDArray

from core.config import settings
from core.errors import DivergenceError, NegativeDampingError, NoStableEquilibriumError, PremiseWarning
from core.logger_utils import get_logger
from omfp_equilibria import equilibrium_positions
from omfp_fokker_planck import phase_window
from omfp_fokker_planck.grid import MIN_PADDING_SIGMAS
from omfp_langevin.models import TrajectoryConfig, TrajectoryEnsemble
from omfp_model import ModelParams, static_force, total_damping, total_diffusion

logger = get_logger(__name__)

GUARD_FACTOR = 10.0
BURN_IN_RELAXATIONS = 10.0


def _start_and_guard(p: ModelParams, cfg: TrajectoryConfig, allow_unstable: bool) -> tuple[float, float, float]:
    """Initial displacement, guard center and guard radius."""
    try:
        window = phase_window(p, MIN_PADDING_SIGMAS)
    except (NoStableEquilibriumError, NegativeDampingError):
        if not allow_unstable:
            raise
        eq = equilibrium_positions(p)
        u_start = eq.minima[0].u if eq.minima else 0.0
        u0 = u_start if cfg.u0 is None else cfg.u0
        reach = max(1.0, abs(u0), abs(cfg.w0), 2.0 * math.sqrt(p.kappa * p.n_max))
        return u0, u0, GUARD_FACTOR * reach

    if cfg.u0 is None:
        # phase_window has already checked that a damped minimum exists
        u0 = equilibrium_positions(p).deepest_usable().u
    else:
        u0 = cfg.u0
    return u0, window.mean_u, GUARD_FACTOR * window.half_width_u


def _check_burn_in(p: ModelParams, cfg: TrajectoryConfig, u0: float) -> None:
    gamma = float(total_damping(u0, p))
    if gamma > 0 and cfg.burn_in * cfg.dt < BURN_IN_RELAXATIONS / gamma:
        warnings.warn(
            f"Burn-in {cfg.burn_in * cfg.dt:.3g} is shorter than {BURN_IN_RELAXATIONS:g}/Gamma_tot = "
            f"{BURN_IN_RELAXATIONS / gamma:.3g}",
            PremiseWarning,
            stacklevel=3,
        )


def _run_batch(
    p: ModelParams,
    cfg: TrajectoryConfig,
    rngs: list[np.random.Generator],
    first_index: int,
    u0: float,
    center: float,
    guard: float,
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    size = len(rngs)
    u = np.full(size, u0, dtype=float)
    w = np.full(size, cfg.w0, dtype=float)
    out_u = np.empty((size, cfg.samples_per_trajectory))
    out_w = np.empty_like(out_u)
    sqrt_dt = math.sqrt(cfg.dt)

    total = cfg.burn_in + cfg.samples_per_trajectory * cfg.stride
    step = 0
    while step < total:
        length = min(cfg.chunk, total - step)
        noise = np.stack([rng.standard_normal(length) for rng in rngs])
        for j in range(length):
            drift = 2.0 * np.asarray(static_force(u, p)) - np.asarray(total_damping(u, p)) * w
            spread = np.sqrt(np.asarray(total_diffusion(u, p)))
            w = w + cfg.dt * drift + sqrt_dt * spread * noise[:, j]
            u = u + cfg.dt * w
            recorded = step + j - cfg.burn_in + 1
            if recorded > 0 and recorded % cfg.stride == 0:
                slot = recorded // cfg.stride - 1
                out_u[:, slot] = u
                out_w[:, slot] = w
        step += length

        escaped = np.flatnonzero(~(np.abs(u - center) <= guard))
        if escaped.size:
            raise DivergenceError(
                f"Trajectory {first_index + int(escaped[0])} left |u - {center:.4g}| <= {guard:.4g} "
                f"by t = {step * cfg.dt:.4g}"
            )
    return out_u, out_w


def simulate(
    p: ModelParams,
    cfg: TrajectoryConfig,
    allow_unstable: bool = False,
    jobs: int = settings.JOBS,
) -> TrajectoryEnsemble:
    """
    Integrate ``cfg.n_trajectories`` independent trajectories of ``p``.

    Trajectory i draws its noise from the i-th child of SeedSequence(cfg.seed),
    so the sample stream is bit-identical for a fixed config whatever ``jobs`` is.

    Raises:
        NoStableEquilibriumError: If no damped stable minimum exists and ``allow_unstable`` is False
        DivergenceError: If a trajectory leaves ten window half-widths around the window center
    """
    u0, center, guard = _start_and_guard(p, cfg, allow_unstable)
    _check_burn_in(p, cfg, u0)

    children = np.random.SeedSequence(cfg.seed).spawn(cfg.n_trajectories)
    rngs = [np.random.default_rng(child) for child in children]
    starts = list(range(0, cfg.n_trajectories, cfg.batch_size))

    u_rows: list[NDArray] = [np.empty(0)] * len(starts)
    w_rows: list[NDArray] = [np.empty(0)] * len(starts)
    logger.info("Simulating trajectories", n=cfg.n_trajectories, steps=cfg.steps, dt=cfg.dt, batches=len(starts))
    with ThreadPoolExecutor(max_workers=max(1, jobs)) as executor:
        future_to_index = {
            executor.submit(_run_batch, p, cfg, rngs[s : s + cfg.batch_size], s, u0, center, guard): index
            for index, s in enumerate(starts)
        }
        for future in as_completed(future_to_index):
            index = future_to_index[future]
            u_rows[index], w_rows[index] = future.result()

    ensemble = TrajectoryEnsemble(
        u=np.vstack(u_rows),
        w=np.vstack(w_rows),
        sample_interval=cfg.sample_interval,
        stride=cfg.stride,
        dt=cfg.dt,
    )
    logger.info("Trajectories done", samples=ensemble.total_samples, mean_u=round(float(ensemble.u.mean()), 6))
    return ensemble
