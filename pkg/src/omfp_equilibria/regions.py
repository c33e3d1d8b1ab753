"""Bistability and dynamical-instability maps over (n_max, Delta)."""

from concurrent.futures import ThreadPoolExecutor, as_completed

import numpy as np
from numpy.typing import ArrayLike, NDArray

from core.errors import ImproperlyConfigured
from core.logger_utils import get_logger
from omfp_equilibria.models import RegionMap
from omfp_equilibria.roots import equilibrium_detunings
from omfp_model import ModelParams

logger = get_logger(__name__)


def _validate_axis(name: str, axis: NDArray[np.float64]) -> None:
    if axis.ndim != 1 or axis.size == 0:
        raise ImproperlyConfigured(f"Axis {name} must be a nonempty 1-d sequence")
    if not np.all(np.isfinite(axis)):
        raise ImproperlyConfigured(f"Axis {name} has non-finite entries")
    if axis.size > 1:
        steps = np.diff(axis)
        if not (np.all(steps > 0) or np.all(steps < 0)):
            raise ImproperlyConfigured(f"Axis {name} is not strictly monotone")


def _classify_row(
    p: ModelParams, n_max: float, delta_axis: NDArray[np.float64], q_values: list[float]
) -> tuple[NDArray[np.bool_], NDArray[np.bool_]]:
    """Classify one n_max row of cells."""
    kappa, g0_sq = p.kappa, p.g0**2
    half_sq = 0.25 * kappa * kappa
    bistable = np.zeros(delta_axis.size, dtype=bool)
    unstable = np.zeros((len(q_values), delta_axis.size), dtype=bool)
    gamma_m = np.array([1.0 / q for q in q_values])

    for column, delta in enumerate(delta_axis):
        roots = equilibrium_detunings(float(delta), kappa, p.lam * n_max)
        denom = roots**2 + half_sq
        n = n_max * half_sq / denom
        gamma_opt = -4.0 * g0_sq * roots * kappa * n / denom**2
        if roots.size == 3:
            bistable[column] = True
            # outer roots are the minima
            minima = gamma_opt[[0, 2]]
        else:
            minima = gamma_opt
        if gamma_m.size:
            unstable[:, column] = (gamma_m[:, None] + minima[None, :] < 0).any(axis=1)
    return bistable, unstable


def stability_region_map(
    p: ModelParams,
    n_max_axis: ArrayLike,
    delta_axis: ArrayLike,
    q_values: ArrayLike = (),
    jobs: int = 1,
) -> RegionMap:
    """
    Classify every (n_max, Delta) cell.

    A cell is bistable when the force balance has three roots, and unstable at
    quality factor Q when Gamma_m = 1/Q plus Gamma_opt is negative at any
    stable minimum. Rows are independent and may run on a thread pool; the
    assembly order is fixed by the axes.

    Args:
        p: Base parameters (kappa and lambda are used)
        n_max_axis: Drive samples
        delta_axis: Detuning samples in units of Omega_m
        q_values: Mechanical quality factors for the instability overlay
        jobs: Worker threads

    Returns:
        The assembled RegionMap
    """
    n_axis = np.asarray(n_max_axis, dtype=float)
    d_axis = np.asarray(delta_axis, dtype=float)
    _validate_axis("n_max", n_axis)
    _validate_axis("delta", d_axis)
    if np.any(n_axis < 0):
        raise ImproperlyConfigured("Axis n_max must be nonnegative")
    qs = [float(q) for q in np.atleast_1d(np.asarray(q_values, dtype=float))]
    if any(q <= 0 for q in qs):
        raise ImproperlyConfigured("Quality factors must be positive")

    bistable = np.zeros((n_axis.size, d_axis.size), dtype=bool)
    unstable = np.zeros((len(qs), n_axis.size, d_axis.size), dtype=bool)

    with ThreadPoolExecutor(max_workers=max(1, jobs)) as executor:
        future_to_row = {
            executor.submit(_classify_row, p, float(n), d_axis, qs): row for row, n in enumerate(n_axis)
        }
        for future in as_completed(future_to_row):
            row = future_to_row[future]
            bistable[row], unstable[:, row] = future.result()

    logger.info(
        "Region map classified",
        cells=int(bistable.size),
        bistable_cells=int(bistable.sum()),
        q_values=qs,
    )
    return RegionMap(n_max_axis=n_axis, delta_axis=d_axis, q_values=qs, bistable=bistable, unstable=unstable)
