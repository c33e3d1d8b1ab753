"""Correlation spectra from shifted solves with the generator."""

from concurrent.futures import ThreadPoolExecutor, as_completed

import numpy as np
import scipy.sparse as sp
from numpy.typing import ArrayLike, NDArray
from scipy.sparse.linalg import splu, spsolve

from core.logger_utils import get_logger
from omfp_fokker_planck import Generator, StationaryState
from omfp_spectra.models import Observable, SpectrumSeries

logger = get_logger(__name__)


def _shifted_value(
    matrix: sp.csc_matrix, identity: sp.csc_matrix, omega: float, a: NDArray, v: NDArray
) -> float:
    lu = splu((matrix + 1j * omega * identity).tocsc())
    x = lu.solve(v)
    return float(-2.0 * np.real(np.dot(a, x)))


def resolvent_spectrum(
    generator: Generator,
    st: StationaryState,
    a_obs: Observable,
    b_obs: Observable,
    omegas: ArrayLike,
    jobs: int = 1,
    label: str = "",
) -> SpectrumSeries:
    """
    S(omega) = -2 Re[ A^T (L + i omega)^-1 (B * P) ] for centered A and B.

    P are the stationary cell masses, so S integrates to 2*pi*<A B> over the
    real line. Each frequency is an independent complex sparse LU solve; a
    failure leaves a NaN at that sample and is listed in ``failed``.
    """
    omegas = np.asarray(omegas, dtype=float)
    a = a_obs.centered(st).values
    v = b_obs.centered(st).values * st.masses
    matrix = generator.matrix.tocsc().astype(complex)
    identity = sp.identity(generator.dimension, dtype=complex, format="csc")

    values = np.full(omegas.size, np.nan)
    failed: list[int] = []
    with ThreadPoolExecutor(max_workers=max(1, jobs)) as executor:
        future_to_index = {
            executor.submit(_shifted_value, matrix, identity, float(omega), a, v): index
            for index, omega in enumerate(omegas)
        }
        for future in as_completed(future_to_index):
            index = future_to_index[future]
            try:
                values[index] = future.result()
            except RuntimeError as exc:
                logger.warning("Shifted solve failed", omega=float(omegas[index]), error=str(exc))
                failed.append(index)
            if not np.isfinite(values[index]) and index not in failed:
                failed.append(index)

    logger.debug("Resolvent spectrum computed", samples=int(omegas.size), failed=len(failed))
    return SpectrumSeries(omegas=omegas, values=values, failed=sorted(failed), label=label)


def real_pair_spectrum(
    generator: Generator, st: StationaryState, a_obs: Observable, b_obs: Observable, omegas: ArrayLike
) -> NDArray[np.float64]:
    """
    Real-arithmetic form -2 A^T L (L**2 + omega**2)^-1 (B * P) for real observables.

    Used to cross-check :func:`resolvent_spectrum`.
    """
    a = np.real(a_obs.centered(st).values)
    v = np.real(b_obs.centered(st).values) * st.masses
    matrix = generator.matrix.tocsc()
    square = (matrix @ matrix).tocsc()
    identity = sp.identity(generator.dimension, format="csc")
    out = []
    for omega in np.asarray(omegas, dtype=float):
        y = spsolve((square + omega**2 * identity).tocsc(), v)
        out.append(-2.0 * float(np.dot(a, matrix @ y)))
    return np.asarray(out)


def symmetric_midpoints(omega_max: float, points: int) -> NDArray[np.float64]:
    """Midpoint nodes of an even partition of [-omega_max, omega_max]; omega = 0 is never a node."""
    points += points % 2
    step = 2.0 * omega_max / points
    return -omega_max + step * (np.arange(points) + 0.5)
