"""Estimators that turn trajectory samples into spectra and distributions."""

import math

import numpy as np
import pandas as pd
from numpy.typing import ArrayLike, NDArray
from scipy import signal, stats

from core.config import settings
from core.errors import InsufficientDataError
from omfp_spectra import SpectrumSeries

DEFAULT_SEGMENT = 4096


def periodogram(
    samples: ArrayLike,
    dt: float,
    window: str = "hann",
    nperseg: int | None = None,
    min_samples: int = settings.LANGEVIN_MIN_SAMPLES,
) -> SpectrumSeries:
    """
    Welch estimate of the two-sided displacement spectrum at omega = 2*pi*f > 0.

    ``samples`` is one series or one row per trajectory; each row is centered
    and the per-row estimates are averaged. The one-sided density in 1/Hz is
    halved to match the convention of the resolvent spectra.

    Raises:
        InsufficientDataError: If fewer than ``min_samples`` samples are given in total
    """
    rows = np.atleast_2d(np.asarray(samples, dtype=float))
    if rows.size < min_samples:
        raise InsufficientDataError(f"Periodogram needs at least {min_samples} samples, got {rows.size}")
    segment = min(rows.shape[1], nperseg or DEFAULT_SEGMENT)
    frequencies, density = signal.welch(
        rows - rows.mean(axis=1, keepdims=True),
        fs=1.0 / dt,
        window=window,
        nperseg=segment,
        detrend=False,
        return_onesided=True,
        scaling="density",
        axis=-1,
    )
    spectrum = 0.5 * density.mean(axis=0)
    positive = frequencies > 0
    return SpectrumSeries(omegas=2.0 * math.pi * frequencies[positive], values=spectrum[positive], label="oracle")


def histogram(samples: ArrayLike, bins: int = 100, value_range: tuple[float, float] | None = None) -> pd.DataFrame:
    """Normalized histogram as a (center, density) table."""
    density, edges = np.histogram(np.ravel(samples), bins=bins, range=value_range, density=True)
    return pd.DataFrame({"center": 0.5 * (edges[:-1] + edges[1:]), "density": density})


def _cell_cdf(nodes: NDArray[np.float64], marginal: NDArray[np.float64]):
    h = float(nodes[1] - nodes[0])
    edges = np.concatenate([[nodes[0] - 0.5 * h], nodes + 0.5 * h])
    cumulative = np.concatenate([[0.0], np.cumsum(marginal * h)])
    cumulative /= cumulative[-1]
    return lambda x: np.interp(x, edges, cumulative)


def ks_distance(samples: ArrayLike, nodes: ArrayLike, marginal: ArrayLike) -> float:
    """Kolmogorov-Smirnov distance between samples and a cell-centered density on uniform ``nodes``."""
    cdf = _cell_cdf(np.asarray(nodes, dtype=float), np.asarray(marginal, dtype=float))
    return float(stats.kstest(np.ravel(samples), cdf).statistic)


def ks_distance_gaussian(samples: ArrayLike, mean: float, variance: float) -> float:
    return float(stats.kstest(np.ravel(samples), "norm", args=(mean, math.sqrt(variance))).statistic)
