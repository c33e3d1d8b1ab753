"""Spectral series and grid observables."""

from collections.abc import Callable
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
import pandas as pd
from numpy.typing import ArrayLike, NDArray
from scipy.integrate import trapezoid

from omfp_fokker_planck import PhaseGrid, StationaryState


class PopulationStatus(str, Enum):
    STABLE = "stable"
    UNSTABLE = "unstable"


@dataclass
class SpectrumSeries:
    """Sampled spectral density, plus an optional delta-peak weight at omega = 0."""

    omegas: NDArray[np.float64]
    values: NDArray[np.float64]
    coherent_weight: float | None = None
    failed: list[int] = field(default_factory=list)
    """Indices whose solve failed; their values are NaN."""

    label: str = ""

    def __post_init__(self) -> None:
        self.omegas = np.asarray(self.omegas, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.omegas.shape != self.values.shape:
            raise ValueError("omegas and values must have the same shape")
        if self.omegas.size > 1 and not np.all(np.diff(self.omegas) > 0):
            raise ValueError("omegas must be strictly increasing")

    def peak(self, refine: bool = False) -> tuple[float, float]:
        """
        (omega, value) of the largest finite sample.

        With ``refine`` the vertex of the parabola through the sample and its two
        neighbors is returned instead, when both neighbors are finite.
        """
        index = int(np.nanargmax(self.values))
        omega, top = float(self.omegas[index]), float(self.values[index])
        if not refine or index == 0 or index == self.values.size - 1:
            return omega, top
        x = self.omegas[index - 1 : index + 2]
        y = self.values[index - 1 : index + 2]
        if not np.all(np.isfinite(y)):
            return omega, top
        a, b, c = np.polyfit(x - omega, y, 2)
        if a >= 0:
            return omega, top
        offset = -b / (2.0 * a)
        return omega + float(offset), float(c - b * b / (4.0 * a))

    def fwhm(self) -> float:
        """
        Full width at half maximum of the main peak, linearly interpolated.

        Returns NaN when the half-maximum level is not crossed on both sides.
        """
        values = np.nan_to_num(self.values, nan=-np.inf)
        index = int(np.argmax(values))
        half = 0.5 * values[index]
        left = index
        while left > 0 and values[left] > half:
            left -= 1
        right = index
        while right < values.size - 1 and values[right] > half:
            right += 1
        if values[left] > half or values[right] > half:
            return float("nan")

        def crossing(k0: int, k1: int) -> float:
            v0, v1 = values[k0], values[k1]
            return float(self.omegas[k0] + (half - v0) * (self.omegas[k1] - self.omegas[k0]) / (v1 - v0))

        return crossing(right - 1, right) - crossing(left, left + 1)

    def integrated(self) -> float:
        """Trapezoid integral over the sampled range, skipping failed samples."""
        finite = np.isfinite(self.values)
        return float(trapezoid(self.values[finite], self.omegas[finite]))

    def normalized(self) -> "SpectrumSeries":
        """Copy scaled to unit peak."""
        _, top = self.peak()
        return SpectrumSeries(
            self.omegas.copy(), self.values / top, self.coherent_weight, list(self.failed), self.label
        )

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"omega": self.omegas, "value": self.values})


@dataclass
class Observable:
    """Position-only function sampled on the grid cells, flat in generator ordering."""

    values: NDArray[np.complex128]
    name: str = ""

    @classmethod
    def from_function(
        cls, grid: PhaseGrid, fn: Callable[[NDArray[np.float64]], ArrayLike], name: str = ""
    ) -> "Observable":
        column = np.asarray(fn(grid.u_nodes))
        return cls(values=np.repeat(column.astype(complex), grid.n_w), name=name)

    @classmethod
    def displacement(cls, grid: PhaseGrid) -> "Observable":
        return cls.from_function(grid, lambda u: u, name="u")

    def mean(self, state: StationaryState) -> complex:
        return complex(state.expectation(self.values))

    def centered(self, state: StationaryState) -> "Observable":
        """Copy with zero mean under ``state``."""
        return Observable(values=self.values - self.mean(state), name=self.name)

    def conjugate(self) -> "Observable":
        return Observable(values=np.conj(self.values), name=f"conj({self.name})")


@dataclass(frozen=True)
class PopulationSample:
    """One point of a cavity population sweep."""

    delta: float
    population: float
    coherent: float
    incoherent: float
    status: PopulationStatus = PopulationStatus.STABLE
    equilibrium: float = float("nan")
    """Noise-free population at the deepest damped minimum."""
