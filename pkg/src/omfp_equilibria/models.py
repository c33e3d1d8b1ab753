"""Domain types for the static equilibrium problem."""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np
import pandas as pd
from numpy.typing import NDArray


class RootStability(str, Enum):
    """Shape of the effective potential at an equilibrium."""

    STABLE_MINIMUM = "stable-minimum"
    UNSTABLE_MAXIMUM = "unstable-maximum"


class Dynamics(str, Enum):
    """Sign of the total damping at an equilibrium."""

    DAMPED = "damped"
    SELF_OSCILLATING = "self-oscillating"


@dataclass(frozen=True)
class Equilibrium:
    """One root of the static force balance."""

    delta_prime: float
    u: float
    potential: float
    curvature: float
    stability: RootStability
    dynamics: Dynamics

    @property
    def is_usable(self) -> bool:
        """Stable minimum with positive total damping."""
        return self.stability is RootStability.STABLE_MINIMUM and self.dynamics is Dynamics.DAMPED


@dataclass(frozen=True)
class EquilibriumSet:
    """All equilibria of one parameter point, sorted by effective detuning."""

    equilibria: tuple[Equilibrium, ...]

    def __post_init__(self) -> None:
        if len(self.equilibria) not in (1, 3):
            raise ValueError(f"Expected one or three equilibria, got {len(self.equilibria)}")

    @property
    def roots(self) -> list[float]:
        return [eq.delta_prime for eq in self.equilibria]

    @property
    def displacements(self) -> list[float]:
        return [eq.u for eq in self.equilibria]

    @property
    def stability(self) -> list[RootStability]:
        return [eq.stability for eq in self.equilibria]

    @property
    def dynamical(self) -> list[Dynamics]:
        return [eq.dynamics for eq in self.equilibria]

    @property
    def is_bistable(self) -> bool:
        return len(self.equilibria) == 3

    @property
    def minima(self) -> list[Equilibrium]:
        return [eq for eq in self.equilibria if eq.stability is RootStability.STABLE_MINIMUM]

    @property
    def stable_roots(self) -> list[float]:
        """Displacements of the stable minima."""
        return [eq.u for eq in self.minima]

    @property
    def usable(self) -> list[Equilibrium]:
        return [eq for eq in self.equilibria if eq.is_usable]

    def global_minimum(self) -> Equilibrium:
        """Deepest stable minimum, regardless of its damping."""
        return min(self.minima, key=lambda eq: eq.potential)

    def deepest_usable(self) -> Equilibrium | None:
        """Deepest damped stable minimum, None when every minimum self-oscillates."""
        usable = self.usable
        return min(usable, key=lambda eq: eq.potential) if usable else None


@dataclass(frozen=True)
class RenormalizedFrequency:
    """Harmonic frequency of the well(s) on the tuning line."""

    value: float
    n_tilde: float
    at_quartic_point: bool = False


@dataclass
class RegionMap:
    """Bistability and dynamical-instability classification over (n_max, Delta)."""

    n_max_axis: NDArray[np.float64]
    delta_axis: NDArray[np.float64]
    q_values: list[float]
    bistable: NDArray[np.bool_]
    """Shape (len(n_max_axis), len(delta_axis))."""

    unstable: NDArray[np.bool_] = field(default_factory=lambda: np.zeros((0, 0, 0), dtype=bool))
    """Shape (len(q_values), len(n_max_axis), len(delta_axis))."""

    @staticmethod
    def column_for(q: float) -> str:
        return f"unstable_q{q:g}"

    def to_frame(self) -> pd.DataFrame:
        """Long table, one row per cell, Delta varying fastest."""
        n_grid, d_grid = np.meshgrid(self.n_max_axis, self.delta_axis, indexing="ij")
        data: dict[str, NDArray] = {
            "n_max": n_grid.ravel(),
            "delta": d_grid.ravel(),
            "bistable": self.bistable.ravel(),
        }
        for index, q in enumerate(self.q_values):
            data[self.column_for(q)] = self.unstable[index].ravel()
        return pd.DataFrame(data)

    def smallest_unstable_n_max(self, q: float) -> float | None:
        """Lowest drive on the axis with at least one unstable cell at quality factor ``q``."""
        index = self.q_values.index(q)
        rows = np.flatnonzero(self.unstable[index].any(axis=1))
        return float(self.n_max_axis[rows[0]]) if rows.size else None
