"""Configuration and sample containers of the trajectory oracle."""

import math
from dataclasses import dataclass

import numpy as np
import pandas as pd
from numpy.typing import NDArray

from core.config import settings
from core.errors import ImproperlyConfigured

MAX_DT = 0.01


@dataclass(frozen=True)
class TrajectoryConfig:
    """Step size, lengths and seeding of a trajectory ensemble; times in 1/Omega_m."""

    dt: float = settings.LANGEVIN_DT
    steps: int = 200_000
    """Recorded steps per trajectory, after burn-in."""

    burn_in: int = 20_000
    seed: int = settings.SEED
    n_trajectories: int = 8
    stride: int = 10
    """Keep every ``stride``-th recorded step."""

    batch_size: int = 16
    """Trajectories advanced together in one vectorized worker."""

    chunk: int = 4096
    """Noise draws per trajectory per refill."""

    u0: float | None = None
    """Initial displacement; the deepest damped minimum when None."""

    w0: float = 0.0

    def __post_init__(self) -> None:
        if not 0 < self.dt <= MAX_DT:
            raise ImproperlyConfigured(f"dt must lie in (0, {MAX_DT}], got {self.dt}")
        for name in ("steps", "n_trajectories", "stride", "batch_size", "chunk"):
            if getattr(self, name) < 1:
                raise ImproperlyConfigured(f"{name} must be >= 1, got {getattr(self, name)}")
        if self.burn_in < 0:
            raise ImproperlyConfigured(f"burn_in must be >= 0, got {self.burn_in}")
        if self.steps < self.stride:
            raise ImproperlyConfigured("steps must be at least one stride long")

    @property
    def samples_per_trajectory(self) -> int:
        return self.steps // self.stride

    @property
    def sample_interval(self) -> float:
        return self.dt * self.stride


@dataclass
class TrajectoryEnsemble:
    """Post burn-in samples, one row per trajectory."""

    u: NDArray[np.float64]
    w: NDArray[np.float64]
    sample_interval: float
    stride: int
    dt: float

    def __post_init__(self) -> None:
        self.u = np.atleast_2d(np.asarray(self.u, dtype=float))
        self.w = np.atleast_2d(np.asarray(self.w, dtype=float))
        if self.u.shape != self.w.shape:
            raise ValueError("u and w samples must have the same shape")

    @property
    def n_trajectories(self) -> int:
        return self.u.shape[0]

    @property
    def n_samples(self) -> int:
        return self.u.shape[1]

    @property
    def total_samples(self) -> int:
        return self.u.size

    def mean_w_standard_error(self) -> tuple[float, float]:
        """Ensemble mean of w and its standard error from the per-trajectory means."""
        per_trajectory = self.w.mean(axis=1)
        mean = float(per_trajectory.mean())
        if self.n_trajectories < 2:
            return mean, math.inf
        return mean, float(per_trajectory.std(ddof=1) / math.sqrt(self.n_trajectories))

    def to_frame(self) -> pd.DataFrame:
        trajectory, index = np.meshgrid(np.arange(self.n_trajectories), np.arange(self.n_samples), indexing="ij")
        return pd.DataFrame(
            {
                "trajectory": trajectory.ravel(),
                "t": index.ravel() * self.sample_interval,
                "u": self.u.ravel(),
                "w": self.w.ravel(),
            }
        )
