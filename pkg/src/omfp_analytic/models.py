"""Domain types of the dissipationless anharmonic oscillator."""

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from core.errors import PreconditionError


@dataclass(frozen=True)
class AnharmonicPotential:
    """
    V(x) = offset + mu*x**2 + nu*x**4 for a unit mass with H = p**2/2 + V.

    Energies passed to the orbit functions are measured from the well bottom;
    ``offset`` only enters the Gibbs weights, where it cancels.
    """

    mu: float
    nu: float
    t_eff: float = 1.0
    offset: float = 0.0

    def __post_init__(self) -> None:
        if not self.nu > 0:
            raise PreconditionError(f"nu must be positive, got {self.nu}")
        if self.mu < 0:
            raise PreconditionError(f"Double-well potentials (mu={self.mu}) are not supported")
        if not self.t_eff > 0 or not math.isfinite(self.t_eff):
            raise PreconditionError(f"t_eff must be positive and finite, got {self.t_eff}")

    @property
    def is_pure_quartic(self) -> bool:
        return self.mu == 0

    @property
    def harmonic_frequency(self) -> float:
        """Small-amplitude limit sqrt(2 mu)."""
        return math.sqrt(2.0 * self.mu)

    def potential(self, x: ArrayLike) -> float | np.ndarray:
        x = np.asarray(x, dtype=float)
        value = self.offset + self.mu * x**2 + self.nu * x**4
        return float(value) if value.ndim == 0 else value


@dataclass(frozen=True)
class QuarticConstants:
    """Parameter-free numbers of the pure-quartic spectrum."""

    k_minus_one: float
    gamma_five_quarters: float
    zeta: dict[int, float]
    """Normalized odd Fourier coefficients x_n / x_max."""

    upsilon: float
    delta_2: float
    """Width of x*exp(1 - x) at half maximum."""

    delta_4: float
    """Width of x**4*exp(1 - x**4) at half maximum."""

    @property
    def quality_factor(self) -> float:
        return 1.0 / self.delta_4
