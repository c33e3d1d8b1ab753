"""Dimensionless parameter set of the driven optomechanical cavity.

Units: hbar = m = Omega_m = 1. Displacements are u = x/x_zpf, momenta
w = p/(m Omega_m x_zpf), so the bare oscillator energy is (u**2 + w**2)/4.
Rates and detunings are in units of Omega_m, temperatures in hbar*Omega_m/k_B.
"""

import math
import warnings
from dataclasses import dataclass
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, model_validator

from core.errors import RegimeWarning

SQRT3 = math.sqrt(3.0)


class ModelParams(BaseModel):
    """Physical constants of one operating point."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    kappa: float = Field(default=100.0, gt=0)
    """Cavity decay rate."""

    gamma_m: float = Field(default=1e-3, ge=0)
    """Intrinsic mechanical damping."""

    lam: float = Field(default=0.01, ge=0, alias="lambda")
    """Single-photon parametric cooperativity 2 g0**2 / kappa. Zero decouples light and motion."""

    n_max: float = Field(default=0.0, ge=0)
    """Intracavity photon number on resonance."""

    delta: float = 0.0
    """Laser detuning, stored in units of Omega_m."""

    T_b: float = Field(default=10.0, ge=0)
    """Mechanical bath temperature."""

    n_th_a: float = Field(default=0.0, ge=0)
    """Photonic bath occupation. Carried, not used by the semiclassical reduction."""

    @model_validator(mode="after")
    def _warn_outside_bad_cavity(self) -> "ModelParams":
        if self.kappa < 10.0:
            warnings.warn(
                f"kappa={self.kappa:g} is not much larger than Omega_m; the adiabatic cavity reduction is poor",
                RegimeWarning,
                stacklevel=2,
            )
        return self

    @property
    def g0(self) -> float:
        return math.sqrt(self.lam * self.kappa / 2.0)

    @property
    def eps(self) -> float:
        return self.kappa * math.sqrt(self.n_max) / 2.0

    @property
    def n_max_star(self) -> float:
        return math.inf if self.lam == 0 else 4.0 / (3.0 * SQRT3 * self.lam)

    @property
    def delta_star(self) -> float:
        return -SQRT3 * self.kappa / 2.0

    @property
    def delta_prime_star(self) -> float:
        return -self.kappa / (2.0 * SQRT3)

    @property
    def n_tilde(self) -> float:
        """Drive relative to the quartic point."""
        return 0.0 if self.lam == 0 else self.n_max / self.n_max_star

    @property
    def delta_over_kappa(self) -> float:
        return self.delta / self.kappa

    def tuning_line_delta(self, n_max: float | None = None) -> float:
        """Detuning that keeps the steepest Lorentzian point an equilibrium."""
        n = self.n_max if n_max is None else n_max
        return self.delta_prime_star - 0.75 * self.kappa * self.lam * n

    def is_on_tuning_line(self, rtol: float = 1e-9) -> bool:
        return abs(self.delta - self.tuning_line_delta()) <= rtol * self.kappa

    def replace(self, **changes: Any) -> "ModelParams":
        """Validated copy with some fields changed."""
        data = self.model_dump()
        if "lambda" in changes:
            changes["lam"] = changes.pop("lambda")
        data.update(changes)
        return ModelParams(**data)

    @classmethod
    def from_kappa_units(cls, delta_over_kappa: float, **fields: Any) -> "ModelParams":
        """Build with the detuning given as a multiple of kappa."""
        kappa = fields.get("kappa", cls.model_fields["kappa"].default)
        return cls(delta=delta_over_kappa * kappa, **fields)

    @classmethod
    def on_tuning_line(cls, n_max: float, **fields: Any) -> "ModelParams":
        base = cls(n_max=n_max, **fields)
        return base.replace(delta=base.tuning_line_delta())

    @classmethod
    def at_quartic_point(cls, **fields: Any) -> "ModelParams":
        base = cls(**fields)
        return base.replace(n_max=base.n_max_star, delta=base.delta_star)


@dataclass(frozen=True)
class QuarticExpansion:
    """Coefficients of V/hbar = V0 + B*d**2 + C*d**4 with d = Delta' - Delta'*."""

    v0: float
    b: float
    c: float
    u_star: float
    """Displacement of the expansion point."""

    g0: float

    @property
    def quadratic_in_u(self) -> float:
        """Coefficient of (u - u*)**2."""
        return self.b * self.g0**2

    @property
    def quartic_in_u(self) -> float:
        """Coefficient of (u - u*)**4."""
        return self.c * self.g0**4
