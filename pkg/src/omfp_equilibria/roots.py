"""Equilibria of the static force balance and the tuning-line constants."""

import math

import numpy as np
from numpy.typing import NDArray

from core.errors import PreconditionError
from omfp_equilibria.models import (
    Dynamics,
    Equilibrium,
    EquilibriumSet,
    RenormalizedFrequency,
    RootStability,
)
from omfp_model import ModelParams, effective_potential, potential_curvature, total_damping

SQRT3 = math.sqrt(3.0)

# Roots closer than this (in units of kappa) are one degenerate root
MERGE_TOL = 1e-8
_DISC_TOL = 1e-14


def _residual(y: float, delta: float, kappa: float, lam_n: float) -> float:
    return (y - delta) * (1.0 + 4.0 * y * y / kappa**2) - lam_n * kappa


def _residual_slope(y: float, delta: float, kappa: float) -> float:
    return 1.0 + 4.0 * y * y / kappa**2 + (y - delta) * 8.0 * y / kappa**2


def equilibrium_detunings(delta: float, kappa: float, lam_n: float) -> NDArray[np.float64]:
    """
    Real roots Delta'_e of (Delta' - Delta) * (1 + (2 Delta'/kappa)**2) = lambda*kappa*n_max.

    Solved in closed form on the depressed cubic in s = Delta'/kappa, each root
    polished by Newton steps. A double root (tangency) collapses onto the
    simple root so that one or three roots are returned.

    Args:
        delta: Laser detuning
        kappa: Cavity decay rate
        lam_n: Product lambda * n_max

    Returns:
        Sorted roots in units of Omega_m
    """
    d = delta / kappa
    # s**3 - d s**2 + s/4 - (d + lam_n)/4 = 0
    a, b, c = -d, 0.25, -(d + lam_n) / 4.0
    p = b - a * a / 3.0
    q = 2.0 * a**3 / 27.0 - a * b / 3.0 + c
    shift = -a / 3.0
    disc = -(4.0 * p**3 + 27.0 * q * q)
    scale = 4.0 * abs(p) ** 3 + 27.0 * q * q + 1.0

    if disc > _DISC_TOL * scale:
        radius = 2.0 * math.sqrt(-p / 3.0)
        arg = (3.0 * q / (2.0 * p)) * math.sqrt(-3.0 / p)
        theta = math.acos(min(1.0, max(-1.0, arg))) / 3.0
        s_roots = [radius * math.cos(theta - 2.0 * math.pi * k / 3.0) + shift for k in range(3)]
    else:
        root_disc = math.sqrt(max(q * q / 4.0 + p**3 / 27.0, 0.0))
        t = float(np.cbrt(-q / 2.0 + root_disc) + np.cbrt(-q / 2.0 - root_disc))
        s_roots = [t + shift]

    polished = []
    for s in s_roots:
        y = s * kappa
        for _ in range(3):
            slope = _residual_slope(y, delta, kappa)
            if slope == 0:
                break
            y -= _residual(y, delta, kappa, lam_n) / slope
        polished.append(y)
    polished.sort()

    if len(polished) == 3:
        close_low = polished[1] - polished[0] <= MERGE_TOL * kappa
        close_high = polished[2] - polished[1] <= MERGE_TOL * kappa
        if close_low and close_high:
            polished = [polished[1]]
        elif close_low:
            polished = [polished[2]]
        elif close_high:
            polished = [polished[0]]
    return np.asarray(polished, dtype=float)


def equilibrium_positions(p: ModelParams) -> EquilibriumSet:
    """
    Classify every equilibrium of ``p``.

    Stability follows the sign of V''(u) at the root; the dynamical flag
    follows the sign of Gamma_m + Gamma_opt.
    """
    roots = equilibrium_detunings(p.delta, p.kappa, p.lam * p.n_max)
    single = roots.size == 1
    equilibria = []
    for y in roots:
        u = 0.0 if p.g0 == 0 else (y - p.delta) / p.g0
        curvature = float(potential_curvature(u, p))
        if single or curvature >= 0:
            stability = RootStability.STABLE_MINIMUM
        else:
            stability = RootStability.UNSTABLE_MAXIMUM
        dynamics = Dynamics.DAMPED if float(total_damping(u, p)) > 0 else Dynamics.SELF_OSCILLATING
        equilibria.append(
            Equilibrium(
                delta_prime=float(y),
                u=float(u),
                potential=float(effective_potential(u, p)),
                curvature=curvature,
                stability=stability,
                dynamics=dynamics,
            )
        )
    return EquilibriumSet(tuple(equilibria))


def tuning_line_detuning(n_max: float, p: ModelParams) -> float:
    """Detuning Delta'* - (3/4) kappa lambda n_max that pins the central root at Delta'*."""
    return p.tuning_line_delta(n_max)


def quartic_point(lam: float, kappa: float = 1.0) -> tuple[float, float]:
    """
    Drive and detuning at which the quadratic term of V_eff vanishes.

    Args:
        lam: Parametric cooperativity, > 0
        kappa: Cavity decay rate; the detuning scales with it

    Returns:
        (n_max*, Delta*) with Delta* in the units of ``kappa``
    """
    if lam <= 0:
        raise PreconditionError("Quartic point needs lambda > 0")
    return 4.0 / (3.0 * SQRT3 * lam), -SQRT3 * kappa / 2.0


def renormalized_frequency(n_max: float, p: ModelParams) -> RenormalizedFrequency:
    """
    Harmonic frequency of the well on the tuning line.

    sqrt(1 - n~) below the quartic point, sqrt(2 (n~ - 1)) in the double well above it.
    """
    if p.lam == 0:
        return RenormalizedFrequency(value=1.0, n_tilde=0.0)
    n_tilde = n_max / p.n_max_star
    if abs(n_tilde - 1.0) <= 1e-12:
        return RenormalizedFrequency(value=0.0, n_tilde=n_tilde, at_quartic_point=True)
    if n_tilde < 1.0:
        return RenormalizedFrequency(value=math.sqrt(1.0 - n_tilde), n_tilde=n_tilde)
    return RenormalizedFrequency(value=math.sqrt(2.0 * (n_tilde - 1.0)), n_tilde=n_tilde)


def instability_threshold(p: ModelParams, q: float) -> float:
    """Smallest n_max at which Gamma_opt can outweigh Gamma_m = 1/Q at some equilibrium."""
    if p.lam == 0:
        return math.inf
    return (27.0 * math.sqrt(5.0) / 500.0) * (p.kappa / p.g0) ** 2 / q
