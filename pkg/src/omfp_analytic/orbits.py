"""Fixed-energy orbits of H = p**2/2 + mu*x**2 + nu*x**4.

With x = x_max*sin(theta) the period integral reduces to a complete elliptic
integral of negative parameter -nu~, where nu~ = nu*x_max**4/E. The same
substitution removes the square-root endpoint singularity from the Fourier
integrals, so both are smooth quadratures in theta.
"""

import math

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.integrate import quad
from scipy.special import ellipkinc

from core.config import settings
from core.errors import DomainError, SolverError
from omfp_analytic.elliptic import complete_elliptic_K
from omfp_analytic.models import AnharmonicPotential

_QUAD_EPSABS = 1e-12
_QUAD_EPSREL = 1e-10
_QUAD_LIMIT = 200


def _check_energy(energy: float) -> None:
    if not energy > 0 or not math.isfinite(energy):
        raise DomainError(f"Orbit energy must be positive and finite, got {energy}")


def turning_point(energy: float, pot: AnharmonicPotential) -> float:
    """Positive root of mu*x**2 + nu*x**4 = E."""
    _check_energy(energy)
    return math.sqrt(2.0 * energy / (pot.mu + math.sqrt(pot.mu**2 + 4.0 * pot.nu * energy)))


def scaled_coefficients(energy: float, pot: AnharmonicPotential) -> tuple[float, float]:
    """(mu~, nu~) = (mu x_max**2 / E, nu x_max**4 / E); they sum to one."""
    x_max = turning_point(energy, pot)
    return pot.mu * x_max**2 / energy, pot.nu * x_max**4 / energy


def oscillation_frequency(energy: float, pot: AnharmonicPotential) -> float:
    """
    Angular frequency omega(E) = pi*sqrt(2E) / (2 x_max K(-nu~)).

    Tends to sqrt(2 mu) as nu*E/mu**2 -> 0, and to a multiple of (E nu)**(1/4)
    for mu = 0; neither limit needs special casing.
    """
    x_max = turning_point(energy, pot)
    _, nu_s = scaled_coefficients(energy, pot)
    return math.pi * math.sqrt(2.0 * energy) / (2.0 * x_max * complete_elliptic_K(-nu_s))


def frequency_derivative(energy: float, pot: AnharmonicPotential, exact: bool = False) -> float:
    """
    d omega / dE.

    The default neglects the energy dependence of the elliptic integral,
    (pi / 2K) sqrt(mu) nu / (mu**2 C sqrt(C + 1)) with C = sqrt(1 + 4 E nu / mu**2),
    which is exact for the pure quartic. ``exact=True`` returns a central
    difference of :func:`oscillation_frequency` instead.
    """
    _check_energy(energy)
    if exact:
        step = 1e-5 * energy
        return (oscillation_frequency(energy + step, pot) - oscillation_frequency(energy - step, pot)) / (2.0 * step)
    if pot.is_pure_quartic:
        return oscillation_frequency(energy, pot) / (4.0 * energy)
    _, nu_s = scaled_coefficients(energy, pot)
    c = math.sqrt(1.0 + 4.0 * energy * pot.nu / pot.mu**2)
    k = complete_elliptic_K(-nu_s)
    return (math.pi / (2.0 * k)) * math.sqrt(pot.mu) * pot.nu / (pot.mu**2 * c * math.sqrt(c + 1.0))


def _checked_quad(integrand, a: float, b: float, what: str, **options) -> float:
    result = quad(
        integrand, a, b, epsabs=_QUAD_EPSABS, epsrel=_QUAD_EPSREL, limit=_QUAD_LIMIT, full_output=1, **options
    )
    if len(result) > 3:
        raise SolverError(f"Quadrature for {what} did not converge (error estimate {result[1]:.3e}): {result[3]}")
    return float(result[0])


def orbit_fourier_coefficients(
    energy: float, pot: AnharmonicPotential, harmonic_cap: int = settings.HARMONIC_CAP
) -> dict[int, float]:
    """
    Fourier coefficients x_n(E), n = 1..harmonic_cap, of the orbit started at -x_max.

    The orbit is x(t) = sum over n of 2 x_n cos(n omega t). Quarter-wave
    symmetry makes every even coefficient vanish; those are returned as 0.0.

    Raises:
        SolverError: If a quadrature does not converge
    """
    x_max = turning_point(energy, pot)
    _, nu_s = scaled_coefficients(energy, pot)
    k = complete_elliptic_K(-nu_s)

    coefficients: dict[int, float] = {}
    for n in range(1, harmonic_cap + 1):
        if n % 2 == 0:
            coefficients[n] = 0.0
            continue

        def integrand(theta: float, n: int = n) -> float:
            phase = 0.5 * n * math.pi * (1.0 + float(ellipkinc(theta, -nu_s)) / k)
            return math.sin(theta) * math.cos(phase) / math.sqrt(1.0 + nu_s * math.sin(theta) ** 2)

        coefficients[n] = x_max / k * _checked_quad(integrand, 0.0, 0.5 * math.pi, f"harmonic {n}")
    return coefficients


def resynthesize_orbit(
    energy: float,
    pot: AnharmonicPotential,
    times: ArrayLike,
    harmonic_cap: int = settings.HARMONIC_CAP,
) -> NDArray[np.float64]:
    """x(t) rebuilt from the truncated Fourier series, t = 0 at the left turning point."""
    omega = oscillation_frequency(energy, pot)
    t = np.asarray(times, dtype=float)
    x = np.zeros_like(t)
    for n, coefficient in orbit_fourier_coefficients(energy, pot, harmonic_cap).items():
        if coefficient:
            x += 2.0 * coefficient * np.cos(n * omega * t)
    return x


def period_by_quadrature(energy: float, pot: AnharmonicPotential) -> float:
    """
    Period 4 * integral of dx / sqrt(2 (E - V)) over [0, x_max], without elliptic functions.

    E - V = (x_max - x)(x_max + x)(mu + nu (x_max**2 + x**2)) exactly, so the
    endpoint singularity goes to the algebraic weight of QUADPACK.
    """
    x_max = turning_point(energy, pot)

    def regular_part(x: float) -> float:
        return 1.0 / math.sqrt(2.0 * (x_max + x) * (pot.mu + pot.nu * (x_max**2 + x * x)))

    return 4.0 * _checked_quad(regular_part, 0.0, x_max, "period", weight="alg", wvar=(0.0, -0.5))
