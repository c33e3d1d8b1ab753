"""Dissipationless displacement spectra of the anharmonic well.

Every energy shell contributes lines at the harmonics n*omega(E) of its
orbit, weighted by the Gibbs measure at T_eff. Series are returned in the
units of the resolvent spectra (x_zpf**2 per Omega_m, u = sqrt(2) x).
"""

import math
import warnings
from concurrent.futures import ThreadPoolExecutor, as_completed
from functools import lru_cache

import numpy as np
from numpy.typing import ArrayLike
from scipy.integrate import quad
from scipy.optimize import brentq
from scipy.special import gamma

from core.config import settings
from core.errors import PreconditionError, PremiseWarning
from core.logger_utils import get_logger
from omfp_analytic.elliptic import complete_elliptic_K
from omfp_analytic.models import AnharmonicPotential, QuarticConstants
from omfp_analytic.orbits import frequency_derivative, orbit_fourier_coefficients, oscillation_frequency
from omfp_model import ModelParams, displacement_for_detuning, effective_temperature, quartic_expansion
from omfp_spectra import SpectrumSeries

logger = get_logger(__name__)

X_TO_U = 2.0
"""S_uu / S_xx."""

WEAK_PREMISE_LIMIT = 0.1
"""Largest <nu x**4> / <mu x**2> accepted without a warning."""

OPTICAL_T_OVER_KAPPA = 1.0 / (2.0 * math.sqrt(3.0))
"""T_eff / kappa at the quartic point when optical damping dominates."""

QUARTIC_POINT_ATOL = 1e-12
"""Quadratic coefficients this small are rounding noise at the quartic point."""


def _half_max_width(profile, peak: float, upper: float) -> float:
    level = 0.5 * profile(peak)
    low = brentq(lambda x: profile(x) - level, 1e-12, peak)
    high = brentq(lambda x: profile(x) - level, peak, upper)
    return high - low


@lru_cache(maxsize=1)
def quartic_constants() -> QuarticConstants:
    """Numbers shared by every pure-quartic spectrum; independent of all parameters."""
    k = complete_elliptic_K(-1.0)
    g = float(gamma(1.25))
    # E = nu = 1 puts the turning point at x = 1
    zeta = orbit_fourier_coefficients(1.0, AnharmonicPotential(mu=0.0, nu=1.0), settings.HARMONIC_CAP)
    return QuarticConstants(
        k_minus_one=k,
        gamma_five_quarters=g,
        zeta={n: value for n, value in zeta.items() if n % 2},
        upsilon=8.0 * math.sqrt(2.0 / math.pi) * k**2 / g,
        delta_2=_half_max_width(lambda x: x * math.exp(1.0 - x), 1.0, 20.0),
        delta_4=_half_max_width(lambda x: x**4 * math.exp(1.0 - x**4), 1.0, 3.0),
    )


def partition_function(pot: AnharmonicPotential) -> float:
    """Phase-space integral of exp(-H / T_eff) for unit mass."""
    t = pot.t_eff
    spatial, _ = quad(lambda x: math.exp(-(pot.mu * x * x + pot.nu * x**4) / t), 0.0, math.inf, epsrel=1e-11)
    return math.sqrt(2.0 * math.pi * t) * 2.0 * spatial * math.exp(-pot.offset / t)


def _shell_energy(target: float, pot: AnharmonicPotential) -> float | None:
    """Energy whose orbit frequency equals ``target``; None below the harmonic floor."""
    if pot.is_pure_quartic:
        c = math.pi * math.sqrt(2.0) / (2.0 * complete_elliptic_K(-1.0))
        return (target / c) ** 4 / pot.nu
    if target <= pot.harmonic_frequency:
        return None

    def mismatch(energy: float) -> float:
        return oscillation_frequency(energy, pot) - target

    low = 1e-12 * pot.mu**2 / pot.nu
    if mismatch(low) >= 0:
        return None
    high = max(pot.t_eff, low * 2.0)
    for _ in range(200):
        if mismatch(high) > 0:
            break
        high *= 2.0
    return brentq(mismatch, low, high, xtol=1e-14 * high, rtol=1e-13)


def _dissipationless_value(omega: float, pot: AnharmonicPotential, harmonics: tuple[int, ...], z: float) -> float:
    total = 0.0
    for n in harmonics:
        energy = _shell_energy(omega / n, pot)
        if energy is None or energy <= 0:
            continue
        weight = math.exp(-(energy + pot.offset) / pot.t_eff)
        if weight == 0.0:
            continue
        x_n = orbit_fourier_coefficients(energy, pot, n)[n]
        total += weight * x_n**2 / (omega * abs(frequency_derivative(energy, pot)))
    return (2.0 * math.pi) ** 2 * total / z


def dissipationless_spectrum(
    pot: AnharmonicPotential,
    omegas: ArrayLike,
    harmonics: tuple[int, ...] | None = None,
    jobs: int = settings.JOBS,
) -> SpectrumSeries:
    """
    Gibbs-averaged line spectrum of the undamped oscillator.

    A harmonic n contributes at omega when n*omega(E) = omega has a solution;
    below the small-amplitude floor sqrt(2 mu) it is skipped. Even harmonics
    carry no weight and are ignored.
    """
    if harmonics is None:
        harmonics = tuple(range(1, settings.HARMONIC_CAP + 1, 2))
    harmonics = tuple(n for n in harmonics if n % 2)
    omegas = np.asarray(omegas, dtype=float)
    if np.any(omegas <= 0):
        raise PreconditionError("Dissipationless spectra are evaluated at positive frequencies only")
    z = partition_function(pot)

    values = np.empty(omegas.size)
    with ThreadPoolExecutor(max_workers=max(1, jobs)) as executor:
        future_to_index = {
            executor.submit(_dissipationless_value, float(omega), pot, harmonics, z): index
            for index, omega in enumerate(omegas)
        }
        for future in as_completed(future_to_index):
            values[future_to_index[future]] = X_TO_U * future.result()
    logger.debug("Dissipationless spectrum computed", mu=pot.mu, nu=pot.nu, harmonics=harmonics)
    return SpectrumSeries(omegas=omegas, values=values, label="analytic-dissipationless")


def anharmonic_potential(p: ModelParams) -> AnharmonicPotential:
    """
    Quartic truncation of V_eff about the tuning-line equilibrium, in x = u/sqrt(2).

    Raises:
        PreconditionError: Off the tuning line, for lambda = 0, or above the quartic point
        NegativeDampingError: If the equilibrium is not damped
    """
    expansion = quartic_expansion(p)
    mu = 2.0 * expansion.quadratic_in_u
    if abs(mu) <= QUARTIC_POINT_ATOL:
        mu = 0.0
    if mu < 0:
        raise PreconditionError(f"n~={p.n_tilde:.6g} > 1 gives a double well; no dissipationless spectrum")
    return AnharmonicPotential(
        mu=mu,
        nu=4.0 * expansion.quartic_in_u,
        t_eff=effective_temperature(p, expansion.u_star),
    )


def anharmonic_shift(pot: AnharmonicPotential) -> float:
    """Peak offset xi*T_eff of the weakly anharmonic line, xi = 2 nu / Omega_bar**3."""
    return 2.0 * pot.nu / pot.harmonic_frequency**3 * pot.t_eff


def weak_anharmonic_spectrum(p: ModelParams, omegas: ArrayLike) -> SpectrumSeries:
    """
    Asymmetric line (omega - W)/omega * exp(-(omega - W)/(xi T)) above W = sqrt(1 - n~).

    Normalized so that both sides of the line together carry var(u) = 2 T / W**2.
    Warns with PremiseWarning when <nu x**4> / <mu x**2> exceeds 0.1.
    """
    pot = anharmonic_potential(p)
    if pot.mu == 0:
        raise PreconditionError("Weak-anharmonic spectrum needs n~ < 1")
    premise = 1.5 * pot.nu * pot.t_eff / pot.mu**2
    if premise > WEAK_PREMISE_LIMIT:
        warnings.warn(
            f"<nu x^4>/<mu x^2> = {premise:.3g}; the weak-anharmonic line shape is unreliable",
            PremiseWarning,
            stacklevel=2,
        )
    omegas = np.asarray(omegas, dtype=float)
    center = pot.harmonic_frequency
    shift = anharmonic_shift(pot)
    xi = shift / pot.t_eff
    offset = omegas - center
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        values = np.where(
            offset > 0,
            (2.0 * math.pi / pot.t_eff) / (xi**2 * center) * (offset / omegas) * np.exp(-offset / shift),
            0.0,
        )
    return SpectrumSeries(omegas=omegas, values=values, label="analytic-weak")


def _require_quartic_point(p: ModelParams) -> None:
    if p.lam == 0:
        raise PreconditionError("The quartic point needs lambda > 0")
    if not (math.isclose(p.n_max, p.n_max_star, rel_tol=1e-6) and math.isclose(p.delta, p.delta_star, rel_tol=1e-6)):
        raise PreconditionError(
            f"(n_max, delta) = ({p.n_max:.6g}, {p.delta:.6g}) is not the quartic point "
            f"({p.n_max_star:.6g}, {p.delta_star:.6g})"
        )


def quartic_temperature(p: ModelParams) -> float:
    """Effective temperature at the quartic-point equilibrium."""
    _require_quartic_point(p)
    return effective_temperature(p, float(displacement_for_detuning(p.delta_prime_star, p)))


def quartic_eta(p: ModelParams, t_eff: float | None = None) -> float:
    """Exponent scale eta = 16 K(-1)**4 kappa / (3 pi**4 lambda T_eff)."""
    t = quartic_temperature(p) if t_eff is None else t_eff
    return 16.0 * complete_elliptic_K(-1.0) ** 4 * p.kappa / (3.0 * math.pi**4 * p.lam * t)


def quartic_peak_frequency(p: ModelParams, t_eff: float | None = None) -> float:
    """Omega_max = eta**(-1/4)."""
    return quartic_eta(p, t_eff) ** -0.25


def quartic_spectrum(p: ModelParams, omegas: ArrayLike, t_eff: float | None = None) -> SpectrumSeries:
    """
    Closed-form first-harmonic spectrum of the pure quartic well, proportional to omega**4 exp(-eta omega**4).

    Raises:
        PreconditionError: Unless (n_max, delta) is the quartic point to 1e-6 relative
    """
    _require_quartic_point(p)
    t = quartic_temperature(p) if t_eff is None else t_eff
    constants = quartic_constants()
    nu = 0.75 * p.lam / p.kappa
    c = math.pi * math.sqrt(2.0) / (2.0 * constants.k_minus_one)
    z = math.sqrt(2.0 * math.pi * t) * 2.0 * constants.gamma_five_quarters * (t / nu) ** 0.25
    prefactor = X_TO_U * (2.0 * math.pi) ** 2 * 4.0 * constants.zeta[1] ** 2 / (c**6 * nu**2 * z)
    omegas = np.asarray(omegas, dtype=float)
    values = prefactor * omegas**4 * np.exp(-quartic_eta(p, t) * omegas**4)
    logger.debug("Quartic spectrum evaluated", t_eff=t, omega_max=quartic_peak_frequency(p, t))
    return SpectrumSeries(omegas=omegas, values=values, label="analytic-quartic")


def validity_ratio(p: ModelParams, t_over_kappa: float = OPTICAL_T_OVER_KAPPA) -> float:
    """
    Thermal spread at the quartic point relative to the range of the quartic truncation.

    sqrt[Gamma(3/4) / (2 sqrt(3) Gamma(5/4))] * (lambda T / kappa)**(1/4), with
    T/kappa = 1/(2 sqrt 3) unless given; small values mean the expansion holds.
    """
    if p.lam <= 0:
        raise PreconditionError("Validity ratio needs lambda > 0")
    spread = math.sqrt(OPTICAL_T_OVER_KAPPA * float(gamma(0.75)) / float(gamma(1.25)))
    return spread * (p.lam * t_over_kappa) ** 0.25
