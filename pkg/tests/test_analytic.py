import math

import numpy as np
import pytest
from scipy.integrate import solve_ivp

from core.errors import DomainError, PreconditionError, PremiseWarning
from omfp_analytic import (
    AnharmonicPotential,
    anharmonic_potential,
    anharmonic_shift,
    complete_elliptic_K,
    dissipationless_spectrum,
    frequency_derivative,
    orbit_fourier_coefficients,
    oscillation_frequency,
    partition_function,
    period_by_quadrature,
    quartic_constants,
    quartic_peak_frequency,
    quartic_spectrum,
    resynthesize_orbit,
    scaled_coefficients,
    turning_point,
    validity_ratio,
    weak_anharmonic_spectrum,
)
from omfp_analytic.spectra import OPTICAL_T_OVER_KAPPA
from omfp_model import ModelParams


class TestEllipticK:
    def test_known_values(self):
        assert complete_elliptic_K(0.0) == pytest.approx(math.pi / 2.0, rel=1e-15)
        assert complete_elliptic_K(0.5) == pytest.approx(1.8540746773013719, rel=1e-13)
        assert complete_elliptic_K(-1.0) == pytest.approx(1.31103, abs=1e-5)

    def test_diverges_at_one(self):
        with pytest.raises(DomainError):
            complete_elliptic_K(1.0)


class TestOrbits:
    def test_turning_point_and_scaled_coefficients(self):
        pot = AnharmonicPotential(mu=0.7, nu=0.3)
        energy = 2.5
        x_max = turning_point(energy, pot)
        mu_s, nu_s = scaled_coefficients(energy, pot)

        assert pot.potential(x_max) == pytest.approx(energy)
        assert mu_s + nu_s == pytest.approx(1.0)

    def test_frequency_matches_period_quadrature(self):
        rng = np.random.default_rng(7)
        for _ in range(100):
            pot = AnharmonicPotential(mu=float(rng.uniform(0.0, 2.0)), nu=float(rng.uniform(1e-3, 2.0)))
            energy = float(rng.uniform(1e-3, 10.0))
            omega = oscillation_frequency(energy, pot)

            assert 2.0 * math.pi / omega == pytest.approx(period_by_quadrature(energy, pot), rel=1e-8)

    def test_harmonic_and_quartic_limits(self):
        soft = AnharmonicPotential(mu=0.5, nu=1.0)
        quartic = AnharmonicPotential(mu=0.0, nu=2.0)
        c = math.pi * math.sqrt(2.0) / (2.0 * complete_elliptic_K(-1.0))

        assert oscillation_frequency(1e-10, soft) == pytest.approx(1.0, rel=1e-6)
        assert oscillation_frequency(3.0, quartic) == pytest.approx(c * (3.0 * 2.0) ** 0.25, rel=1e-12)

    def test_frequency_grows_with_energy(self):
        pot = AnharmonicPotential(mu=0.25, nu=1e-3)
        energies = np.linspace(0.1, 50.0, 20)
        omegas = [oscillation_frequency(e, pot) for e in energies]

        assert np.all(np.diff(omegas) > 0)

    def test_frequency_derivative(self):
        quartic = AnharmonicPotential(mu=0.0, nu=1.0)
        weak = AnharmonicPotential(mu=0.5, nu=1e-4)

        assert frequency_derivative(2.0, quartic) == pytest.approx(
            frequency_derivative(2.0, quartic, exact=True), rel=1e-6
        )
        # the default drops dK/dE: 2 nu / Omega**3 instead of the Lindstedt 3 nu / (2 Omega mu)
        assert frequency_derivative(1.0, weak) == pytest.approx(2.0 * weak.nu / 1.0**3, rel=1e-2)
        assert frequency_derivative(1.0, weak, exact=True) == pytest.approx(1.5 * weak.nu / weak.mu, rel=1e-2)

    def test_orbit_energy_must_be_positive(self):
        with pytest.raises(DomainError):
            turning_point(0.0, AnharmonicPotential(mu=1.0, nu=1.0))

    def test_even_harmonics_vanish(self):
        coefficients = orbit_fourier_coefficients(1.3, AnharmonicPotential(mu=0.4, nu=0.8), 6)

        assert [coefficients[n] for n in (2, 4, 6)] == [0.0, 0.0, 0.0]
        assert coefficients[1] < 0

    def test_resynthesis_matches_direct_integration(self):
        pot = AnharmonicPotential(mu=0.3, nu=0.5)
        energy = 1.2
        x_max = turning_point(energy, pot)
        period = 2.0 * math.pi / oscillation_frequency(energy, pot)
        times = np.linspace(0.0, period, 17)

        solution = solve_ivp(
            lambda t, y: [y[1], -2.0 * pot.mu * y[0] - 4.0 * pot.nu * y[0] ** 3],
            (0.0, period),
            [-x_max, 0.0],
            t_eval=times,
            rtol=1e-11,
            atol=1e-12,
        )
        rebuilt = resynthesize_orbit(energy, pot, times, harmonic_cap=9)

        np.testing.assert_allclose(rebuilt, solution.y[0], atol=1e-3 * x_max)


class TestQuarticConstants:
    def test_values(self):
        constants = quartic_constants()

        assert constants.k_minus_one == pytest.approx(1.31103, abs=1e-5)
        assert constants.gamma_five_quarters == pytest.approx(0.9064025, rel=1e-6)
        assert constants.zeta[1] == pytest.approx(-0.478, abs=1e-3)
        assert constants.zeta[3] == pytest.approx(-0.022, abs=1e-3)
        assert set(constants.zeta) == {1, 3, 5, 7}
        assert constants.upsilon == pytest.approx(
            8.0 * math.sqrt(2.0 / math.pi) * constants.k_minus_one**2 / constants.gamma_five_quarters
        )
        assert constants.delta_2 == pytest.approx(2.446, abs=1e-3)
        assert constants.delta_4 == pytest.approx(0.585, abs=1e-3)
        assert constants.quality_factor == pytest.approx(1.71, abs=0.01)

    def test_orbit_starts_at_the_left_turning_point(self):
        zeta = quartic_constants().zeta

        assert 2.0 * sum(zeta.values()) == pytest.approx(-1.0, abs=1e-3)


def test_partition_function_harmonic_limit():
    pot = AnharmonicPotential(mu=0.5, nu=1e-12, t_eff=2.0)

    # 2 pi T / omega with omega = 1
    assert partition_function(pot) == pytest.approx(2.0 * math.pi * 2.0, rel=1e-6)


def test_potential_validation():
    with pytest.raises(PreconditionError):
        AnharmonicPotential(mu=1.0, nu=0.0)
    with pytest.raises(PreconditionError):
        AnharmonicPotential(mu=-1.0, nu=1.0)
    with pytest.raises(PreconditionError):
        AnharmonicPotential(mu=1.0, nu=1.0, t_eff=0.0)


class TestTuningLineMapping:
    def test_softened_potential(self, softened_params):
        pot = anharmonic_potential(softened_params)

        assert pot.harmonic_frequency == pytest.approx(math.sqrt(0.5), rel=1e-9)
        assert pot.nu == pytest.approx(0.75 * softened_params.lam / softened_params.kappa * 0.5, rel=1e-9)
        assert pot.t_eff > 0

    def test_quartic_point_is_pure_quartic(self, quartic_params):
        pot = anharmonic_potential(quartic_params)

        assert pot.is_pure_quartic
        assert pot.nu == pytest.approx(0.75 * quartic_params.lam / quartic_params.kappa, rel=1e-9)

    def test_double_well_is_rejected(self):
        p = ModelParams.on_tuning_line(1.5 * ModelParams().n_max_star)

        with pytest.raises(PreconditionError):
            anharmonic_potential(p)


class TestQuarticSpectrum:
    def test_peak_frequency(self):
        p = ModelParams.at_quartic_point(gamma_m=0.0)

        assert quartic_peak_frequency(p, t_eff=OPTICAL_T_OVER_KAPPA * p.kappa) == pytest.approx(0.3655, abs=1e-3)
        assert quartic_peak_frequency(p) == pytest.approx(0.3655, abs=1e-3)

    def test_line_shape(self, quartic_params):
        omega_max = quartic_peak_frequency(quartic_params)
        series = quartic_spectrum(quartic_params, np.linspace(0.01, 3.0, 30000) * omega_max)

        assert series.peak()[0] == pytest.approx(omega_max, rel=1e-3)
        assert series.fwhm() / omega_max == pytest.approx(quartic_constants().delta_4, rel=1e-3)

    def test_matches_the_first_harmonic_of_the_dissipationless_spectrum(self, quartic_params):
        pot = anharmonic_potential(quartic_params)
        omega_max = quartic_peak_frequency(quartic_params, pot.t_eff)
        omegas = np.linspace(0.2, 2.0, 25) * omega_max

        closed = quartic_spectrum(quartic_params, omegas, t_eff=pot.t_eff)
        shells = dissipationless_spectrum(pot, omegas, harmonics=(1,), jobs=2)

        np.testing.assert_allclose(shells.values, closed.values, rtol=1e-4)

    def test_higher_harmonics_add_little_near_the_peak(self, quartic_params):
        pot = anharmonic_potential(quartic_params)
        omega_max = quartic_peak_frequency(quartic_params, pot.t_eff)
        omegas = np.linspace(0.6, 1.5, 10) * omega_max

        first = dissipationless_spectrum(pot, omegas, harmonics=(1,))
        full = dissipationless_spectrum(pot, omegas)

        np.testing.assert_allclose(full.values, first.values, rtol=0.01)
        assert np.all(full.values >= first.values)

    def test_requires_the_quartic_point(self, softened_params):
        with pytest.raises(PreconditionError):
            quartic_spectrum(softened_params, [0.3])

    def test_validity_ratio(self):
        p = ModelParams()

        assert validity_ratio(p) == pytest.approx(0.1448, abs=5e-4)
        # second factor alone, (lambda T / kappa)**(1/4)
        assert (p.lam * OPTICAL_T_OVER_KAPPA) ** 0.25 == pytest.approx(0.23, abs=0.005)
        with pytest.raises(PreconditionError):
            validity_ratio(ModelParams(lam=0.0))


class TestWeakAnharmonic:
    def test_peak_is_shifted_up_by_xi_t(self, softened_params):
        pot = anharmonic_potential(softened_params)
        center = pot.harmonic_frequency
        shift = anharmonic_shift(pot)
        series = weak_anharmonic_spectrum(softened_params, np.linspace(center - 0.01, center + 0.05, 60001))

        assert shift == pytest.approx(2.0 * pot.nu * pot.t_eff / center**3)
        assert series.peak()[0] == pytest.approx(center + shift, rel=1e-3)
        assert np.all(series.values[series.omegas <= center] == 0.0)

    def test_normalization(self, softened_params):
        pot = anharmonic_potential(softened_params)
        center = pot.harmonic_frequency
        series = weak_anharmonic_spectrum(softened_params, np.linspace(center, center + 0.5, 200001))

        # positive frequencies carry pi * var(u), var(u) = 2 T / Omega_bar**2
        assert series.integrated() == pytest.approx(math.pi * 2.0 * pot.t_eff / center**2, rel=0.03)

    def test_warns_near_the_quartic_point(self):
        p = ModelParams.on_tuning_line(0.95 * ModelParams().n_max_star)

        with pytest.warns(PremiseWarning):
            weak_anharmonic_spectrum(p, [0.3])

    def test_rejects_the_pure_quartic(self, quartic_params):
        with pytest.raises(PreconditionError):
            weak_anharmonic_spectrum(quartic_params, [0.3])
