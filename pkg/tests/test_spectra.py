import math

import numpy as np
import pytest

from core.errors import NoStableEquilibriumError
from core.lib import coth_half_inverse
from omfp_analytic import anharmonic_potential, anharmonic_shift
from omfp_fokker_planck import stationary_problem
from omfp_model import ModelParams, lorentzian_kernel
from omfp_spectra import (
    Observable,
    PopulationStatus,
    SpectrumSeries,
    bare_cavity_population,
    cavity_population,
    coherent_cavity_field,
    displacement_spectrum,
    emission_spectrum,
    equilibrium_population,
    incoherent_weight,
    integrated_incoherent_weight,
    normalized_field,
    population_sample,
    real_pair_spectrum,
    resolvent_spectrum,
    symmetric_midpoints,
)


def _oscillator_spectrum(omega, gamma, diffusion):
    """Two-sided S_uu of u'' + gamma u' + u = sqrt(D) xi."""
    return diffusion / ((1.0 - omega**2) ** 2 + (gamma * omega) ** 2)


class TestSpectrumSeries:
    def test_rejects_unsorted_frequencies(self):
        with pytest.raises(ValueError):
            SpectrumSeries(np.array([1.0, 0.5]), np.array([1.0, 2.0]))
        with pytest.raises(ValueError):
            SpectrumSeries(np.array([1.0, 2.0]), np.array([1.0]))

    def test_peak_width_and_integral_of_a_triangle(self):
        omegas = np.linspace(0.0, 2.0, 201)
        series = SpectrumSeries(omegas, np.maximum(0.0, 1.0 - np.abs(omegas - 1.0)))

        assert series.peak() == pytest.approx((1.0, 1.0))
        assert series.fwhm() == pytest.approx(1.0, rel=1e-9)
        assert series.integrated() == pytest.approx(1.0, rel=1e-9)

    def test_refined_peak_finds_the_vertex_between_samples(self):
        omegas = np.linspace(0.0, 1.0, 11)
        series = SpectrumSeries(omegas, 2.0 - (omegas - 0.53) ** 2)

        assert series.peak() == pytest.approx((0.5, 2.0 - 0.03**2))
        assert series.peak(refine=True) == pytest.approx((0.53, 2.0))

    def test_refined_peak_keeps_an_edge_sample(self):
        omegas = np.linspace(0.0, 1.0, 11)
        series = SpectrumSeries(omegas, omegas.copy())

        assert series.peak(refine=True) == (1.0, 1.0)

    def test_width_is_nan_when_the_line_is_cut(self):
        omegas = np.linspace(0.0, 1.0, 11)

        assert math.isnan(SpectrumSeries(omegas, omegas.copy()).fwhm())

    def test_failed_samples_are_skipped(self):
        values = np.array([0.0, 1.0, np.nan, 1.0, 0.0])
        series = SpectrumSeries(np.arange(5.0), values, failed=[2])

        assert series.peak()[1] == 1.0
        assert series.integrated() == pytest.approx(3.0)
        assert series.normalized().failed == [2]

    def test_frame(self):
        frame = SpectrumSeries(np.array([0.1, 0.2]), np.array([3.0, 4.0])).to_frame()

        assert list(frame.columns) == ["omega", "value"]


def test_symmetric_midpoints_avoid_zero():
    nodes = symmetric_midpoints(8.0, 801)

    assert nodes.size == 802
    assert np.all(nodes != 0.0)
    np.testing.assert_allclose(nodes, -nodes[::-1])
    assert nodes[0] == pytest.approx(-8.0 + 8.0 / 802)


def test_harmonic_displacement_spectrum_is_lorentzian(harmonic_params, small_grid):
    diffusion = 2.0 * harmonic_params.gamma_m * float(coth_half_inverse(harmonic_params.T_b))
    omegas = np.array([0.3, 0.5, 1.6, 2.0, 3.0])
    series = displacement_spectrum(harmonic_params, omegas, **small_grid)

    np.testing.assert_allclose(
        series.values, _oscillator_spectrum(omegas, harmonic_params.gamma_m, diffusion), rtol=0.03
    )
    assert series.failed == []


def test_harmonic_peak_sits_at_the_mechanical_frequency(harmonic_params, small_grid):
    omegas = np.linspace(0.8, 1.2, 201)
    series = displacement_spectrum(harmonic_params, omegas, **small_grid)
    expected = math.sqrt(1.0 - 0.5 * harmonic_params.gamma_m**2)

    assert series.peak()[0] == pytest.approx(expected, rel=0.02)


def test_displacement_sum_rule(harmonic_params, small_grid):
    problem = stationary_problem(harmonic_params, **small_grid)
    series = displacement_spectrum(harmonic_params, problem=problem, jobs=2)

    # two-sided spectrum, sampled on the positive half
    assert series.integrated() / math.pi == pytest.approx(problem.state.diagnostics.var_u, rel=0.01)


def test_real_pair_form_agrees(harmonic_params):
    problem = stationary_problem(harmonic_params, 32, 32)
    u_obs = Observable.displacement(problem.grid)
    omegas = np.array([0.5, 1.0, 2.0])

    complex_form = resolvent_spectrum(problem.generator, problem.state, u_obs, u_obs, omegas)
    real_form = real_pair_spectrum(problem.generator, problem.state, u_obs, u_obs, omegas)

    np.testing.assert_allclose(real_form, complex_form.values, rtol=1e-6)


def test_spectrum_is_independent_of_the_pool_size(harmonic_params):
    problem = stationary_problem(harmonic_params, 24, 24)
    omegas = np.geomspace(0.1, 3.0, 12)

    serial = displacement_spectrum(harmonic_params, omegas, problem=problem, jobs=1)
    pooled = displacement_spectrum(harmonic_params, omegas, problem=problem, jobs=3)

    np.testing.assert_array_equal(serial.values, pooled.values)


@pytest.mark.parametrize("n_tilde", [0.1, 0.3, 0.5, 0.7])
def test_spring_softening_on_the_tuning_line(n_tilde):
    p = ModelParams.on_tuning_line(n_tilde * ModelParams().n_max_star)
    series = displacement_spectrum(p, np.linspace(0.45, 1.05, 121), n_x=64, n_p=64)
    peak = series.peak(refine=True)[0]
    pot = anharmonic_potential(p)

    # the quartic term pulls the thermal line above Omega_bar
    assert peak == pytest.approx(pot.harmonic_frequency + anharmonic_shift(pot), rel=0.05)
    if n_tilde <= 0.5:
        assert peak == pytest.approx(math.sqrt(1.0 - n_tilde), rel=0.05)


def test_quartic_point_spectrum_is_below_the_bare_frequency(quartic_params):
    omegas = np.geomspace(0.05, 2.0, 120)
    series = displacement_spectrum(quartic_params, omegas, n_x=64, n_p=64)

    assert 0.2 < series.peak()[0] < 0.6


def test_cavity_fields():
    p = ModelParams(n_max=9.0, delta=-30.0)
    u = np.array([-10.0, 0.0, 25.0])

    np.testing.assert_allclose(np.abs(normalized_field(u, p)) ** 2, lorentzian_kernel(-30.0 + p.g0 * u, p.kappa))
    np.testing.assert_allclose(coherent_cavity_field(u, p), 3.0 * normalized_field(u, p))
    assert bare_cavity_population(0.0, 100.0) == 1.0
    assert bare_cavity_population(50.0, 100.0) == pytest.approx(0.5)


def test_uncoupled_cavity_population_is_the_bare_response(harmonic_params):
    p = harmonic_params.replace(delta=-40.0, n_max=10.0)

    assert cavity_population(p, n_x=24, n_p=24) == pytest.approx(bare_cavity_population(-40.0, p.kappa))


def test_emission_sum_rule(softened_params):
    p = softened_params.replace(gamma_m=0.2)
    grid = {"n_x": 40, "n_p": 40}
    sample = population_sample(p, **grid)

    assert sample.status is PopulationStatus.STABLE
    assert 0.0 < sample.incoherent < sample.coherent
    assert sample.coherent + sample.incoherent == pytest.approx(sample.population, rel=0.01)


def test_incoherent_weight_reuses_the_problem(softened_params):
    p = softened_params.replace(gamma_m=0.2)
    problem = stationary_problem(p, 32, 32)
    emission = emission_spectrum(p, np.array([0.5, 0.7, 1.0]), problem=problem)
    integrated = integrated_incoherent_weight(p, problem=problem, points=400)
    population = cavity_population(p, problem=problem)

    assert emission.coherent_weight + incoherent_weight(p, problem=problem) == pytest.approx(population, rel=1e-9)
    assert emission.coherent_weight + integrated == pytest.approx(population, rel=0.02)
    assert np.all(emission.values > 0)


@pytest.mark.parametrize("n_tilde", [0.1, 1.5])
def test_emission_sum_rule_with_weak_mechanical_damping(n_tilde):
    p = ModelParams.on_tuning_line(n_tilde * ModelParams().n_max_star)
    sample = population_sample(p, n_x=48, n_p=48)

    assert p.gamma_m == 1e-3
    assert sample.status is PopulationStatus.STABLE
    assert sample.incoherent > 0.0
    assert sample.coherent + sample.incoherent == pytest.approx(sample.population, rel=1e-9)


@pytest.mark.slow
def test_integrated_emission_sum_rule(softened_params):
    problem = stationary_problem(softened_params)
    coherent = emission_spectrum(softened_params, np.array([1.0]), problem=problem).coherent_weight
    integrated = integrated_incoherent_weight(softened_params, problem=problem, jobs=4)

    assert coherent + integrated == pytest.approx(cavity_population(softened_params, problem=problem), rel=0.01)


def test_population_is_suppressed_beyond_the_quartic_point():
    n_star = ModelParams().n_max_star
    points = [ModelParams.on_tuning_line(n_tilde * n_star) for n_tilde in (1.0, 1.5, 2.0)]
    equilibrium = [equilibrium_population(p) for p in points]
    population = [cavity_population(p, n_x=64, n_p=64) for p in points]

    assert equilibrium[0] == pytest.approx(0.75, rel=0.01)
    assert equilibrium[0] > equilibrium[1] > equilibrium[2]
    assert population[0] > population[1]
    assert population[0] > population[2]


def test_population_has_a_cusp_at_the_quartic_point(quartic_params):
    def slope(h: float) -> float:
        upper = equilibrium_population(quartic_params, quartic_params.delta + h)
        lower = equilibrium_population(quartic_params, quartic_params.delta - h)
        return abs(upper - lower) / (2.0 * h)

    slopes = [slope(h) for h in (4.0, 1.0, 0.25)]

    # the slope grows as h**(-2/3): 4**(2/3) = 2.52 per step
    assert slopes[1] / slopes[0] > 2.0
    assert slopes[2] / slopes[1] > 2.0


def test_unstable_point_is_reported_not_raised(blue_params):
    sample = population_sample(blue_params, n_x=24, n_p=24)

    assert sample.status is PopulationStatus.UNSTABLE
    assert math.isnan(sample.population)
    with pytest.raises(NoStableEquilibriumError):
        emission_spectrum(blue_params, n_x=24, n_p=24)
