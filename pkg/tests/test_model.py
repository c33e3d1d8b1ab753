import math

import numpy as np
import pytest

from core.errors import NegativeDampingError, PreconditionError, RegimeWarning
from omfp_model import (
    ModelParams,
    detuning_shift,
    displacement_for_detuning,
    effective_potential,
    effective_temperature,
    force_spectrum,
    lorentzian_kernel,
    optical_damping,
    optical_diffusion,
    phonon_occupation,
    photon_number,
    potential_curvature,
    quartic_expansion,
    static_force,
    thermal_diffusion,
    total_damping,
    total_diffusion,
)


def test_derived_constants():
    p = ModelParams()

    assert p.g0 == pytest.approx(math.sqrt(0.5))
    assert p.n_max_star == pytest.approx(76.98, abs=0.01)
    assert p.delta_star / p.kappa == -math.sqrt(3.0) / 2.0
    assert p.tuning_line_delta(77.0) == pytest.approx(-86.6, abs=0.05)


def test_kappa_units_and_lambda_alias():
    p = ModelParams.from_kappa_units(-0.5, kappa=40.0)
    q = ModelParams(**{"lambda": 0.02})

    assert p.delta == -20.0
    assert q.lam == 0.02
    assert p.replace(**{"lambda": 0.05}).lam == 0.05


def test_small_kappa_warns():
    with pytest.warns(RegimeWarning):
        ModelParams(kappa=5.0)


def test_quartic_point_constructor_is_on_tuning_line(quartic_params):
    assert quartic_params.is_on_tuning_line()
    assert quartic_params.n_tilde == pytest.approx(1.0)


def test_lorentzian_kernel():
    assert lorentzian_kernel(0.0, 100.0) == 1.0
    assert lorentzian_kernel(50.0, 100.0) == pytest.approx(0.5)


def test_optical_damping_is_odd_in_effective_detuning():
    p = ModelParams(n_max=20.0)
    for dp in (5.0, 30.0, 80.0):
        red = optical_damping(displacement_for_detuning(-dp, p), p)
        blue = optical_damping(displacement_for_detuning(dp, p), p)
        assert red > 0
        assert blue == pytest.approx(-red)


def test_force_spectrum_reduces_to_flat_diffusion():
    p = ModelParams(n_max=30.0, delta=-40.0)
    u = np.linspace(-20.0, 20.0, 7)

    np.testing.assert_allclose(force_spectrum(0.0, u, p), optical_diffusion(u, p))


def test_thermal_diffusion_at_ten_quanta():
    p = ModelParams(gamma_m=1e-3, T_b=10.0)

    assert thermal_diffusion(p) / p.gamma_m == pytest.approx(2.0 * 20.0167, rel=1e-5)
    assert thermal_diffusion(p.replace(T_b=0.0)) == pytest.approx(2.0 * p.gamma_m)


def test_phonon_occupation():
    assert phonon_occupation(0.0) == 0.0
    assert phonon_occupation(10.0) == pytest.approx(1.0 / math.expm1(0.1))


def test_static_force_vanishes_at_the_tuning_line_equilibrium(softened_params):
    u_star = displacement_for_detuning(softened_params.delta_prime_star, softened_params)

    assert static_force(u_star, softened_params) == pytest.approx(0.0, abs=1e-10)


def test_effective_temperature_when_optics_dominate():
    p = ModelParams.at_quartic_point(gamma_m=0.0)
    u_star = displacement_for_detuning(p.delta_prime_star, p)

    assert effective_temperature(p, u_star) == pytest.approx(100.0 / (2.0 * math.sqrt(3.0)), rel=1e-3)


def test_effective_temperature_of_bare_bath():
    p = ModelParams(lam=0.0, gamma_m=0.3, T_b=4.0)

    assert effective_temperature(p, 0.0) == pytest.approx(4.0, rel=1e-12)


def test_effective_temperature_rejects_heating(blue_params):
    u = displacement_for_detuning(40.0, blue_params)

    with pytest.raises(NegativeDampingError):
        effective_temperature(blue_params, u)


def test_quartic_expansion_matches_curvature(softened_params):
    expansion = quartic_expansion(softened_params)
    u_star = expansion.u_star
    h = 1.0
    curvature = [potential_curvature(u_star + k * h, softened_params) for k in (-1, 0, 1)]
    fourth = (curvature[0] - 2.0 * curvature[1] + curvature[2]) / h**2

    assert curvature[1] == pytest.approx(2.0 * expansion.quadratic_in_u, rel=1e-9)
    assert expansion.quadratic_in_u == pytest.approx((1.0 - softened_params.n_tilde) / 4.0)
    assert fourth == pytest.approx(24.0 * expansion.quartic_in_u, rel=1e-3)


def test_quadratic_term_vanishes_at_quartic_point(quartic_params):
    expansion = quartic_expansion(quartic_params)

    assert abs(expansion.quadratic_in_u) < 1e-8 * expansion.quartic_in_u * 40.0**2


def test_quartic_expansion_preconditions():
    with pytest.raises(PreconditionError):
        quartic_expansion(ModelParams(n_max=30.0, delta=-10.0))
    with pytest.raises(PreconditionError):
        quartic_expansion(ModelParams(lam=0.0))


def test_detuning_shift_inverts(softened_params):
    u = np.linspace(-300.0, 300.0, 7)

    np.testing.assert_allclose(displacement_for_detuning(detuning_shift(u, softened_params), softened_params), u)
    assert detuning_shift(0.0, softened_params) == softened_params.delta


def test_photon_number_peaks_on_resonance(softened_params):
    p = softened_params
    resonant = displacement_for_detuning(0.0, p)

    assert photon_number(resonant, p) == pytest.approx(p.n_max)
    assert photon_number(displacement_for_detuning(p.kappa / 2.0, p), p) == pytest.approx(p.n_max / 2.0)


def test_static_force_is_minus_the_potential_slope(softened_params):
    u = np.linspace(-200.0, 200.0, 41)
    h = 1e-4
    slope = (effective_potential(u + h, softened_params) - effective_potential(u - h, softened_params)) / (2.0 * h)

    np.testing.assert_allclose(static_force(u, softened_params), -slope, rtol=1e-6, atol=1e-6)


def test_totals_add_bath_and_optics(softened_params):
    p = softened_params
    u = np.array([-50.0, 0.0, 50.0])

    np.testing.assert_allclose(total_damping(u, p), p.gamma_m + optical_damping(u, p))
    np.testing.assert_allclose(total_diffusion(u, p), thermal_diffusion(p) + optical_diffusion(u, p))
