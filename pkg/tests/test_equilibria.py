import math

import numpy as np
import pytest

from core.errors import ImproperlyConfigured, PreconditionError
from omfp_equilibria import (
    Dynamics,
    RootStability,
    equilibrium_detunings,
    equilibrium_positions,
    instability_threshold,
    quartic_point,
    renormalized_frequency,
    stability_region_map,
    tuning_line_detuning,
)
from omfp_model import ModelParams, static_force


def _residual(y: float, delta: float, kappa: float, lam_n: float) -> float:
    return (y - delta) * (1.0 + (2.0 * y / kappa) ** 2) - lam_n * kappa


@pytest.mark.parametrize(
    ("delta", "lam_n", "expected_roots"),
    [
        (-20.0, 0.3, 1),
        (-150.0, 1.5, 3),
        (40.0, 0.5, 1),
    ],
)
def test_equilibrium_detunings_solve_the_cubic(delta, lam_n, expected_roots):
    kappa = 100.0
    roots = equilibrium_detunings(delta, kappa, lam_n)

    assert roots.size == expected_roots
    assert np.all(np.diff(roots) > 0)
    for y in roots:
        assert abs(_residual(y, delta, kappa, lam_n)) < 1e-9 * kappa


def test_undriven_cavity_has_the_laser_detuning():
    roots = equilibrium_detunings(-30.0, 100.0, 0.0)

    np.testing.assert_allclose(roots, [-30.0])


def test_triple_root_collapses_at_the_quartic_point(quartic_params):
    eq = equilibrium_positions(quartic_params)

    assert len(eq.equilibria) == 1
    assert eq.roots[0] == pytest.approx(quartic_params.delta_prime_star, abs=0.05)


def test_double_well_above_the_quartic_point():
    p = ModelParams.on_tuning_line(1.5 * ModelParams().n_max_star)
    eq = equilibrium_positions(p)

    assert eq.is_bistable
    assert eq.stability == [
        RootStability.STABLE_MINIMUM,
        RootStability.UNSTABLE_MAXIMUM,
        RootStability.STABLE_MINIMUM,
    ]
    assert eq.roots[1] == pytest.approx(p.delta_prime_star, rel=1e-9)
    assert len(eq.stable_roots) == 2
    for u in eq.displacements:
        assert static_force(u, p) == pytest.approx(0.0, abs=1e-8)


def test_red_detuned_minimum_is_damped(softened_params):
    eq = equilibrium_positions(softened_params)

    assert eq.dynamical == [Dynamics.DAMPED]
    assert eq.global_minimum().is_usable


def test_blue_detuned_minimum_self_oscillates(blue_params):
    eq = equilibrium_positions(blue_params)

    assert eq.dynamical == [Dynamics.SELF_OSCILLATING]
    assert eq.usable == []
    assert eq.deepest_usable() is None


def test_deepest_usable_skips_a_self_oscillating_global_minimum():
    eq = equilibrium_positions(ModelParams(n_max=240.0, delta=-150.0))

    assert eq.roots[0] == pytest.approx(-107.0, abs=1.0)
    assert eq.global_minimum().delta_prime > 0
    assert eq.global_minimum().dynamics is Dynamics.SELF_OSCILLATING
    assert eq.deepest_usable() is eq.equilibria[0]


def test_quartic_point_constants():
    n_star, delta_star = quartic_point(0.01, kappa=100.0)

    assert n_star == pytest.approx(76.98, abs=0.01)
    assert delta_star / 100.0 == -math.sqrt(3.0) / 2.0
    with pytest.raises(PreconditionError):
        quartic_point(0.0)


@pytest.mark.parametrize(
    ("n_tilde", "expected"),
    [(0.0, 1.0), (0.5, math.sqrt(0.5)), (1.0, 0.0), (1.5, 1.0)],
)
def test_renormalized_frequency(n_tilde, expected):
    p = ModelParams()
    value = renormalized_frequency(n_tilde * p.n_max_star, p)

    assert value.value == pytest.approx(expected, abs=1e-12)
    assert value.at_quartic_point == (n_tilde == 1.0)


def test_instability_threshold_formula():
    assert instability_threshold(ModelParams(), 1000.0) == pytest.approx(2.415, rel=1e-3)
    assert instability_threshold(ModelParams(lam=0.0), 1000.0) == math.inf


def test_region_map_finds_the_instability_threshold():
    p = ModelParams()
    region = stability_region_map(p, np.linspace(0.0, 5.0, 201), np.linspace(0.0, 100.0, 401), [1000.0])

    assert region.smallest_unstable_n_max(1000.0) == pytest.approx(instability_threshold(p, 1000.0), rel=0.05)
    assert not region.bistable.any()


def test_region_map_bistable_wedge_and_frame():
    p = ModelParams()
    n_axis = np.array([20.0, 150.0])
    d_axis = np.array([-150.0, -20.0])
    region = stability_region_map(p, n_axis, d_axis, [20.0, 1000.0], jobs=2)
    frame = region.to_frame()

    assert region.bistable.tolist() == [[False, False], [True, False]]
    assert list(frame.columns) == ["n_max", "delta", "bistable", "unstable_q20", "unstable_q1000"]
    assert frame["delta"].tolist() == [-150.0, -20.0, -150.0, -20.0]
    # at (150, -20) the equilibrium is pushed to Delta' ~ +52, where Gamma_opt ~ -0.028
    assert frame["unstable_q1000"].tolist() == [False, False, False, True]
    assert not frame["unstable_q20"].any()


def test_region_map_is_independent_of_the_pool_size():
    p = ModelParams()
    n_axis = np.linspace(0.0, 200.0, 11)
    d_axis = np.linspace(-250.0, 50.0, 13)

    serial = stability_region_map(p, n_axis, d_axis, [100.0], jobs=1)
    pooled = stability_region_map(p, n_axis, d_axis, [100.0], jobs=4)

    np.testing.assert_array_equal(serial.bistable, pooled.bistable)
    np.testing.assert_array_equal(serial.unstable, pooled.unstable)


@pytest.mark.parametrize(
    ("n_axis", "d_axis", "q_values"),
    [
        ([], [0.0], ()),
        ([1.0, 0.5, 2.0], [0.0], ()),
        ([-1.0, 1.0], [0.0], ()),
        ([1.0], [0.0], [0.0]),
    ],
)
def test_region_map_rejects_bad_axes(n_axis, d_axis, q_values):
    with pytest.raises(ImproperlyConfigured):
        stability_region_map(ModelParams(), n_axis, d_axis, q_values)


def test_tuning_line_pins_the_central_root():
    base = ModelParams()
    n_max = 0.5 * base.n_max_star
    p = base.replace(n_max=n_max, delta=tuning_line_detuning(n_max, base))

    assert p.delta == pytest.approx(base.delta_prime_star - 0.75 * base.kappa * base.lam * n_max)
    assert any(y == pytest.approx(p.delta_prime_star, abs=1e-6 * p.kappa) for y in equilibrium_positions(p).roots)
