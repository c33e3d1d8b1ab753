import numpy as np
import pytest
from scipy import stats

from core.errors import ImproperlyConfigured, InsufficientDataError, NoStableEquilibriumError, PremiseWarning
from core.lib import coth_half_inverse
from omfp_fokker_planck import stationary_problem
from omfp_langevin import (
    TrajectoryConfig,
    TrajectoryEnsemble,
    histogram,
    ks_distance,
    ks_distance_gaussian,
    periodogram,
    read_dump,
    simulate,
    write_dump,
)
from omfp_langevin.dump import MAGIC
from omfp_spectra import displacement_spectrum


@pytest.fixture
def bath_params(harmonic_params):
    return harmonic_params.replace(gamma_m=1.0)


@pytest.mark.parametrize(
    "options",
    [
        {"dt": 0.02},
        {"dt": 0.0},
        {"steps": 0},
        {"steps": 5, "stride": 10},
        {"burn_in": -1},
        {"batch_size": 0},
    ],
)
def test_trajectory_config_validation(options):
    with pytest.raises(ImproperlyConfigured):
        TrajectoryConfig(**options)


def test_trajectory_config_sampling():
    cfg = TrajectoryConfig(dt=0.005, steps=1000, stride=4)

    assert cfg.samples_per_trajectory == 250
    assert cfg.sample_interval == pytest.approx(0.02)


def test_samples_do_not_depend_on_the_pool_size(bath_params):
    cfg = TrajectoryConfig(dt=0.01, steps=2000, burn_in=1000, n_trajectories=4, batch_size=2, stride=5, chunk=512)

    serial = simulate(bath_params, cfg, jobs=1)
    pooled = simulate(bath_params, cfg, jobs=2)
    again = simulate(bath_params, cfg, jobs=1)

    assert serial.u.shape == (4, 400)
    np.testing.assert_array_equal(serial.u, pooled.u)
    np.testing.assert_array_equal(serial.w, pooled.w)
    np.testing.assert_array_equal(serial.u, again.u)


def test_other_seed_gives_other_samples(bath_params):
    base = TrajectoryConfig(dt=0.01, steps=500, burn_in=1000, n_trajectories=2, stride=5)
    other = TrajectoryConfig(dt=0.01, steps=500, burn_in=1000, n_trajectories=2, stride=5, seed=base.seed + 1)

    assert not np.array_equal(simulate(bath_params, base).u, simulate(bath_params, other).u)


@pytest.mark.slow
def test_harmonic_bath_equilibrium(bath_params):
    cfg = TrajectoryConfig(dt=0.01, steps=50_000, burn_in=2000, n_trajectories=16, stride=5)
    ensemble = simulate(bath_params, cfg, jobs=2)
    expected = float(coth_half_inverse(bath_params.T_b))
    mean_w, stderr = ensemble.mean_w_standard_error()

    assert ensemble.u.var() == pytest.approx(expected, rel=0.1)
    assert ensemble.w.var() == pytest.approx(expected, rel=0.1)
    assert abs(mean_w) < 4.0 * stderr
    assert ks_distance_gaussian(ensemble.u, 0.0, expected) < 0.05


@pytest.mark.slow
def test_quartic_point_agrees_with_the_stationary_solution(quartic_params):
    cfg = TrajectoryConfig(dt=0.01, steps=400_000, burn_in=40_000, n_trajectories=32, batch_size=16, stride=20)
    ensemble = simulate(quartic_params, cfg, jobs=2)
    problem = stationary_problem(quartic_params)

    assert ks_distance(ensemble.u, problem.grid.u_nodes, problem.state.marginal_u()) < 0.05

    oracle = periodogram(ensemble.u, cfg.sample_interval, nperseg=2048)
    smoothed = np.convolve(oracle.values, np.ones(9) / 9.0, mode="same")
    band = (oracle.omegas > 0.05) & (oracle.omegas < 1.5)
    oracle_peak = oracle.omegas[band][np.argmax(smoothed[band])]
    resolved = displacement_spectrum(quartic_params, np.linspace(0.1, 1.0, 181), problem=problem, jobs=2)

    assert oracle_peak == pytest.approx(resolved.peak(refine=True)[0], rel=0.1)


def test_short_burn_in_warns(bath_params):
    cfg = TrajectoryConfig(dt=0.01, steps=100, burn_in=0, n_trajectories=1, stride=1)

    with pytest.warns(PremiseWarning):
        simulate(bath_params, cfg)


def test_no_stable_equilibrium(blue_params):
    with pytest.raises(NoStableEquilibriumError):
        simulate(blue_params, TrajectoryConfig(steps=100, stride=1, n_trajectories=1))


def test_single_trajectory_has_no_standard_error():
    ensemble = TrajectoryEnsemble(u=np.zeros(4), w=np.ones(4), sample_interval=0.1, stride=1, dt=0.1)

    assert ensemble.mean_w_standard_error() == (1.0, np.inf)
    assert list(ensemble.to_frame().columns) == ["trajectory", "t", "u", "w"]


def test_periodogram_of_white_noise():
    dt = 0.01
    samples = np.random.default_rng(3).standard_normal(2**17)
    series = periodogram(samples, dt)

    assert series.label == "oracle"
    assert series.omegas[0] > 0
    assert series.omegas[-1] == pytest.approx(np.pi / dt)
    # two-sided density of unit-variance white noise
    assert series.values.mean() == pytest.approx(dt, rel=0.02)


def test_periodogram_needs_enough_samples():
    with pytest.raises(InsufficientDataError):
        periodogram(np.zeros(100), 0.01)


def test_histogram_is_normalized():
    samples = np.random.default_rng(5).normal(2.0, 3.0, 50_000)
    frame = histogram(samples, bins=60)
    width = frame["center"].iloc[1] - frame["center"].iloc[0]

    assert list(frame.columns) == ["center", "density"]
    assert frame["density"].sum() * width == pytest.approx(1.0)


def test_ks_distances_accept_the_sampled_law():
    samples = np.random.default_rng(11).normal(1.0, 2.0, 20_000)
    nodes = np.linspace(-11.0, 13.0, 481)
    marginal = stats.norm.pdf(nodes, loc=1.0, scale=2.0)

    assert ks_distance_gaussian(samples, 1.0, 4.0) < 0.02
    assert ks_distance(samples, nodes, marginal) < 0.02
    assert ks_distance(samples, nodes, stats.norm.pdf(nodes, loc=3.0, scale=2.0)) > 0.3


def test_dump_round_trip(tmp_path):
    rng = np.random.default_rng(0)
    ensemble = TrajectoryEnsemble(
        u=rng.standard_normal((2, 5)), w=rng.standard_normal((2, 5)), sample_interval=0.05, stride=5, dt=0.01
    )
    dump = read_dump(write_dump(tmp_path / "trajectories.bin", ensemble))

    assert dump.count == 10
    assert (dump.dt, dump.stride) == (0.05, 5)
    np.testing.assert_array_equal(dump.u, ensemble.u.ravel())
    np.testing.assert_array_equal(dump.w, ensemble.w.ravel())


@pytest.mark.parametrize(
    "payload",
    [
        b"short",
        b"NOTADUMP" + bytes(24),
        MAGIC + (2).to_bytes(4, "little") + bytes(20),
    ],
)
def test_bad_dump_is_rejected(tmp_path, payload):
    path = tmp_path / "bad.bin"
    path.write_bytes(payload)

    with pytest.raises(ImproperlyConfigured):
        read_dump(path)
