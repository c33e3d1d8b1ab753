import pytest

from omfp_model import ModelParams

# Small grids keep the sparse solves fast; the presets use 100 x 100
SMALL_GRID = {"n_x": 48, "n_p": 48}


@pytest.fixture
def harmonic_params() -> ModelParams:
    """Uncoupled oscillator: exact Gaussian stationary state and Lorentzian spectrum."""
    return ModelParams(lam=0.0, gamma_m=0.2, T_b=10.0)


@pytest.fixture
def quartic_params() -> ModelParams:
    return ModelParams.at_quartic_point()


@pytest.fixture
def softened_params() -> ModelParams:
    """Tuning line at half the quartic-point drive, Omega_bar = sqrt(1/2)."""
    base = ModelParams()
    return ModelParams.on_tuning_line(0.5 * base.n_max_star)


@pytest.fixture
def blue_params() -> ModelParams:
    """Blue-detuned drive whose only equilibrium is self-oscillating."""
    return ModelParams(n_max=50.0, delta=30.0)


@pytest.fixture
def small_grid() -> dict[str, int]:
    return dict(SMALL_GRID)
