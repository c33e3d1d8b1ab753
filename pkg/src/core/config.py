from pathlib import Path

from pydantic_settings import BaseSettings, SettingsConfigDict

ROOT_DIR = str(Path(__file__).parent.parent.parent)


class AppSettings(BaseSettings):
    """Application settings for the omfp project."""

    model_config = SettingsConfigDict(env_file=f"{ROOT_DIR}/.env", env_file_encoding="utf-8")

    # Project Info
    PROJECT_NAME: str = "omfp"
    LOG_LEVEL: str = "INFO"
    OUTPUT_DIR: str = f"{ROOT_DIR}/output"

    # Phase-space grid
    GRID_NX: int = 100
    GRID_NP: int = 100
    GRID_PADDING_SIGMAS: float = 6.0
    FP_SCHEME: str = "central"  # "central" or "upwind"

    # Stationary solve
    STATIONARY_CLIP: float = 1e-14  # relative to the largest weight
    STATIONARY_RESIDUAL_TOL: float = 1e-8  # relative to ||L|| * max weight
    UNDERSHOOT_WARN: float = 1e-4  # negative share of the solved null vector
    UPWIND_HEATING_WARN: float = 0.05  # estimated relative excess of var(w)
    BOUNDARY_MASS_WARN: float = 1e-6

    # Frequency grids, units of Omega_m
    XX_OMEGA_MIN: float = 1e-3
    XX_OMEGA_MAX: float = 5.0
    XX_OMEGA_POINTS: int = 400
    EMISSION_OMEGA_MIN: float = 1e-3
    EMISSION_OMEGA_MAX: float = 10.0
    EMISSION_OMEGA_POINTS: int = 400

    # Symmetric linear grid for the emission sum rule
    SUM_RULE_OMEGA_MAX: float = 8.0
    SUM_RULE_POINTS: int = 800

    # Dissipationless spectra
    HARMONIC_CAP: int = 7

    # Langevin oracle
    LANGEVIN_DT: float = 1e-3
    LANGEVIN_MIN_SAMPLES: int = 65536

    # Execution
    JOBS: int = 1
    SEED: int = 20240607


settings = AppSettings()
