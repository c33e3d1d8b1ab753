"""Run configuration: presets, ``key = value`` files and command-line overrides."""

from pathlib import Path
from typing import Any, Literal

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, Field, model_validator

from core.config import settings
from core.errors import ImproperlyConfigured
from core.lib import parse_axis
from omfp_langevin import TrajectoryConfig
from omfp_model import ModelParams

_KAPPA_SUFFIXES = ("kappa", "k")

# Named parameter sets; lambda = 0.01, kappa = 100 and k_B T_b = 10 throughout.
PRESETS: dict[str, dict[str, str]] = {
    "region-map": {
        "n_max_axis": "0:200:101",
        "delta_over_kappa_axis": "-2.5:0.5:151",
        "q_values": "20,100,1000",
    },
    "quartic-point": {
        "gamma_m": "1e-3",
        "quartic_point": "true",
    },
    "softening-sweep": {
        "gamma_m": "1e-3",
        "tuning_line": "true",
        "n_tilde_axis": "0.005:2:41",
        "omega_min": "1e-3",
        "omega_max": "5",
    },
    "detuning-scan": {
        "quartic_point": "true",
        "delta_over_kappa_axis": "-2:0:81",
        "q_values": "20,100,1000",
    },
    "emission-sweep": {
        "gamma_m": "1e-3",
        "tuning_line": "true",
        "n_tilde_axis": "0.005:2:41",
        "omega_min": "1e-3",
        "omega_max": "10",
    },
    "population-sweep": {
        "gamma_m": "1e-3",
        "tuning_line": "true",
        "n_tilde_axis": "0.005:2:41",
    },
}

# Figure-numbered names accepted wherever a preset is
PRESET_ALIASES: dict[str, str] = {
    "fig1": "region-map",
    "fig4": "quartic-point",
    "fig5": "softening-sweep",
    "fig6": "detuning-scan",
    "fig7": "emission-sweep",
    "fig8": "population-sweep",
}

PRESET_DESCRIPTIONS = {
    "region-map": "Bistability wedge and instability lobes over (n_max, Delta), Q = 20, 100, 1000",
    "quartic-point": "Stationary distribution and quartic spectrum at the quartic point",
    "softening-sweep": "Displacement spectra along the tuning line, n~ in [0, 2]",
    "detuning-scan": "Cavity population versus Delta at n_max*, Q = 20, 100, 1000",
    "emission-sweep": "Emission spectra along the tuning line",
    "population-sweep": "Coherent and incoherent population along the tuning line",
}


class RunConfig(BaseModel):
    """Fully resolved settings of one CLI run."""

    model_config = ConfigDict(frozen=True, extra="forbid", populate_by_name=True)

    # Model
    kappa: float = 100.0
    gamma_m: float = 1e-3
    lam: float = Field(default=0.01, alias="lambda")
    n_max: float = 0.0
    delta: float = 0.0
    T_b: float = 10.0
    n_th_a: float = 0.0
    quartic_point: bool = False
    """Override n_max and delta with the quartic point."""

    tuning_line: bool = False
    """Override delta with the tuning-line value for n_max."""

    # Grid
    n_x: int = settings.GRID_NX
    n_p: int = settings.GRID_NP
    padding: float = settings.GRID_PADDING_SIGMAS
    scheme: Literal["central", "upwind"] = settings.FP_SCHEME  # type: ignore[assignment]

    # Sweep axes, "start:stop:count" or comma lists
    n_max_axis: str = ""
    delta_axis: str = ""
    delta_over_kappa_axis: str = ""
    n_tilde_axis: str = ""
    q_values: str = ""

    # Frequency grid; command defaults apply where unset
    omega_min: float | None = None
    omega_max: float | None = None
    omega_points: int | None = None
    omega_spacing: Literal["log", "linear"] = "log"
    harmonics: int = Field(default=settings.HARMONIC_CAP, ge=1)

    # Langevin oracle
    dt: float = settings.LANGEVIN_DT
    steps: int = 200_000
    burn_in: int = 20_000
    n_trajectories: int = 8
    stride: int = 10
    seed: int = settings.SEED
    allow_unstable: bool = False
    dump: bool = False

    out: str = settings.OUTPUT_DIR
    jobs: int = Field(default=settings.JOBS, ge=1)

    @model_validator(mode="before")
    @classmethod
    def _detuning_in_kappa_units(cls, data: Any) -> Any:
        if not isinstance(data, dict):
            return data
        raw = data.get("delta")
        if isinstance(raw, str):
            text = raw.strip().lower()
            for suffix in _KAPPA_SUFFIXES:
                if text.endswith(suffix):
                    kappa = float(data.get("kappa", cls.model_fields["kappa"].default))
                    try:
                        data = {**data, "delta": float(text[: -len(suffix)].strip() or "1") * kappa}
                    except ValueError as exc:
                        raise ImproperlyConfigured(f"Malformed detuning {raw!r}") from exc
                    break
        return data

    def model_params(self, **changes: Any) -> ModelParams:
        params = ModelParams(
            kappa=self.kappa,
            gamma_m=self.gamma_m,
            lam=self.lam,
            n_max=self.n_max,
            delta=self.delta,
            T_b=self.T_b,
            n_th_a=self.n_th_a,
        )
        if self.quartic_point:
            params = params.replace(n_max=params.n_max_star, delta=params.delta_star)
        elif self.tuning_line:
            params = params.replace(delta=params.tuning_line_delta())
        return params.replace(**changes) if changes else params

    def detuning_axis(self) -> NDArray[np.float64]:
        """Delta samples in units of Omega_m from whichever detuning axis is set."""
        if self.delta_axis and self.delta_over_kappa_axis:
            raise ImproperlyConfigured("Set delta_axis or delta_over_kappa_axis, not both")
        if self.delta_over_kappa_axis:
            return parse_axis(self.delta_over_kappa_axis) * self.kappa
        return parse_axis(self.delta_axis)

    def quality_factors(self) -> list[float]:
        values = parse_axis(self.q_values) if self.q_values else np.array([])
        if np.any(values <= 0):
            raise ImproperlyConfigured(f"Quality factors must be positive, got {self.q_values!r}")
        return [float(q) for q in values]

    def tuning_line_points(self) -> list[tuple[float, ModelParams]]:
        """(n~, params) along the tuning line for every n~ on ``n_tilde_axis``."""
        base = self.model_params()
        if base.lam == 0:
            raise ImproperlyConfigured("Tuning-line sweeps need lambda > 0")
        points = []
        for n_tilde in parse_axis(self.n_tilde_axis):
            if n_tilde < 0:
                raise ImproperlyConfigured(f"n_tilde must be >= 0, got {n_tilde}")
            n_max = float(n_tilde) * base.n_max_star
            points.append((float(n_tilde), base.replace(n_max=n_max, delta=base.tuning_line_delta(n_max))))
        return points

    def omega_grid(self, default_min: float, default_max: float, default_points: int) -> NDArray[np.float64]:
        low = default_min if self.omega_min is None else self.omega_min
        high = default_max if self.omega_max is None else self.omega_max
        points = default_points if self.omega_points is None else self.omega_points
        if not 0 < low < high or points < 2:
            raise ImproperlyConfigured(f"Invalid frequency grid [{low}, {high}] with {points} points")
        if self.omega_spacing == "log":
            return np.geomspace(low, high, points)
        return np.linspace(low, high, points)

    def grid_options(self) -> dict[str, Any]:
        return {"n_x": self.n_x, "n_p": self.n_p, "padding_sigmas": self.padding, "scheme": self.scheme}

    def trajectory_config(self) -> TrajectoryConfig:
        return TrajectoryConfig(
            dt=self.dt,
            steps=self.steps,
            burn_in=self.burn_in,
            seed=self.seed,
            n_trajectories=self.n_trajectories,
            stride=self.stride,
        )

    def resolved(self) -> dict[str, Any]:
        return self.model_dump(by_alias=True)


def parse_assignment(line: str, origin: str) -> tuple[str, str]:
    key, sep, value = line.partition("=")
    if not sep or not key.strip():
        raise ImproperlyConfigured(f"{origin}: expected 'key = value', got {line!r}")
    return key.strip(), value.strip()


def parse_config_file(path: str | Path) -> dict[str, str]:
    """
    Read UTF-8 ``key = value`` lines; ``#`` starts a comment.

    Raises:
        ImproperlyConfigured: If the file is missing or a line has no '='
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ImproperlyConfigured(f"Cannot read config file {path}: {exc}") from exc
    values: dict[str, str] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            key, value = parse_assignment(line, f"{path}:{number}")
            values[key] = value
    return values


def resolve_config(
    preset: str | None = None,
    config_file: str | Path | None = None,
    overrides: tuple[str, ...] | list[str] = (),
    **flags: Any,
) -> RunConfig:
    """
    Merge preset, then config file, then ``--set`` overrides, then explicit flags.

    Raises:
        ImproperlyConfigured: For an unknown preset or a malformed line
        pydantic.ValidationError: For unknown keys or values of the wrong type
    """
    merged: dict[str, Any] = {}
    if preset:
        name = PRESET_ALIASES.get(preset, preset)
        if name not in PRESETS:
            choices = ", ".join([*PRESETS, *PRESET_ALIASES])
            raise ImproperlyConfigured(f"Unknown preset {preset!r}; choose from {choices}")
        merged.update(PRESETS[name])
    if config_file:
        merged.update(parse_config_file(config_file))
    for item in overrides:
        key, value = parse_assignment(item, "--set")
        merged[key] = value
    merged.update({key: value for key, value in flags.items() if value is not None})
    return RunConfig(**merged)
