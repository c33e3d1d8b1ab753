"""omfp command-line interface.

    omfp <command> [--preset NAME] [--set key=value]... [--config FILE] [--out DIR] [--jobs N]

Exit codes: 0 success, 2 configuration or precondition error, 3 no damped
stable state, 4 solver failure.
"""

import math
from collections.abc import Callable
from typing import Any

import click
import numpy as np
import pandas as pd
from pydantic import ValidationError
from rich.table import Table

from cli.output import RunOutput
from cli.run_config import PRESET_ALIASES, PRESET_DESCRIPTIONS, PRESETS, RunConfig, resolve_config
from cli.sweeps import run_sweep
from core import __version__
from core.config import settings
from core.errors import ImproperlyConfigured, NegativeDampingError, NoStableEquilibriumError, OmfpBaseException
from core.lib import parse_axis
from core.logger_utils import configure_logger, console, get_logger
from omfp_analytic import (
    anharmonic_potential,
    dissipationless_spectrum,
    quartic_spectrum,
    weak_anharmonic_spectrum,
)
from omfp_equilibria import equilibrium_positions, stability_region_map
from omfp_fokker_planck import gibbs_reference, gibbs_temperature, orbit_averaged_reference, stationary_problem
from omfp_langevin import histogram, ks_distance, periodogram, simulate, write_dump
from omfp_model import ModelParams
from omfp_spectra import (
    SpectrumSeries,
    bare_cavity_population,
    displacement_spectrum,
    emission_spectrum,
    population_sample,
)

logger = get_logger(__name__)

SPECTRUM_KINDS = ("xx", "cavity", "analytic-quartic", "analytic-weak", "analytic-dissipationless")
_UNSTABLE = (NoStableEquilibriumError, NegativeDampingError)


def run_options(fn: Callable) -> Callable:
    """Options shared by every computing command."""
    options = [
        click.option("--preset", type=click.Choice(sorted([*PRESETS, *PRESET_ALIASES])), help="Named parameter set."),
        click.option("--set", "overrides", multiple=True, metavar="KEY=VALUE", help="Override one config key."),
        click.option("--config", "config_file", type=click.Path(dir_okay=False), help="key = value config file."),
        click.option("--out", type=click.Path(file_okay=False), help="Output directory."),
        click.option("--jobs", type=int, help="Worker threads for sweeps and frequency grids."),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


def _execute(command: str, options: dict[str, Any], build: Callable[[RunConfig], RunOutput]) -> None:
    try:
        config = resolve_config(
            options["preset"], options["config_file"], options["overrides"], out=options["out"], jobs=options["jobs"]
        )
        logger.info("Run started", command=command, config=config.resolved())
        build(config).write()
    except OmfpBaseException as exc:
        logger.error("Run failed", command=command, error=type(exc).__name__, exit_code=exc.exit_code)
        click.echo(f"Error: {exc}", err=True)
        raise SystemExit(exc.exit_code) from exc
    except ValidationError as exc:
        click.echo(f"Error: invalid configuration\n{exc}", err=True)
        raise SystemExit(2) from exc


@click.group()
@click.version_option(__version__, prog_name="omfp")
@click.option("--log-level", default=settings.LOG_LEVEL, show_default=True, help="Logging level.")
def cli(log_level: str) -> None:
    """Stationary states and spectra of a strongly driven optomechanical cavity."""
    configure_logger(log_level)


@cli.command()
@run_options
def regions(**options: Any) -> None:
    """Bistability and instability map over (n_max, Delta)."""

    def build(config: RunConfig) -> RunOutput:
        p = config.model_params()
        n_axis = parse_axis(config.n_max_axis) if config.n_max_axis else np.array([p.n_max])
        d_axis = config.detuning_axis()
        if d_axis.size == 0:
            d_axis = np.array([p.delta])
        region = stability_region_map(p, n_axis, d_axis, config.quality_factors(), jobs=config.jobs)
        output = RunOutput("regions", config)
        output.add_table("regions", region.to_frame())
        return output

    _execute("regions", options, build)


@cli.command()
@run_options
def stationary(**options: Any) -> None:
    """Stationary phase-space density, its marginals and the Gibbs and orbit-averaged references."""

    def build(config: RunConfig) -> RunOutput:
        p = config.model_params()
        problem = stationary_problem(p, **config.grid_options())
        state, grid = problem.state, problem.grid
        t_gibbs = gibbs_temperature(p)
        gibbs = gibbs_reference(p, grid, t_gibbs) if t_gibbs > 0 else None
        orbit = orbit_averaged_reference(p, grid) if len(equilibrium_positions(p).minima) == 1 else None

        output = RunOutput("stationary", config)
        output.add_table("stationary", state.to_frame())
        output.add_table(
            "marginal_u",
            pd.DataFrame(
                {
                    "u": grid.u_nodes,
                    "P": state.marginal_u(),
                    "P_gibbs": gibbs.marginal_u() if gibbs else np.nan,
                    "P_orbit": orbit.marginal_u() if orbit else np.nan,
                }
            ),
        )
        output.add_table(
            "marginal_w",
            pd.DataFrame(
                {
                    "w": grid.w_nodes,
                    "P": state.marginal_w(),
                    "P_gibbs": gibbs.marginal_w() if gibbs else np.nan,
                    "P_orbit": orbit.marginal_w() if orbit else np.nan,
                }
            ),
        )
        diagnostics = state.diagnostics.model_dump()
        diagnostics["gibbs_distance"] = state.distance(gibbs) if gibbs else math.nan
        diagnostics["orbit_distance"] = state.distance(orbit) if orbit else math.nan
        diagnostics["orbit_t_eff"] = orbit.diagnostics.fitted_t_eff if orbit else math.nan
        output.add_table("diagnostics", pd.DataFrame([diagnostics]))
        return output

    _execute("stationary", options, build)


def _numeric_series(which: str, p: ModelParams, omegas: np.ndarray, config: RunConfig, jobs: int) -> SpectrumSeries:
    if which == "xx":
        return displacement_spectrum(p, omegas, jobs=jobs, **config.grid_options())
    return emission_spectrum(p, omegas, jobs=jobs, **config.grid_options())


def _analytic_series(which: str, p: ModelParams, omegas: np.ndarray, config: RunConfig) -> SpectrumSeries:
    if which == "analytic-quartic":
        return quartic_spectrum(p, omegas)
    if which == "analytic-weak":
        return weak_anharmonic_spectrum(p, omegas)
    harmonics = tuple(range(1, config.harmonics + 1, 2))
    return dissipationless_spectrum(anharmonic_potential(p), omegas, harmonics=harmonics, jobs=config.jobs)


def _spectrum_sweep(which: str, config: RunConfig, omegas: np.ndarray, output: RunOutput) -> None:
    points = config.tuning_line_points()

    def task(point: tuple[float, ModelParams]) -> SpectrumSeries | None:
        n_tilde, p = point
        try:
            return _numeric_series(which, p, omegas, config, jobs=1)
        except _UNSTABLE as exc:
            logger.warning("Sweep point skipped", n_tilde=n_tilde, reason=str(exc))
            return None

    results = run_sweep(points, task, jobs=config.jobs)
    frames, coherent = [], []
    for (n_tilde, _), series in zip(points, results):
        if series is None:
            continue
        frames.append(pd.DataFrame({"param": n_tilde, "omega": series.omegas, "value": series.values}))
        if series.coherent_weight is not None:
            coherent.append({"param": n_tilde, "coherent_weight": series.coherent_weight})
    if not frames:
        raise NoStableEquilibriumError("No point of the sweep has a damped stable state")
    output.add_table(f"spectrum_{which}_sweep", pd.concat(frames, ignore_index=True))
    if coherent:
        output.add_table(f"spectrum_{which}_coherent", pd.DataFrame(coherent))


@cli.command()
@click.option("--which", type=click.Choice(SPECTRUM_KINDS), default="xx", show_default=True)
@click.option("--compare", is_flag=True, help="Add the numerical displacement spectrum next to an analytic one.")
@run_options
def spectrum(which: str, compare: bool, **options: Any) -> None:
    """Displacement, emission or analytic spectra, single point or tuning-line sweep."""

    def build(config: RunConfig) -> RunOutput:
        output = RunOutput("spectrum", config)
        if which == "cavity":
            omegas = config.omega_grid(
                settings.EMISSION_OMEGA_MIN, settings.EMISSION_OMEGA_MAX, settings.EMISSION_OMEGA_POINTS
            )
        else:
            omegas = config.omega_grid(settings.XX_OMEGA_MIN, settings.XX_OMEGA_MAX, settings.XX_OMEGA_POINTS)

        if config.n_tilde_axis:
            if which not in ("xx", "cavity"):
                raise ImproperlyConfigured("Tuning-line sweeps are available for --which xx and cavity only")
            _spectrum_sweep(which, config, omegas, output)
            return output

        p = config.model_params()
        if which in ("xx", "cavity"):
            if compare:
                raise ImproperlyConfigured("--compare pairs an analytic spectrum with the numerical one")
            series = _numeric_series(which, p, omegas, config, jobs=config.jobs)
            output.add_table(f"spectrum_{which}", series.to_frame())
            if series.coherent_weight is not None:
                output.add_table(
                    f"spectrum_{which}_coherent", pd.DataFrame([{"coherent_weight": series.coherent_weight}])
                )
            return output

        analytic = _analytic_series(which, p, omegas, config)
        if compare:
            numeric = _numeric_series("xx", p, omegas, config, jobs=config.jobs)
            frame = pd.DataFrame({"omega": omegas, "analytic": analytic.values, "numeric": numeric.values})
        else:
            frame = analytic.to_frame()
        output.add_table(f"spectrum_{which}", frame)
        return output

    _execute("spectrum", options, build)


@cli.command()
@run_options
def population(**options: Any) -> None:
    """Cavity population with its coherent and incoherent parts, over Delta or the tuning line."""

    def build(config: RunConfig) -> RunOutput:
        base = config.model_params()
        if config.n_tilde_axis:
            points = config.tuning_line_points()
        else:
            axis = config.detuning_axis()
            points = [(float(d), base.replace(delta=float(d))) for d in (axis if axis.size else [base.delta])]
        qs = config.quality_factors()
        tasks = [(value, p.replace(gamma_m=1.0 / q)) for q in qs for value, p in points] if qs else points

        def task(item: tuple[float, ModelParams]) -> dict[str, Any]:
            value, p = item
            sample = population_sample(p, **config.grid_options())
            return {
                "q": 1.0 / p.gamma_m if p.gamma_m > 0 else math.inf,
                "param": value,
                "n_max": p.n_max,
                "delta": p.delta,
                "population": sample.population,
                "coherent": sample.coherent,
                "incoherent": sample.incoherent,
                "coherent_plus_incoherent": sample.coherent + sample.incoherent,
                "equilibrium": sample.equilibrium,
                "bare": bare_cavity_population(p.delta, p.kappa),
                "status": sample.status.value,
            }

        output = RunOutput("population", config)
        output.add_table("population", pd.DataFrame(run_sweep(tasks, task, jobs=config.jobs)))
        return output

    _execute("population", options, build)


@cli.command()
@run_options
def oracle(**options: Any) -> None:
    """Langevin trajectories: u histogram, periodogram and agreement with the stationary state."""

    def build(config: RunConfig) -> RunOutput:
        p = config.model_params()
        ensemble = simulate(p, config.trajectory_config(), allow_unstable=config.allow_unstable, jobs=config.jobs)
        output = RunOutput("oracle", config)

        hist = histogram(ensemble.u, bins=100)
        ks_fp = math.nan
        try:
            problem = stationary_problem(p, **config.grid_options())
        except _UNSTABLE:
            problem = None
        if problem is not None:
            marginal = problem.state.marginal_u()
            hist["fp_density"] = np.interp(hist["center"], problem.grid.u_nodes, marginal, left=0.0, right=0.0)
            ks_fp = ks_distance(ensemble.u, problem.grid.u_nodes, marginal)
        output.add_table("oracle_histogram_u", hist)
        output.add_table("oracle_periodogram", periodogram(ensemble.u, ensemble.sample_interval).to_frame())

        mean_w, stderr_w = ensemble.mean_w_standard_error()
        output.add_table(
            "oracle_summary",
            pd.DataFrame(
                [
                    {
                        "samples": ensemble.total_samples,
                        "mean_u": float(ensemble.u.mean()),
                        "var_u": float(ensemble.u.var()),
                        "mean_w": mean_w,
                        "mean_w_stderr": stderr_w,
                        "var_w": float(ensemble.w.var()),
                        "ks_fokker_planck": ks_fp,
                    }
                ]
            ),
        )
        if config.dump:
            output.add_artifact("trajectories.bin", lambda path: write_dump(path, ensemble))
        return output

    _execute("oracle", options, build)


@cli.command()
def presets() -> None:
    """List the named parameter sets."""
    table = Table(title="omfp presets")
    table.add_column("name", style="bold")
    table.add_column("alias")
    table.add_column("description")
    table.add_column("settings")
    aliases = {name: alias for alias, name in PRESET_ALIASES.items()}
    for name, values in PRESETS.items():
        settings_text = ", ".join(f"{k}={v}" for k, v in values.items())
        table.add_row(name, aliases.get(name, ""), PRESET_DESCRIPTIONS[name], settings_text)
    console.print(table)
    for name in PRESETS:
        click.echo(name)
