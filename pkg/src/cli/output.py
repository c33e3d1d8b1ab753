"""Run outputs: CSV tables, optional binary artifacts and the run manifest.

Everything is computed before :meth:`RunOutput.write` touches the disk, so a
failing run leaves no partial files behind.
"""

import time
from collections.abc import Callable
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import pandas as pd

from cli.run_config import RunConfig
from core import __version__
from core.lib import config_hash, ensure_dir_exists
from core.logger_utils import get_logger

logger = get_logger(__name__)


def _format_value(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def manifest_lines(command: str, config: RunConfig, wall_time: float, files: list[str]) -> list[str]:
    """
    Manifest as ``key = value`` lines.

    Run metadata is written as comments, so the manifest itself is a valid
    ``--config`` file that reproduces the run.
    """
    resolved = config.resolved()
    header = {
        "command": command,
        "version": __version__,
        "wall_time_s": f"{wall_time:.3f}",
        "config_hash": config_hash(resolved),
        "files": ",".join(files),
    }
    lines = [f"# {key} = {value}" for key, value in header.items()]
    lines += [f"{key} = {_format_value(value)}" for key, value in resolved.items() if value is not None]
    return lines


@dataclass
class RunOutput:
    """Tables and artifacts of one command, written together at the end."""

    command: str
    config: RunConfig
    tables: dict[str, pd.DataFrame] = field(default_factory=dict)
    artifacts: dict[str, Callable[[Path], Any]] = field(default_factory=dict)
    """File name -> writer called with the target path."""

    started: float = field(default_factory=time.perf_counter)

    def add_table(self, name: str, frame: pd.DataFrame) -> None:
        self.tables[f"{name}.csv"] = frame

    def add_artifact(self, name: str, writer: Callable[[Path], Any]) -> None:
        self.artifacts[name] = writer

    def write(self) -> Path:
        out_dir = ensure_dir_exists(self.config.out)
        files = list(self.tables) + list(self.artifacts)
        for name, frame in self.tables.items():
            frame.to_csv(out_dir / name, index=False)
        for name, writer in self.artifacts.items():
            writer(out_dir / name)
        manifest = out_dir / f"manifest_{self.command}.txt"
        wall_time = time.perf_counter() - self.started
        lines = manifest_lines(self.command, self.config, wall_time, files)
        manifest.write_text("\n".join(lines) + "\n", encoding="utf-8")
        logger.info(
            "Run written", command=self.command, out=str(out_dir), files=len(files), wall_time=round(wall_time, 3)
        )
        return out_dir
