"""Common helpers shared by the omfp packages."""

import hashlib
import json
from pathlib import Path
from typing import Any

import numpy as np
from numpy.typing import ArrayLike, NDArray

from core.errors import ImproperlyConfigured


def ensure_dir_exists(path: str | Path) -> Path:
    """
    Ensure a directory exists, creating it if necessary.

    Args:
        path: Path to the directory

    Returns:
        Path object pointing to the directory
    """
    path_obj = Path(path)
    path_obj.mkdir(parents=True, exist_ok=True)
    return path_obj


def coth_half_inverse(temperature: ArrayLike) -> NDArray[np.float64]:
    """
    Evaluate coth(1 / (2T)) for temperatures in units of hbar*Omega_m/k_B.

    Written as 1 + 2/expm1(1/T) so that large T does not lose precision and
    T = 0 gives the zero-point value 1 without overflow.

    Args:
        temperature: Temperature(s), must be >= 0

    Returns:
        coth(1/(2T)) as an array
    """
    t = np.asarray(temperature, dtype=float)
    with np.errstate(divide="ignore", over="ignore"):
        inv = np.where(t > 0, 1.0 / np.where(t > 0, t, 1.0), np.inf)
        return 1.0 + 2.0 / np.expm1(inv)


def acoth_to_temperature(ratio: ArrayLike) -> NDArray[np.float64]:
    """
    Invert coth(1/(2T)) = ratio for T.

    Uses 1/(2T) = atanh(1/ratio) = log1p(2/(ratio - 1)) / 2.

    Args:
        ratio: Values of coth(1/(2T)); must exceed 1

    Returns:
        Temperature(s) in units of hbar*Omega_m/k_B
    """
    r = np.asarray(ratio, dtype=float)
    return 1.0 / np.log1p(2.0 / (r - 1.0))


def parse_axis(spec: str) -> NDArray[np.float64]:
    """
    Parse a sweep axis written as ``start:stop:count`` or a comma list.

    Args:
        spec: Axis description

    Returns:
        Monotone array of axis samples

    Raises:
        ImproperlyConfigured: If the axis is malformed, empty or not monotone

    Example:
        >>> parse_axis("0:1:3")
        array([0. , 0.5, 1. ])
        >>> parse_axis("20, 100, 1000")
        array([  20.,  100., 1000.])
    """
    text = spec.strip()
    if not text:
        return np.array([], dtype=float)
    try:
        if ":" in text:
            parts = text.split(":")
            if len(parts) != 3:
                raise ValueError(f"expected start:stop:count, got {spec!r}")
            start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
            if count < 1:
                raise ValueError("count must be >= 1")
            values = np.linspace(start, stop, count)
        else:
            values = np.array([float(item) for item in text.split(",") if item.strip()], dtype=float)
    except ValueError as exc:
        raise ImproperlyConfigured(f"Malformed axis {spec!r}: {exc}") from exc

    if values.size > 1:
        steps = np.diff(values)
        if not (np.all(steps > 0) or np.all(steps < 0)):
            raise ImproperlyConfigured(f"Axis {spec!r} is not strictly monotone")
    return values


def config_hash(payload: dict[str, Any]) -> str:
    """
    Short stable hash of a resolved configuration.

    Args:
        payload: JSON-serializable mapping

    Returns:
        First ten hex digits of the sha1 of the sorted JSON dump
    """
    return hashlib.sha1(json.dumps(payload, sort_keys=True, default=str).encode()).hexdigest()[:10]
