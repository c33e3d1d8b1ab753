"""Binary sample dump.

Layout, little-endian: 8-byte magic b"OMFPTRJ\\0", uint32 version, float64
dt (sample interval), uint32 stride, uint64 count, then ``count`` float64
(u, w) pairs stored trajectory after trajectory.
"""

import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from numpy.typing import NDArray

from core.errors import ImproperlyConfigured
from core.logger_utils import get_logger
from omfp_langevin.models import TrajectoryEnsemble

logger = get_logger(__name__)

MAGIC = b"OMFPTRJ\0"
VERSION = 1
_HEADER = struct.Struct("<8sIdIQ")
_PAIR = np.dtype("<f8")


@dataclass(frozen=True)
class SampleDump:
    dt: float
    stride: int
    u: NDArray[np.float64]
    w: NDArray[np.float64]

    @property
    def count(self) -> int:
        return self.u.size


def write_dump(path: str | Path, ensemble: TrajectoryEnsemble) -> Path:
    path = Path(path)
    pairs = np.column_stack([ensemble.u.ravel(), ensemble.w.ravel()]).astype(_PAIR)
    with path.open("wb") as handle:
        handle.write(_HEADER.pack(MAGIC, VERSION, ensemble.sample_interval, ensemble.stride, pairs.shape[0]))
        handle.write(pairs.tobytes())
    logger.debug("Sample dump written", path=str(path), count=pairs.shape[0])
    return path


def read_dump(path: str | Path) -> SampleDump:
    """
    Raises:
        ImproperlyConfigured: If the magic, version or payload length does not match
    """
    raw = Path(path).read_bytes()
    if len(raw) < _HEADER.size:
        raise ImproperlyConfigured(f"{path} is too short for a sample dump header")
    magic, version, dt, stride, count = _HEADER.unpack_from(raw)
    if magic != MAGIC:
        raise ImproperlyConfigured(f"{path} is not a sample dump (magic {magic!r})")
    if version != VERSION:
        raise ImproperlyConfigured(f"Unsupported dump version {version}")
    payload = np.frombuffer(raw, dtype=_PAIR, offset=_HEADER.size)
    if payload.size != 2 * count:
        raise ImproperlyConfigured(f"Dump declares {count} pairs but holds {payload.size / 2:g}")
    pairs = payload.reshape(count, 2)
    return SampleDump(dt=dt, stride=stride, u=pairs[:, 0].copy(), w=pairs[:, 1].copy())
