"""Domain types of the phase-space Fokker-Planck discretization."""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np
import pandas as pd
import scipy.sparse as sp
from numpy.typing import NDArray
from pydantic import BaseModel

from omfp_model import ModelParams

MIN_NODES = 16


class Scheme(str, Enum):
    """Transport stencil of the generator."""

    CENTRAL = "central"
    UPWIND = "upwind"


@dataclass(frozen=True)
class PhaseGrid:
    """Uniform cell-centered grid over a rectangular (u, w) window."""

    u_nodes: NDArray[np.float64]
    w_nodes: NDArray[np.float64]

    def __post_init__(self) -> None:
        for name, nodes in (("u", self.u_nodes), ("w", self.w_nodes)):
            if nodes.ndim != 1 or nodes.size < MIN_NODES:
                raise ValueError(f"{name} grid needs at least {MIN_NODES} nodes")
            if not np.all(np.isfinite(nodes)):
                raise ValueError(f"{name} grid is not finite")
            steps = np.diff(nodes)
            if not np.all(steps > 0):
                raise ValueError(f"{name} nodes must be strictly increasing")
            if not np.allclose(steps, steps[0], rtol=1e-9, atol=0.0):
                raise ValueError(f"{name} nodes must be uniformly spaced")

    @classmethod
    def from_window(cls, u_min: float, u_max: float, w_min: float, w_max: float, n_x: int, n_p: int) -> "PhaseGrid":
        """Cell centers of an ``n_x`` by ``n_p`` partition of the window."""
        h_u = (u_max - u_min) / n_x
        h_w = (w_max - w_min) / n_p
        return cls(
            u_nodes=u_min + h_u * (np.arange(n_x) + 0.5),
            w_nodes=w_min + h_w * (np.arange(n_p) + 0.5),
        )

    @property
    def n_u(self) -> int:
        return self.u_nodes.size

    @property
    def n_w(self) -> int:
        return self.w_nodes.size

    @property
    def size(self) -> int:
        return self.n_u * self.n_w

    @property
    def h_u(self) -> float:
        return float(self.u_nodes[1] - self.u_nodes[0])

    @property
    def h_w(self) -> float:
        return float(self.w_nodes[1] - self.w_nodes[0])

    @property
    def cell_area(self) -> float:
        return self.h_u * self.h_w

    @property
    def window(self) -> tuple[float, float, float, float]:
        """Outer cell faces (u_min, u_max, w_min, w_max)."""
        return (
            float(self.u_nodes[0] - 0.5 * self.h_u),
            float(self.u_nodes[-1] + 0.5 * self.h_u),
            float(self.w_nodes[0] - 0.5 * self.h_w),
            float(self.w_nodes[-1] + 0.5 * self.h_w),
        )

    def index(self, i: int | NDArray, j: int | NDArray) -> int | NDArray:
        """Flat index of cell (i, j); w varies fastest."""
        return i * self.n_w + j

    def mesh(self) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        return np.meshgrid(self.u_nodes, self.w_nodes, indexing="ij")

    def edge_mask(self) -> NDArray[np.bool_]:
        mask = np.zeros((self.n_u, self.n_w), dtype=bool)
        mask[[0, -1], :] = True
        mask[:, [0, -1]] = True
        return mask


@dataclass
class Generator:
    """Sparse Fokker-Planck generator acting on cell masses."""

    matrix: sp.csr_matrix
    grid: PhaseGrid
    params: ModelParams
    scheme: Scheme = Scheme.CENTRAL

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    def entries(self) -> tuple[NDArray[np.int64], NDArray[np.int64], NDArray[np.float64]]:
        """(row, col, value) triplets."""
        coo = self.matrix.tocoo()
        return coo.row, coo.col, coo.data

    def column_sums(self) -> NDArray[np.float64]:
        return np.asarray(self.matrix.sum(axis=0)).ravel()

    def norm_inf(self) -> float:
        return float(abs(self.matrix).sum(axis=1).max())

    def __matmul__(self, vector: NDArray) -> NDArray:
        return self.matrix @ vector


class StationaryDiagnostics(BaseModel):
    """Moments and quality measures of a stationary density."""

    mean_u: float
    var_u: float
    mean_w: float
    var_w: float
    fitted_t_eff: float
    """Gibbs temperature implied by var(w) = 2 T."""

    boundary_mass: float
    residual: float | None = None
    """Relative residual of the solved null vector, absent for analytic references."""

    undershoot: float | None = None
    """Share of |weight| the solved null vector carries on negative cells, clipped before normalizing."""

    t_eff_reference: float | None = None


@dataclass
class StationaryState:
    """Normalized phase-space density on a grid: sum(P) * h_u * h_w = 1."""

    grid: PhaseGrid
    density: NDArray[np.float64]
    """Shape (n_u, n_w)."""

    diagnostics: StationaryDiagnostics = field(init=False)
    residual: float | None = None
    undershoot: float | None = None
    t_eff_reference: float | None = None

    def __post_init__(self) -> None:
        self.diagnostics = self._diagnose()

    @classmethod
    def from_masses(
        cls,
        grid: PhaseGrid,
        masses: NDArray[np.float64],
        residual: float | None = None,
        t_eff_reference: float | None = None,
        undershoot: float | None = None,
    ) -> "StationaryState":
        weights = np.asarray(masses, dtype=float).reshape(grid.n_u, grid.n_w)
        weights = weights / weights.sum()
        return cls(
            grid=grid,
            density=weights / grid.cell_area,
            residual=residual,
            undershoot=undershoot,
            t_eff_reference=t_eff_reference,
        )

    @property
    def masses(self) -> NDArray[np.float64]:
        """Flat probability masses in generator ordering."""
        return (self.density * self.grid.cell_area).ravel()

    def marginal_u(self) -> NDArray[np.float64]:
        return self.density.sum(axis=1) * self.grid.h_w

    def marginal_w(self) -> NDArray[np.float64]:
        return self.density.sum(axis=0) * self.grid.h_u

    def expectation(self, values: NDArray) -> complex | float:
        """Grid quadrature of ``values`` (flat or (n_u, n_w)) against the density."""
        return np.sum(np.asarray(values).ravel() * self.masses)

    def distance(self, other: "StationaryState") -> float:
        """Sup-norm distance relative to the peak of this density."""
        return float(np.max(np.abs(self.density - other.density)) / np.max(self.density))

    def to_frame(self) -> pd.DataFrame:
        u_mesh, w_mesh = self.grid.mesh()
        return pd.DataFrame({"u": u_mesh.ravel(), "w": w_mesh.ravel(), "P": self.density.ravel()})

    def _diagnose(self) -> StationaryDiagnostics:
        masses = self.density * self.grid.cell_area
        mu = masses.sum(axis=1)
        mw = masses.sum(axis=0)
        mean_u = float(np.dot(mu, self.grid.u_nodes))
        mean_w = float(np.dot(mw, self.grid.w_nodes))
        var_u = float(np.dot(mu, (self.grid.u_nodes - mean_u) ** 2))
        var_w = float(np.dot(mw, (self.grid.w_nodes - mean_w) ** 2))
        return StationaryDiagnostics(
            mean_u=mean_u,
            var_u=var_u,
            mean_w=mean_w,
            var_w=var_w,
            fitted_t_eff=0.5 * var_w,
            boundary_mass=float(masses[self.grid.edge_mask()].sum()),
            residual=self.residual,
            undershoot=self.undershoot,
            t_eff_reference=self.t_eff_reference,
        )


@dataclass
class StationaryProblem:
    """Grid, generator and stationary state of one parameter point."""

    grid: PhaseGrid
    generator: Generator
    state: StationaryState
