"""Finite-volume Fokker-Planck generator on a phase grid.

The generator acts on cell masses and is assembled as a sum of face
transfers: a face between cells a and b carries the mass rate
R = alpha*P_a + beta*P_b from a to b, which adds alpha to L[b, a] and
beta to L[b, b] and removes them from L[a, a] and L[a, b]. Every column
therefore sums to zero, whatever the stencil. Faces on the window edge
carry no flux (reflecting walls).
"""

import math
import warnings

import numpy as np
import scipy.sparse as sp
from numpy.typing import NDArray

from core.config import settings
from core.errors import DiscretizationWarning
from core.logger_utils import get_logger
from omfp_equilibria import equilibrium_positions
from omfp_fokker_planck.models import Generator, PhaseGrid, Scheme
from omfp_model import ModelParams, effective_temperature, static_force, total_damping, total_diffusion

logger = get_logger(__name__)


def fitted_flux_coefficients(
    velocity: NDArray[np.float64], diffusion: NDArray[np.float64], h: float
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """
    Exponentially fitted (Scharfetter-Gummel) face coefficients.

    For drift ``velocity`` and diffusion ``diffusion`` (flux v*rho - d*rho'),
    the face flux is c_a*rho_a - c_b*rho_b with
    c_a = max(v, 0) + g and c_b = max(-v, 0) + g, g = |v| / expm1(|v| h / d).
    The limit d -> 0 is plain upwinding; v -> 0 is central diffusion d/h.
    """
    speed = np.abs(velocity)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        peclet = np.where(diffusion > 0, speed * h / np.where(diffusion > 0, diffusion, 1.0), np.inf)
        g = np.where(
            speed > 0,
            speed / np.expm1(np.where(speed > 0, peclet, 1.0)),
            diffusion / h,
        )
    g = np.where(np.isfinite(g), g, 0.0)
    return np.maximum(velocity, 0.0) + g, np.maximum(-velocity, 0.0) + g


class _FaceAssembler:
    """Collects face transfers into COO triplets."""

    def __init__(self) -> None:
        self._rows: list[NDArray] = []
        self._cols: list[NDArray] = []
        self._vals: list[NDArray] = []

    def add(self, a: NDArray, b: NDArray, alpha: NDArray, beta: NDArray) -> None:
        self._rows += [b, a, b, a]
        self._cols += [a, a, b, b]
        self._vals += [alpha, -alpha, beta, -beta]

    def build(self, size: int) -> sp.csr_matrix:
        rows = np.concatenate(self._rows)
        cols = np.concatenate(self._cols)
        vals = np.concatenate(self._vals)
        return sp.coo_matrix((vals, (rows, cols)), shape=(size, size)).tocsr()


def upwind_heating(p: ModelParams, grid: PhaseGrid) -> float:
    """
    Estimated relative excess of var(w) caused by upwinding du = w dt.

    First-order upwinding adds a position diffusion |w| h_u / 2. In a well
    damped at rate Gamma this raises var(w) by <|w|> h_u / (2 Gamma), which is
    h_u / (2 Gamma sqrt(pi T)) relative to 2 T. NaN without a damped minimum.
    """
    best = equilibrium_positions(p).deepest_usable()
    if best is None:
        return math.nan
    gamma = float(total_damping(best.u, p))
    t_eff = effective_temperature(p, best.u)
    if t_eff <= 0:
        return math.nan
    return grid.h_u / (2.0 * gamma * math.sqrt(math.pi * t_eff))


def _warn_on_upwind_heating(p: ModelParams, grid: PhaseGrid, limit: float) -> None:
    heating = upwind_heating(p, grid)
    if not heating > limit:
        return
    needed = math.ceil(grid.n_u * heating / limit)
    warnings.warn(
        f"Upwind transport heats var(w) by about {heating:.0%}; it needs n_x >= {needed} on this window",
        DiscretizationWarning,
        stacklevel=3,
    )


def assemble_generator(
    p: ModelParams,
    grid: PhaseGrid,
    scheme: Scheme | str = settings.FP_SCHEME,
    heating_warn: float = settings.UPWIND_HEATING_WARN,
) -> Generator:
    """
    Discretize dP/dt = -d_u(w P) - d_w[(2F(u) - Gamma(u) w) P] + d_w^2[(D(u)/2) P].

    Gamma_tot and D_tot are evaluated at the cell centers of each u column.

    ``central``: the conservative flow (w in u, 2F in w) uses central fluxes,
    which make that part skew and free of numerical diffusion; damping and
    diffusion use exponentially fitted fluxes, exact for the local Gaussian in w.
    ``upwind``: first-order upwind transport in u and fitted fluxes with the
    full drift in w; every off-diagonal is nonnegative, but the numerical
    diffusion in u heats weakly damped wells. A DiscretizationWarning is issued
    when :func:`upwind_heating` exceeds ``heating_warn``.
    """
    scheme = Scheme(scheme)
    if scheme is Scheme.UPWIND:
        _warn_on_upwind_heating(p, grid, heating_warn)
    u, w = grid.u_nodes, grid.w_nodes
    h_u, h_w = grid.h_u, grid.h_w
    n_u, n_w = grid.n_u, grid.n_w
    assembler = _FaceAssembler()

    # u faces: (i, j) -> (i + 1, j), velocity w_j
    i, j = np.meshgrid(np.arange(n_u - 1), np.arange(n_w), indexing="ij")
    a, b = grid.index(i, j).ravel(), grid.index(i + 1, j).ravel()
    velocity = w[j].ravel()
    if scheme is Scheme.CENTRAL:
        coefficient = velocity / (2.0 * h_u)
        assembler.add(a, b, coefficient, coefficient)
    else:
        assembler.add(a, b, np.maximum(velocity, 0.0) / h_u, -np.maximum(-velocity, 0.0) / h_u)

    # w faces: (i, j) -> (i, j + 1)
    i, j = np.meshgrid(np.arange(n_u), np.arange(n_w - 1), indexing="ij")
    a, b = grid.index(i, j).ravel(), grid.index(i, j + 1).ravel()
    w_face = (0.5 * (w[:-1] + w[1:]))[j].ravel()
    conservative = (2.0 * np.asarray(static_force(u, p)))[i].ravel()
    damping = np.asarray(total_damping(u, p))[i].ravel()
    half_diffusion = (0.5 * np.asarray(total_diffusion(u, p)))[i].ravel()
    dissipative_drift = -damping * w_face

    if scheme is Scheme.CENTRAL:
        coefficient = conservative / (2.0 * h_w)
        assembler.add(a, b, coefficient, coefficient)
        c_a, c_b = fitted_flux_coefficients(dissipative_drift, half_diffusion, h_w)
    else:
        c_a, c_b = fitted_flux_coefficients(conservative + dissipative_drift, half_diffusion, h_w)
    assembler.add(a, b, c_a / h_w, -c_b / h_w)

    matrix = assembler.build(grid.size)
    logger.debug("Generator assembled", dimension=grid.size, nnz=int(matrix.nnz), scheme=scheme.value)
    return Generator(matrix=matrix, grid=grid, params=p, scheme=scheme)
