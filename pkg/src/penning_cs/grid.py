"""Position grids, quadrature and central-difference checks for wavefunctions.

These are the differential oracles: they only ever see a wavefunction as a
callable on points of shape (..., 3), never the closed forms behind it.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .trap import TrapParams, require_stable

Wavefunction = Callable[[np.ndarray], np.ndarray]

FD_STEP = 1e-3
# The plane-wave factor makes the central-difference bias ~ Sigma^3 h^2 / 6,
# too large at 1e-3 for 1e-6 momentum moments with |Sigma| ~ 2.
MOMENT_FD_STEP = 1e-4
N_SIGMA = 6.0


def axis_points(lo: float, hi: float, step: float) -> np.ndarray:
    """Inclusive, evenly spaced points lo, lo+step, ..., hi (to rounding)."""
    if not step > 0:
        raise ValueError("grid step must be positive")
    if not (np.isfinite(lo) and np.isfinite(hi)) or hi < lo:
        raise ValueError(f"bad grid range {lo}:{hi}")
    n = int(np.floor((hi - lo) / step + 1e-9)) + 1
    return lo + step * np.arange(n)


@dataclass(frozen=True)
class Grid:
    axes: tuple  # three 1-D arrays

    @property
    def shape(self) -> tuple[int, int, int]:
        return tuple(len(a) for a in self.axes)

    @property
    def cell_volume(self) -> float:
        return float(np.prod([a[1] - a[0] if len(a) > 1 else 1.0 for a in self.axes]))

    def points(self) -> np.ndarray:
        """Points of shape (nx, ny, nz, 3), x slowest."""
        mesh = np.meshgrid(*self.axes, indexing="ij")
        return np.stack(mesh, axis=-1)


def position_widths(params: TrapParams) -> np.ndarray:
    """Standard deviations of |phi_0|^2 along x, y, z."""
    require_stable(params)
    return np.array(
        [
            (4 * params.radial) ** -0.25,
            (4 * params.radial) ** -0.25,
            (-8 * params.v) ** -0.25,
        ]
    )


def default_grid(params: TrapParams, center=(0.0, 0.0, 0.0), n_sigma: float = N_SIGMA,
                 points_per_sigma: float = 2.0) -> Grid:
    """[center - n_sigma*sigma, center + n_sigma*sigma] per axis.

    Two points per width is plenty for Riemann sums of smooth Gaussians,
    whose error decays like exp(-2 pi^2 sigma^2 / h^2).
    """
    sig = position_widths(params)
    center = np.asarray(center, dtype=float)
    axes = []
    for c, s in zip(center, sig):
        n_half = int(np.ceil(n_sigma * points_per_sigma))
        axes.append(c + (s / points_per_sigma) * np.arange(-n_half, n_half + 1))
    return Grid(tuple(axes))


def gradient_fd(psi: Wavefunction, points: np.ndarray, h: float = FD_STEP) -> np.ndarray:
    """Central-difference gradient of ``psi`` at ``points``, shape (..., 3)."""
    points = np.asarray(points, dtype=float)
    grads = []
    for k in range(3):
        dk = np.zeros(3)
        dk[k] = h
        grads.append((psi(points + dk) - psi(points - dk)) / (2 * h))
    return np.stack(grads, axis=-1)


def apply_ladder_fd(psi: Wavefunction, alpha, beta, points, h: float = FD_STEP) -> np.ndarray:
    """(i P . alpha + R . beta) psi with P = -i grad, i.e. alpha.grad psi + (beta.r) psi."""
    points = np.asarray(points, dtype=float)
    grad = gradient_fd(psi, points, h)
    return grad @ np.asarray(alpha) + (points @ np.asarray(beta)) * psi(points)


def ladder_residual_fd(psi: Wavefunction, alpha, beta, eigenvalue: complex,
                       points, h: float = FD_STEP) -> float:
    """Relative L2 size of (B - eigenvalue) psi over the sample points."""
    points = np.asarray(points, dtype=float)
    values = psi(points)
    resid = apply_ladder_fd(psi, alpha, beta, points, h) - eigenvalue * values
    return float(np.linalg.norm(resid) / np.linalg.norm(values))


@dataclass(frozen=True)
class QuadratureMoments:
    norm: float
    mean_r: np.ndarray
    second_r: np.ndarray
    mean_p: np.ndarray
    second_p: np.ndarray
    cross: np.ndarray  # <R_j P_j>, complex

    @property
    def var_r(self) -> np.ndarray:
        return self.second_r - self.mean_r**2

    @property
    def var_p(self) -> np.ndarray:
        return self.second_p - self.mean_p**2

    @property
    def uncertainty_products(self) -> np.ndarray:
        return np.sqrt(self.var_r * self.var_p)


def quadrature_moments(psi: Wavefunction, grid: Grid, h: float = MOMENT_FD_STEP) -> QuadratureMoments:
    """First and second moments of R and P by Riemann sums over ``grid``.

    Momentum moments use <P_j> = int conj(psi) (-i d_j psi) and
    <P_j^2> = int |d_j psi|^2 with central differences of step ``h``.
    """
    pts = grid.points().reshape(-1, 3)
    dv = grid.cell_volume
    values = psi(pts)
    grad = gradient_fd(psi, pts, h)
    dens = np.abs(values) ** 2
    norm = dens.sum() * dv
    mean_r = (dens[:, None] * pts).sum(axis=0) * dv / norm
    second_r = (dens[:, None] * pts**2).sum(axis=0) * dv / norm
    mean_p = np.real((values.conj()[:, None] * (-1j) * grad).sum(axis=0)) * dv / norm
    second_p = (np.abs(grad) ** 2).sum(axis=0) * dv / norm
    cross = (values.conj()[:, None] * pts * (-1j) * grad).sum(axis=0) * dv / norm
    return QuadratureMoments(
        norm=float(norm), mean_r=mean_r, second_r=second_r,
        mean_p=mean_p, second_p=second_p, cross=cross,
    )
