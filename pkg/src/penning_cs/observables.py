"""Closed-form moments, uncertainty products and energy statistics."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ladder import ModeSystem
from .states import CoherentLabel
from .trap import ModeFrequencies, TrapParams, require_stable


@dataclass(frozen=True)
class MomentReport:
    mean_R: np.ndarray
    mean_P: np.ndarray
    var_R: np.ndarray
    var_P: np.ndarray
    cross: np.ndarray  # <R_j P_j>
    uncertainty_products: np.ndarray

    @property
    def second_R(self) -> np.ndarray:
        return self.var_R + self.mean_R**2

    @property
    def second_P(self) -> np.ndarray:
        return self.var_P + self.mean_P**2


def _extremal_variances(params: TrapParams) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    require_stable(params)
    rad, v = params.radial, params.v
    var_r = np.array([(4 * rad) ** -0.5, (4 * rad) ** -0.5, (-8 * v) ** -0.5])
    var_p = np.array([(rad / 4) ** 0.5, (rad / 4) ** 0.5, (-v / 2) ** 0.5])
    return var_r, var_p, np.sqrt(var_r * var_p)


def extremal_moments(params: TrapParams) -> MomentReport:
    var_r, var_p, products = _extremal_variances(params)
    return MomentReport(
        mean_R=np.zeros(3),
        mean_P=np.zeros(3),
        var_R=var_r,
        var_P=var_p,
        cross=np.full(3, 0.5j),
        uncertainty_products=products,
    )


def coherent_moments(params: TrapParams, label: CoherentLabel) -> MomentReport:
    """D(z) shifts R by Gamma and P by Sigma; the spreads do not change."""
    var_r, var_p, products = _extremal_variances(params)
    gamma = np.array(label.gamma, dtype=float)
    sigma = np.array(label.sigma, dtype=float)
    return MomentReport(
        mean_R=gamma,
        mean_P=sigma,
        var_R=var_r,
        var_P=var_p,
        cross=0.5j + gamma * sigma,
        uncertainty_products=products,
    )


def extremal_second_moments(params: TrapParams) -> np.ndarray:
    """6x6 table <eta_i eta_j> in the extremal state, eta = (R, P).

    Only the diagonal and the <R_j P_j> = i/2, <P_j R_j> = -i/2 entries are
    non-zero.
    """
    var_r, var_p, _ = _extremal_variances(params)
    g = np.zeros((6, 6), dtype=complex)
    g[np.arange(3), np.arange(3)] = var_r
    g[np.arange(3, 6), np.arange(3, 6)] = var_p
    g[np.arange(3), np.arange(3, 6)] = 0.5j
    g[np.arange(3, 6), np.arange(3)] = -0.5j
    return g


def ladder_second_moments(system: ModeSystem) -> np.ndarray:
    """<eta_i eta_j> in |0,0,0> derived from the ladder operators alone.

    Inverting eta in terms of B_k and B_k^dagger, eta = G b + K b^dagger,
    the only surviving vacuum products are <B_k B_l^dagger> = delta_kl,
    so <eta eta^T> = G K^T.
    """
    ops = np.array(
        [op.coeffs for op in system.annihilators] + [op.coeffs for op in system.creators]
    )
    inv = np.linalg.inv(ops)  # eta = inv @ (B_1..B_3, B_1^dag..B_3^dag)
    return inv[:, :3] @ inv[:, 3:].T


def energy_mean(freqs: ModeFrequencies, label: CoherentLabel) -> float:
    n = np.abs(np.asarray(label.z)) ** 2
    return float(
        freqs.omega1 * n[0] - freqs.omega2 * n[1] + freqs.omega3 * n[2] + freqs.ground_energy
    )


def energy_variance(params: TrapParams, label: CoherentLabel) -> float:
    """(b + s)^2 |z1|^2 + (b - s)^2 |z2|^2 - 2v |z3|^2, s = sqrt(b^2 + v)."""
    require_stable(params)
    n = np.abs(np.asarray(label.z)) ** 2
    s = np.sqrt(params.radial)
    return float((params.b + s) ** 2 * n[0] + (params.b - s) ** 2 * n[1] - 2 * params.v * n[2])
