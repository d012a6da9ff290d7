"""Truncated Fock-space representation of the three trap modes.

Each mode keeps n = 0..N.  Single-mode matrices are (N+1)x(N+1) and are only
lifted to the (N+1)^3 product space, as scipy sparse matrices, when asked.
Basis states are ordered with n1 slowest: index = (n1 (N+1) + n2)(N+1) + n3,
which matches ``np.ravel`` of an [n1, n2, n3] table.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import cached_property

import numpy as np
import scipy.sparse as sp

from .expm import expm
from .states import CoherentLabel, TruncationWarning
from .trap import ModeFrequencies

MAX_CUTOFF = 64
DEFAULT_STATE_BUDGET = 300_000


class CapacityError(MemoryError):
    """Requested truncation exceeds the configured size budget."""


def annihilation(cutoff: int) -> np.ndarray:
    """Single-mode a with sqrt(n) on the superdiagonal."""
    return np.diag(np.sqrt(np.arange(1, cutoff + 1, dtype=float)), 1)


def creation(cutoff: int) -> np.ndarray:
    return annihilation(cutoff).T.copy()


def number(cutoff: int) -> np.ndarray:
    return np.diag(np.arange(cutoff + 1, dtype=float))


def _check_capacity(cutoff: int, budget: int) -> None:
    if cutoff < 0:
        raise ValueError("cutoff must be >= 0")
    if cutoff > MAX_CUTOFF:
        raise CapacityError(f"cutoff {cutoff} exceeds supported maximum {MAX_CUTOFF}")
    if (cutoff + 1) ** 3 > budget:
        raise CapacityError(
            f"{(cutoff + 1) ** 3} product states exceed the budget of {budget}"
        )


def lift(single, mode: int, dim: int) -> sp.csr_matrix:
    """Embed a single-mode matrix acting on ``mode`` (0, 1, 2) in the product space."""
    eye = sp.identity(dim, format="csr")
    factors = [eye, eye, eye]
    factors[mode] = sp.csr_matrix(single)
    return sp.kron(sp.kron(factors[0], factors[1]), factors[2], format="csr")


def occupations(dim: int) -> np.ndarray:
    """(dim**3, 3) array of (n1, n2, n3) per basis index."""
    return np.indices((dim,) * 3).reshape(3, -1).T


@dataclass(frozen=True)
class FockSystem:
    freqs: ModeFrequencies
    cutoff: int

    @property
    def dim(self) -> int:
        return self.cutoff + 1

    @property
    def size(self) -> int:
        return self.dim**3

    def B(self, mode: int) -> sp.csr_matrix:
        return lift(annihilation(self.cutoff), mode, self.dim)

    def Bdag(self, mode: int) -> sp.csr_matrix:
        return lift(creation(self.cutoff), mode, self.dim)

    def N(self, mode: int) -> sp.csr_matrix:
        return lift(number(self.cutoff), mode, self.dim)

    @cached_property
    def occupations(self) -> np.ndarray:
        return occupations(self.dim)

    @cached_property
    def energy_diagonal(self) -> np.ndarray:
        """Diagonal of H = w1 N1 - w2 N2 + w3 N3 + E_000."""
        n = self.occupations
        w = self.freqs
        return w.omega1 * n[:, 0] - w.omega2 * n[:, 1] + w.omega3 * n[:, 2] + w.ground_energy

    def H(self) -> sp.dia_matrix:
        return sp.diags(self.energy_diagonal)

    def vacuum(self) -> np.ndarray:
        out = np.zeros(self.size, dtype=complex)
        out[0] = 1.0
        return out

    def expect_H(self, state: np.ndarray) -> float:
        p = np.abs(state) ** 2
        return float(p @ self.energy_diagonal / p.sum())

    def variance_H(self, state: np.ndarray) -> float:
        p = np.abs(state) ** 2
        p = p / p.sum()
        e = self.energy_diagonal
        mean = p @ e
        return float(p @ (e - mean) ** 2)


def build_fock(freqs: ModeFrequencies, cutoff: int,
               budget: int = DEFAULT_STATE_BUDGET) -> FockSystem:
    if cutoff < 1:
        raise ValueError("cutoff must be >= 1")
    _check_capacity(cutoff, budget)
    return FockSystem(freqs=freqs, cutoff=cutoff)


def single_mode_displacement(z: complex, cutoff: int) -> np.ndarray:
    """Truncated exp(z a^dagger - conj(z) a) on n = 0..cutoff."""
    a = annihilation(cutoff)
    return expm(z * a.T - np.conj(z) * a)


def docs_vector(label: CoherentLabel, cutoff: int,
                budget: int = DEFAULT_STATE_BUDGET) -> np.ndarray:
    """D(z)|0,0,0> in the truncated product basis.

    The three mode generators commute, so D = D1 D2 D3 and the vacuum image
    is the Kronecker product of three single-mode columns.
    """
    _check_capacity(cutoff, budget)
    z = np.asarray(label.z, dtype=complex)
    if np.any(np.abs(z) ** 2 > cutoff):
        warnings.warn(
            f"|z_j|^2 exceeds cutoff {cutoff}; truncated state unreliable",
            TruncationWarning,
            stacklevel=2,
        )
    cols = [single_mode_displacement(zj, cutoff)[:, 0] for zj in z]
    return np.kron(np.kron(cols[0], cols[1]), cols[2])


def eigenrelation_residual(label: CoherentLabel, cutoff: int,
                           budget: int = DEFAULT_STATE_BUDGET) -> float:
    """max_j |(B_j - z_j) zeta| over components with n_j < cutoff.

    The top level n_j = cutoff always breaks the eigenrelation (B_j has no
    partner above it) and is excluded.
    """
    zeta = docs_vector(label, cutoff, budget)
    dim = cutoff + 1
    occ = occupations(dim)
    a = annihilation(cutoff)
    worst = 0.0
    for j, zj in enumerate(np.asarray(label.z, dtype=complex)):
        resid = lift(a, j, dim) @ zeta - zj * zeta
        keep = occ[:, j] < cutoff
        worst = max(worst, float(np.linalg.norm(resid[keep])))
    return worst


def overlap(zeta_a: np.ndarray, zeta_b: np.ndarray) -> complex:
    """<a|b> (conjugates the first argument)."""
    return complex(np.vdot(zeta_a, zeta_b))


def analytic_overlap(z_a, z_b) -> complex:
    """exp(-(|z|^2 + |z'|^2)/2 + conj(z).z') summed over the three modes."""
    z_a = np.asarray(z_a, dtype=complex)
    z_b = np.asarray(z_b, dtype=complex)
    return complex(
        np.exp(-0.5 * (np.sum(np.abs(z_a) ** 2) + np.sum(np.abs(z_b) ** 2)) + np.vdot(z_a, z_b))
    )
