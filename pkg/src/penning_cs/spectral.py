"""Closed-form eigenvectors/eigenforms of the generator matrix and e^{Lt}.

Eigenvectors ``u_k`` (right) and eigenforms ``f_k`` (left) belong to the
eigenvalue i*omega_k; their complex conjugates belong to -i*omega_k.  They are
normalised to be dual, f_j . u_k = delta_jk and f_j . conj(u_k) = 0, with the
real positive scale factors t_k that make the ladder commutators +-1.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .trap import ModeFrequencies

DEGENERACY_THRESHOLD = 1e-12


class DegenerateModeError(ValueError):
    """Cyclotron and magnetron frequencies (numerically) coincide."""


@dataclass(frozen=True)
class EigenPairSet:
    """Rows ``u[k]`` / ``f[k]`` hold the k-th eigenvector / eigenform."""

    lambdas: np.ndarray  # (3,) complex, i*omega_k
    u: np.ndarray  # (3, 6) complex
    f: np.ndarray  # (3, 6) complex
    t: np.ndarray  # (3,) real positive eigenform scales
    s: np.ndarray  # (3,) eigenvector scales fixed by duality

    @property
    def omegas(self) -> np.ndarray:
        return self.lambdas.imag

    def duality_matrix(self) -> np.ndarray:
        """6x6 array of all pairings [f; f*] . [u, u*]; ideally the identity."""
        forms = np.vstack([self.f, self.f.conj()])
        vecs = np.vstack([self.u, self.u.conj()]).T
        return forms @ vecs


def decompose(lambda_matrix: np.ndarray, freqs: ModeFrequencies) -> EigenPairSet:
    """Build the dual eigen-system from closed forms.

    ``sqrt(b^2 + v)`` and ``sqrt(-2v)`` are recovered from the frequencies as
    (omega1 - omega2)/2 and omega3.  ``lambda_matrix`` is checked against the
    result so mismatched inputs fail loudly instead of returning garbage.
    """
    w1, w2, w3 = freqs.omega1, freqs.omega2, freqs.omega3
    gap = w1 - w2
    if abs(gap) < DEGENERACY_THRESHOLD:
        raise DegenerateModeError(f"|omega1 - omega2| = {abs(gap):.3e}")
    root = 0.5 * gap

    t = np.array([1 / np.sqrt(2 * gap), 1 / np.sqrt(2 * gap), 1 / np.sqrt(2 * w3)])
    s = np.array([1 / (4 * t[0]), 1 / (4 * t[1]), 1 / (2 * t[2])])
    u = np.array(
        [
            [1 / root, -1j / root, 0, 1j, 1, 0],
            [-1 / root, 1j / root, 0, 1j, 1, 0],
            [0, 0, -1j / w3, 0, 0, 1],
        ],
        dtype=complex,
    ) * s[:, None]
    f = np.array(
        [
            [root, 1j * root, 0, -1j, 1, 0],
            [-root, -1j * root, 0, -1j, 1, 0],
            [0, 0, 1j * w3, 0, 0, 1],
        ],
        dtype=complex,
    ) * t[:, None]
    pairs = EigenPairSet(lambdas=1j * freqs.as_array(), u=u, f=f, t=t, s=s)

    lam = np.asarray(lambda_matrix)
    scale = max(1.0, np.abs(lam).max())
    resid = eigen_residuals(lam, pairs)
    if resid.max() > 1e-8 * scale * max(1.0, np.abs(u).max(), np.abs(f).max()):
        raise ValueError(
            "frequencies do not belong to this generator matrix "
            f"(eigen residual {resid.max():.3e})"
        )
    return pairs


def eigen_residuals(lambda_matrix: np.ndarray, pairs: EigenPairSet) -> np.ndarray:
    """Norms of L u_k - lam_k u_k and f_k L - lam_k f_k, shape (2, 3)."""
    lam = np.asarray(lambda_matrix)
    right = lam @ pairs.u.T - pairs.u.T * pairs.lambdas
    left = pairs.f @ lam - pairs.f * pairs.lambdas[:, None]
    return np.vstack(
        [np.linalg.norm(right, axis=0), np.linalg.norm(left, axis=1)]
    )


def unit_decomposition(pairs: EigenPairSet) -> np.ndarray:
    """sum_k u_k (x) f_k + conj(u_k) (x) conj(f_k); equals the 6x6 identity."""
    return np.einsum("ki,kj->ij", pairs.u, pairs.f) + np.einsum(
        "ki,kj->ij", pairs.u.conj(), pairs.f.conj()
    )


def lambda_reconstruction(pairs: EigenPairSet) -> np.ndarray:
    """sum_k lam_k (u_k (x) f_k - conj(u_k) (x) conj(f_k)); equals L."""
    w = pairs.lambdas[:, None]
    return np.einsum("ki,kj->ij", w * pairs.u, pairs.f) - np.einsum(
        "ki,kj->ij", w * pairs.u.conj(), pairs.f.conj()
    )


def propagator(pairs: EigenPairSet, t: float) -> np.ndarray:
    """Heisenberg propagator e^{L t}, so that eta(t) = e^{L t} eta.

    Assembled mode by mode from the spectral decomposition; the conjugate
    halves cancel the imaginary parts, which are dropped after a check.
    """
    phase = np.exp(pairs.lambdas * t)[:, None]
    half = np.einsum("ki,kj->ij", phase * pairs.u, pairs.f)
    full = half + half.conj()
    imag = np.abs(full.imag).max()
    if imag > 1e-9 * max(1.0, np.abs(full.real).max()):
        raise ArithmeticError(f"propagator has imaginary residue {imag:.3e}")
    return full.real
