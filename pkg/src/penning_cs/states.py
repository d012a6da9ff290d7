"""Extremal-state Gaussian, coherent-state labels and wavefunctions.

Writing B_j = i P . alpha_j + R . beta_j, the extremal state is the Gaussian
c exp(-r^T a r / 2) with a alpha_j = beta_j.  A coherent state |z> is the
displaced extremal state, D(z) = exp(i(Sigma . R - Gamma . P)), which in the
position representation is a phase, a plane wave and a shift by Gamma.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.special import pdtrc

from .ladder import ModeSystem
from .trap import TrapParams, require_stable

SINGULAR_COND = 1e12


class SingularAlphaError(np.linalg.LinAlgError):
    """The alpha vectors do not span 3-space."""


class TruncationWarning(UserWarning):
    """Fock cutoff too small for the requested coherent-state amplitude."""


@dataclass(frozen=True)
class LadderVectors:
    alpha: np.ndarray  # (3, 3), row j is alpha_j
    beta: np.ndarray  # (3, 3), row j is beta_j


@dataclass(frozen=True)
class GaussianState:
    a_matrix: np.ndarray
    norm_const: float


@dataclass(frozen=True)
class CoherentLabel:
    z: np.ndarray  # (3,) complex
    gamma: np.ndarray  # position shift
    sigma: np.ndarray  # momentum kick
    c_phase: complex

    @property
    def z1(self) -> complex:
        return complex(self.z[0])

    @property
    def z2(self) -> complex:
        return complex(self.z[1])

    @property
    def z3(self) -> complex:
        return complex(self.z[2])


def extract_alpha_beta(system: ModeSystem) -> LadderVectors:
    c = system.annihilator_matrix()
    return LadderVectors(alpha=c[:, 3:] / 1j, beta=c[:, :3].copy())


def solve_gaussian(vectors: LadderVectors) -> GaussianState:
    """Solve a [alpha_1 alpha_2 alpha_3] = [beta_1 beta_2 beta_3] for ``a``.

    ``c`` is the real positive constant giving unit L2 norm:
    int |c exp(-r^T a r/2)|^2 d^3r = c^2 pi^{3/2} / sqrt(det Re a).
    """
    alpha_cols = vectors.alpha.T
    beta_cols = vectors.beta.T
    cond = np.linalg.cond(alpha_cols)
    if not np.isfinite(cond) or cond > SINGULAR_COND:
        raise SingularAlphaError(f"alpha matrix condition number {cond:.3e}")
    # a A = B  <=>  A^T a^T = B^T
    a = np.linalg.solve(alpha_cols.T, beta_cols.T).T
    asym = np.abs(a - a.T).max()
    if asym > 1e-12 * max(1.0, np.abs(a).max()):
        raise ArithmeticError(f"Gaussian matrix is not symmetric (|a - a^T| = {asym:.3e})")
    a = 0.5 * (a + a.T)
    if np.abs(a.imag).max() <= 1e-14 * max(1.0, np.abs(a.real).max()):
        a = a.real.copy()
    det_re = np.linalg.det(np.real(a))
    if det_re <= 0:
        raise ArithmeticError("Gaussian is not square integrable")
    return GaussianState(a_matrix=a, norm_const=float(det_re**0.25 * np.pi**-0.75))


def gaussian_state(params: TrapParams) -> GaussianState:
    """Closed form for the trap: a = diag(sqrt(b^2+v), sqrt(b^2+v), sqrt(-2v))."""
    require_stable(params)
    r = np.sqrt(params.radial)
    w3 = np.sqrt(-2 * params.v)
    c = params.radial**0.25 * (-2 * params.v) ** 0.125 * np.pi**-0.75
    return GaussianState(a_matrix=np.diag([r, r, w3]), norm_const=float(c))


def phi0(state: GaussianState, r) -> np.ndarray | complex:
    """Extremal wavefunction at points ``r`` of shape (..., 3)."""
    r = np.asarray(r, dtype=float)
    quad = np.einsum("...i,ij,...j->...", r, state.a_matrix, r)
    out = state.norm_const * np.exp(-0.5 * quad)
    return out if np.ndim(out) else out.item()


def coherent_label(z1: complex, z2: complex, z3: complex, params: TrapParams) -> CoherentLabel:
    """Position shift Gamma, momentum kick Sigma and phase C(z) of D(z)."""
    require_stable(params)
    z = np.array([z1, z2, z3], dtype=complex)
    q = params.radial**0.25
    gamma = np.array(
        [
            (z[0] - z[1]).real / q,
            -(z[0] + z[1]).imag / q,
            -((-params.v / 2) ** -0.25) * z[2].imag,
        ]
    )
    sigma = np.array(
        [
            q * (z[0] - z[1]).imag,
            q * (z[0] + z[1]).real,
            (-8 * params.v) ** 0.25 * z[2].real,
        ]
    )
    return CoherentLabel(
        z=z, gamma=gamma, sigma=sigma, c_phase=complex(np.exp(-0.5j * gamma @ sigma))
    )


def displacement_vectors(vectors: LadderVectors, z) -> tuple[np.ndarray, np.ndarray]:
    """(Gamma, Sigma) straight from sum_j z_j B_j^dagger - conj(z_j) B_j.

    With B_j = i P . alpha_j + R . beta_j the exponent equals
    i(Sigma . R - Gamma . P) with Gamma = 2 Re sum z_j conj(alpha_j) and
    Sigma = 2 Im sum z_j conj(beta_j).
    """
    z = np.asarray(z, dtype=complex)
    gamma = 2 * np.real(z @ vectors.alpha.conj())
    sigma = 2 * np.imag(z @ vectors.beta.conj())
    return gamma, sigma


def c_phase_closed_form(z) -> complex:
    """exp{i(Re z1 Im z2 + Re z2 Im z1 + Re z3 Im z3)}."""
    z = np.asarray(z, dtype=complex)
    x, y = z.real, z.imag
    return complex(np.exp(1j * (x[0] * y[1] + x[1] * y[0] + x[2] * y[2])))


def wavefunction_shift(label: CoherentLabel, params: TrapParams) -> np.ndarray:
    """Shift written the way the displaced argument of phi_0 reads.

    phi_0(x - Re[z1 - z2]/q, y + Im[z1 + z2]/q, z + (-2/v)^{1/4} Im z3) with
    q = (b^2+v)^{1/4}; returned as the vector subtracted from r.
    """
    z = label.z
    q = params.radial**0.25
    return np.array(
        [
            (z[0] - z[1]).real / q,
            -(z[0] + z[1]).imag / q,
            -((-2 / params.v) ** 0.25) * z[2].imag,
        ]
    )


def phi_z(state: GaussianState, label: CoherentLabel, r) -> np.ndarray | complex:
    """Coherent-state wavefunction C(z) e^{i Sigma.r} phi_0(r - Gamma)."""
    r = np.asarray(r, dtype=float)
    plane = np.exp(1j * (r @ label.sigma))
    out = label.c_phase * plane * phi0(state, r - label.gamma)
    return out if np.ndim(out) else out.item()


@dataclass(frozen=True)
class AOCSTable:
    coeffs: np.ndarray  # (N+1, N+1, N+1), index [n1, n2, n3]
    norm_deficit: float


def mode_amplitudes(z: complex, cutoff: int) -> np.ndarray:
    """e^{-|z|^2/2} z^n / sqrt(n!) for n = 0..cutoff.

    Built by the recurrence c_{n+1} = z c_n / sqrt(n+1), which never forms
    z^n or n! separately and so cannot overflow.
    """
    out = np.empty(cutoff + 1, dtype=complex)
    out[0] = np.exp(-0.5 * abs(z) ** 2)
    for n in range(cutoff):
        out[n + 1] = out[n] * z / np.sqrt(n + 1)
    return out


def aocs_coefficients(label: CoherentLabel, cutoff: int) -> AOCSTable:
    """Fock amplitudes c_{n1 n2 n3} of |z> for all n_j <= cutoff."""
    if cutoff < 0:
        raise ValueError("cutoff must be >= 0")
    if np.any(np.abs(label.z) ** 2 > cutoff):
        warnings.warn(
            f"|z_j|^2 exceeds cutoff {cutoff}; truncated amplitudes unreliable",
            TruncationWarning,
            stacklevel=2,
        )
    c1, c2, c3 = (mode_amplitudes(zj, cutoff) for zj in label.z)
    table = np.einsum("i,j,k->ijk", c1, c2, c3)
    # 1 - sum|c|^2 from the per-mode Poisson tails; subtracting the kept
    # weight from 1 would bottom out at ~1e-16.
    tails = pdtrc(cutoff, np.abs(label.z) ** 2)
    deficit = -np.expm1(np.sum(np.log1p(-tails)))
    return AOCSTable(coeffs=table, norm_deficit=float(deficit))
