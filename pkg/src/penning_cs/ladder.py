"""First-degree phase-space operators and the three oscillator modes.

An operator ``c . eta + offset`` is stored by its coefficient vector.  The
canonical commutators [R_i, P_j] = i delta_ij make the commutator of two such
operators a c-number, ``c^T K d`` with K the commutator form below.

Quadratic operators are kept in Weyl-symmetric form ``eta^T M eta + scalar``
with M complex symmetric, where eta_i eta_j stands for (eta_i eta_j +
eta_j eta_i)/2.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .spectral import EigenPairSet
from .trap import ModeFrequencies, TrapParams

COMMUTATOR_FORM = np.block(
    [[np.zeros((3, 3)), 1j * np.eye(3)], [-1j * np.eye(3), np.zeros((3, 3))]]
)

AXIS_NAMES = ("X", "Y", "Z", "Px", "Py", "Pz")


@dataclass(frozen=True)
class PhaseSpaceOperator:
    coeffs: np.ndarray
    offset: complex = 0.0

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.shape != (6,):
            raise ValueError(f"need 6 coefficients, got shape {c.shape}")
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "offset", complex(self.offset))

    @classmethod
    def coordinate(cls, name: str) -> "PhaseSpaceOperator":
        """One of X, Y, Z, Px, Py, Pz."""
        c = np.zeros(6, dtype=complex)
        c[AXIS_NAMES.index(name)] = 1.0
        return cls(c)

    def adjoint(self) -> "PhaseSpaceOperator":
        return PhaseSpaceOperator(self.coeffs.conj(), np.conj(self.offset))

    def __add__(self, other: "PhaseSpaceOperator") -> "PhaseSpaceOperator":
        return PhaseSpaceOperator(self.coeffs + other.coeffs, self.offset + other.offset)

    def __sub__(self, other: "PhaseSpaceOperator") -> "PhaseSpaceOperator":
        return PhaseSpaceOperator(self.coeffs - other.coeffs, self.offset - other.offset)

    def __mul__(self, scalar: complex) -> "PhaseSpaceOperator":
        return PhaseSpaceOperator(self.coeffs * scalar, self.offset * scalar)

    __rmul__ = __mul__


def commutator(a: PhaseSpaceOperator, b: PhaseSpaceOperator) -> complex:
    """[a, b] for first-degree operators; offsets are central and drop out."""
    return complex(a.coeffs @ COMMUTATOR_FORM @ b.coeffs)


def product_form(a: PhaseSpaceOperator, b: PhaseSpaceOperator) -> tuple[np.ndarray, complex]:
    """Weyl form (M, scalar) of the product ``a b``.

    eta_i eta_j = sym(eta_i eta_j) + [eta_i, eta_j]/2, so the product of the
    linear parts contributes the symmetrised outer product plus half the
    commutator.  Offsets only enter through offset_a * offset_b; cross terms
    with the offsets are linear and are rejected because nothing here needs
    them.
    """
    if a.offset != 0 and np.any(b.coeffs) or b.offset != 0 and np.any(a.coeffs):
        raise ValueError("product_form only handles operators without mixed linear terms")
    m = 0.5 * (np.outer(a.coeffs, b.coeffs) + np.outer(b.coeffs, a.coeffs))
    scalar = 0.5 * commutator(a, b) + a.offset * b.offset
    return m, scalar


def hamiltonian_form(params: TrapParams) -> tuple[np.ndarray, complex]:
    """Weyl form of H = P^2/2 + b L_z + [(b^2+v)(X^2+Y^2) - 2v Z^2]/2."""
    b, v = params.b, params.v
    m = np.zeros((6, 6), dtype=complex)
    m[3, 3] = m[4, 4] = m[5, 5] = 0.5
    m[0, 0] = m[1, 1] = 0.5 * (b * b + v)
    m[2, 2] = -v
    # L_z = X Py - Y Px; the factors commute so no ordering constant appears.
    m[0, 4] = m[4, 0] = 0.5 * b
    m[1, 3] = m[3, 1] = -0.5 * b
    return m, 0.0


@dataclass(frozen=True)
class ModeSystem:
    """Annihilators B_k, creators B_k^dagger and the sign of each mode in H."""

    freqs: ModeFrequencies
    pairs: EigenPairSet
    ladder_ops: tuple  # L_1, L_2, L_3 (L_k = conj(f_k) . eta)
    annihilators: tuple
    creators: tuple
    signs: tuple = field(default=(1, -1, 1))

    @property
    def ground_energy(self) -> float:
        return self.freqs.ground_energy

    def annihilator_matrix(self) -> np.ndarray:
        """Coefficient vectors of B_1, B_2, B_3 as rows."""
        return np.array([op.coeffs for op in self.annihilators])


def build_ladder(pairs: EigenPairSet, freqs: ModeFrequencies) -> ModeSystem:
    """L_k = conj(f_k) . eta, then B_1 = L_1, B_2 = L_2^dagger, B_3 = L_3.

    The magnetron mode is the odd one out: [L_2, L_2^dagger] = -1, so its
    roles swap and it enters H with a negative sign.
    """
    ls = tuple(PhaseSpaceOperator(fk.conj()) for fk in pairs.f)
    signs = []
    annihilators = []
    for op in ls:
        norm = commutator(op, op.adjoint()).real
        if norm > 0:
            annihilators.append(op)
            signs.append(1)
        else:
            annihilators.append(op.adjoint())
            signs.append(-1)
    return ModeSystem(
        freqs=freqs,
        pairs=pairs,
        ladder_ops=ls,
        annihilators=tuple(annihilators),
        creators=tuple(op.adjoint() for op in annihilators),
        signs=tuple(signs),
    )


def commutator_table(system: ModeSystem) -> dict[str, np.ndarray]:
    """3x3 tables of [B_j, B_k^dagger], [B_j, B_k] and [B_j^dagger, B_k^dagger]."""
    a, c = system.annihilators, system.creators
    return {
        "B_Bdag": np.array([[commutator(x, y) for y in c] for x in a]),
        "B_B": np.array([[commutator(x, y) for y in a] for x in a]),
        "Bdag_Bdag": np.array([[commutator(x, y) for y in c] for x in c]),
    }


def mode_expansion(system: ModeSystem) -> tuple[np.ndarray, complex]:
    """Weyl form of sum_k sign_k omega_k B_k^dagger B_k + E_000.

    The scalar part should vanish: each B^dagger B carries -1/2 from the
    reordering, which exactly cancels E_000.
    """
    m = np.zeros((6, 6), dtype=complex)
    scalar = complex(system.ground_energy)
    for sign, w, b_op, bd_op in zip(
        system.signs, system.freqs.as_array(), system.annihilators, system.creators
    ):
        mk, sk = product_form(bd_op, b_op)
        m += sign * w * mk
        scalar += sign * w * sk
    return m, scalar


def hamiltonian_residual(system: ModeSystem, params: TrapParams) -> float:
    """Largest coefficient mismatch between H and its mode factorisation."""
    m_h, s_h = hamiltonian_form(params)
    m_modes, s_modes = mode_expansion(system)
    return float(max(np.abs(m_modes - m_h).max(), abs(s_modes - s_h)))


def heisenberg_residuals(system: ModeSystem, lambda_matrix: np.ndarray) -> np.ndarray:
    """|L^T c_k + i omega_k c_k| for the coefficient vectors c_k of L_k.

    Zero residual is the operator statement [H, L_k] = -omega_k L_k.
    """
    lam = np.asarray(lambda_matrix)
    return np.array(
        [
            np.linalg.norm(lam.T @ op.coeffs + 1j * w * op.coeffs)
            for op, w in zip(system.ladder_ops, system.freqs.as_array())
        ]
    )


def energy(n1, n2, n3, freqs: ModeFrequencies):
    """E(n1, n2, n3) = w1 (n1 + 1/2) - w2 (n2 + 1/2) + w3 (n3 + 1/2).

    Accepts scalars or broadcastable integer arrays.
    """
    n1, n2, n3 = (np.asarray(n) for n in (n1, n2, n3))
    if np.any(n1 < 0) or np.any(n2 < 0) or np.any(n3 < 0):
        raise ValueError("occupation numbers must be non-negative")
    e = (
        freqs.omega1 * (n1 + 0.5)
        - freqs.omega2 * (n2 + 0.5)
        + freqs.omega3 * (n3 + 0.5)
    )
    return float(e) if np.ndim(e) == 0 else e
