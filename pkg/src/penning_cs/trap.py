"""Trap parameters, stability region and the phase-space generator matrix.

Units are rescaled so that m = hbar = 1.  The phase-space vector is ordered
eta = (X, Y, Z, Px, Py, Pz) everywhere in the package.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class InstabilityError(ValueError):
    """Raised when an operation needs trapped (stable) parameters."""

    def __init__(self, verdict: "StabilityVerdict"):
        self.verdict = verdict
        super().__init__(f"unstable trap parameters ({verdict.reason})")


@dataclass(frozen=True)
class TrapParams:
    b: float
    v: float

    @property
    def radial(self) -> float:
        """b^2 + v, the effective radial confinement."""
        return self.b * self.b + self.v


@dataclass(frozen=True)
class StabilityVerdict:
    stable: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.stable


STABLE = StabilityVerdict(True)

# Reason codes carried by an unstable verdict.
NON_FINITE = "non_finite"
B_NONPOSITIVE = "b_nonpositive"
V_NONNEGATIVE = "v_nonnegative"
RADIAL = "radial"


def validate(params: TrapParams) -> StabilityVerdict:
    """Classify ``params``: stable iff b > 0, v < 0 and b^2 + v > 0.

    The checks are strict and applied to the exact inputs.  The degenerate
    boundary b^2 + v = 0 (cyclotron and magnetron frequencies coincide) is
    reported as ``radial``.
    """
    b, v = params.b, params.v
    if not (math.isfinite(b) and math.isfinite(v)):
        return StabilityVerdict(False, NON_FINITE)
    if not b > 0:
        return StabilityVerdict(False, B_NONPOSITIVE)
    if not v < 0:
        return StabilityVerdict(False, V_NONNEGATIVE)
    if not params.radial > 0:
        return StabilityVerdict(False, RADIAL)
    return STABLE


def require_stable(params: TrapParams) -> None:
    verdict = validate(params)
    if not verdict.stable:
        raise InstabilityError(verdict)


def build_lambda(params: TrapParams) -> np.ndarray:
    """Real 6x6 matrix ``L`` with [iH, eta] = L eta."""
    require_stable(params)
    b, v = params.b, params.v
    lam = np.zeros((6, 6))
    lam[0, 1], lam[1, 0] = -b, b
    lam[0, 3] = lam[1, 4] = lam[2, 5] = 1.0
    lam[3, 0] = lam[4, 1] = -(b * b + v)
    lam[3, 4], lam[4, 3] = -b, b
    lam[5, 2] = 2.0 * v
    return lam


def characteristic_polynomial(params: TrapParams) -> np.ndarray:
    """Coefficients of det(L - x I), highest degree first (``np.poly`` order)."""
    b, v = params.b, params.v
    return np.array(
        [1.0, 0.0, 4 * b * b, 0.0, -v * (8 * b * b + 3 * v), 0.0, -2 * v**3]
    )


@dataclass(frozen=True)
class ModeFrequencies:
    """Modified-cyclotron, magnetron and axial frequencies."""

    omega1: float
    omega2: float
    omega3: float

    def as_array(self) -> np.ndarray:
        return np.array([self.omega1, self.omega2, self.omega3])

    @property
    def ground_energy(self) -> float:
        """Energy of the extremal state |0,0,0>."""
        return 0.5 * (self.omega1 - self.omega2 + self.omega3)


def frequencies(params: TrapParams) -> ModeFrequencies:
    require_stable(params)
    omega1 = params.b + math.sqrt(params.radial)
    # b - sqrt(b^2 + v) cancels badly for small |v|; use omega1 * omega2 = -v.
    return ModeFrequencies(
        omega1=omega1,
        omega2=-params.v / omega1,
        omega3=math.sqrt(-2.0 * params.v),
    )
