from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ladder import ModeSystem, build_ladder
from .spectral import EigenPairSet, decompose
from .states import (
    GaussianState,
    LadderVectors,
    coherent_label,
    extract_alpha_beta,
    solve_gaussian,
)
from .trap import ModeFrequencies, TrapParams, build_lambda, frequencies


@dataclass(frozen=True)
class PenningModel:
    """Everything derived from (b, v), built once in dependency order."""

    params: TrapParams
    lambda_matrix: np.ndarray
    freqs: ModeFrequencies
    pairs: EigenPairSet
    modes: ModeSystem
    vectors: LadderVectors
    gaussian: GaussianState

    @classmethod
    def from_params(cls, b: float, v: float) -> "PenningModel":
        params = TrapParams(b, v)
        lam = build_lambda(params)
        freqs = frequencies(params)
        pairs = decompose(lam, freqs)
        modes = build_ladder(pairs, freqs)
        vectors = extract_alpha_beta(modes)
        return cls(
            params=params,
            lambda_matrix=lam,
            freqs=freqs,
            pairs=pairs,
            modes=modes,
            vectors=vectors,
            gaussian=solve_gaussian(vectors),
        )

    def label(self, z1: complex = 0, z2: complex = 0, z3: complex = 0):
        return coherent_label(z1, z2, z3, self.params)
