"""Matrix exponential by scaling and squaring with a diagonal Pade core.

Higham's 2005 scheme: pick the lowest Pade degree m in {3, 5, 7, 9, 13} whose
backward-error bound theta_m covers ||A||_1, otherwise scale A by 2^-s so that
degree 13 applies and square the result s times.
"""
from __future__ import annotations

import math

import numpy as np

_PADE_COEFFS = {
    3: (120.0, 60.0, 12.0, 1.0),
    5: (30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0),
    7: (17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0),
    9: (17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0,
        2162160.0, 110880.0, 3960.0, 90.0, 1.0),
    13: (64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
         1187353796428800.0, 129060195264000.0, 10559470521600.0,
         670442572800.0, 33522128640.0, 1323241920.0, 40840800.0,
         960960.0, 16380.0, 182.0, 1.0),
}

_THETA = {
    3: 1.495585217958292e-2,
    5: 2.539398330063230e-1,
    7: 9.504178996162932e-1,
    9: 2.097847961257068e0,
    13: 5.371920351148152e0,
}


def _pade_uv(a: np.ndarray, m: int) -> tuple[np.ndarray, np.ndarray]:
    c = _PADE_COEFFS[m]
    ident = np.eye(a.shape[0], dtype=a.dtype)
    a2 = a @ a
    if m == 13:
        a4 = a2 @ a2
        a6 = a4 @ a2
        u = a @ (a6 @ (c[13] * a6 + c[11] * a4 + c[9] * a2)
                 + c[7] * a6 + c[5] * a4 + c[3] * a2 + c[1] * ident)
        v = (a6 @ (c[12] * a6 + c[10] * a4 + c[8] * a2)
             + c[6] * a6 + c[4] * a4 + c[2] * a2 + c[0] * ident)
        return u, v
    powers = [ident, a2]
    for _ in range(2, (m + 1) // 2):
        powers.append(powers[-1] @ a2)
    u = sum(c[2 * k + 1] * powers[k] for k in range((m + 1) // 2))
    v = sum(c[2 * k] * powers[k] for k in range((m + 1) // 2))
    return a @ u, v


def expm(a) -> np.ndarray:
    """Exponential of a square matrix (real or complex, dense)."""
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("expm needs a square matrix")
    if not np.issubdtype(a.dtype, np.inexact):
        a = a.astype(float)
    if a.shape[0] == 0:
        return a.copy()

    norm1 = np.linalg.norm(a, 1)
    for m in (3, 5, 7, 9):
        if norm1 <= _THETA[m]:
            u, v = _pade_uv(a, m)
            return np.linalg.solve(v - u, v + u)

    s = 0
    if norm1 > _THETA[13]:
        s = max(0, int(math.ceil(math.log2(norm1 / _THETA[13]))))
    u, v = _pade_uv(a / 2.0**s, 13)
    r = np.linalg.solve(v - u, v + u)
    for _ in range(s):
        r = r @ r
    return r


def expm_taylor(a, terms: int = 60) -> np.ndarray:
    """Plain truncated Taylor series; only sensible for small ||a||."""
    a = np.asarray(a, dtype=complex if np.iscomplexobj(a) else float)
    out = np.eye(a.shape[0], dtype=a.dtype)
    term = out.copy()
    for k in range(1, terms):
        term = term @ a / k
        out = out + term
    return out
