"""Dense matrix exponential: scaling-and-squaring with diagonal Pade approximants.

Degree selection uses the standard double-precision backward-error thresholds
(degrees 3/5/7/9 for small norms, degree 13 with power-of-two scaling above),
so the computed result is the exact exponential of a matrix within roughly a
unit roundoff of the input.
"""

from __future__ import annotations

import math

import numpy as np

_THETA = (
    (3, 1.495585217958292e-2),
    (5, 2.539398330063230e-1),
    (7, 9.504178996162932e-1),
    (9, 2.097847961257068e0),
)
_THETA_13 = 5.371920351148152e0

_B = {
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


def _pade_small(a: np.ndarray, degree: int) -> np.ndarray:
    b = _B[degree]
    n = a.shape[0]
    ident = np.eye(n, dtype=complex)
    a2 = a @ a
    powers = [ident, a2]
    for _ in range(degree // 2 - 1):
        powers.append(powers[-1] @ a2)
    u = np.zeros_like(a)
    v = np.zeros_like(a)
    for k, p in enumerate(powers):
        u += b[2 * k + 1] * p
        v += b[2 * k] * p
    u = a @ u
    return np.linalg.solve(v - u, v + u)


def _pade_13(a: np.ndarray) -> np.ndarray:
    b = _B[13]
    n = a.shape[0]
    ident = np.eye(n, dtype=complex)
    a2 = a @ a
    a4 = a2 @ a2
    a6 = a2 @ a4
    u = a @ (a6 @ (b[13] * a6 + b[11] * a4 + b[9] * a2)
             + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident)
    v = (a6 @ (b[12] * a6 + b[10] * a4 + b[8] * a2)
         + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident)
    return np.linalg.solve(v - u, v + u)


def expm(a: np.ndarray) -> np.ndarray:
    """exp(a) for a square complex matrix."""
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    norm = float(np.abs(a).sum(axis=0).max()) if a.size else 0.0
    if not math.isfinite(norm):
        raise ValueError("matrix entries must be finite")
    for degree, theta in _THETA:
        if norm <= theta:
            return _pade_small(a, degree)
    squarings = max(0, math.ceil(math.log2(norm / _THETA_13)))
    result = _pade_13(a / (2.0 ** squarings))
    for _ in range(squarings):
        result = result @ result
    return result
