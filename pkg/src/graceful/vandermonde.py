"""Vandermonde matrix, determinant, and closed-form inverse.

The inverse rows are exactly the exponential-sum coefficients used by the
partial-fraction backend, so both share one formula path.  Matrices are
plain complex numpy arrays (row-major, square).
"""

from __future__ import annotations

import numpy as np

from .errors import ConfluentRoots
from .polykernel import RootSet

DEFAULT_SEP_TOL = 1e-6


def vandermonde_matrix(roots: RootSet) -> np.ndarray:
    """m x m matrix with rows (1, a_j, a_j^2, ..., a_j^(m-1))."""
    return np.vander(np.asarray(roots.roots, dtype=complex), increasing=True)


def vandermonde_det(roots: RootSet) -> complex:
    """Determinant by the pairwise product formula.

    Uses the convention prod_{j<k} (a_k - a_j), which is the determinant of
    rows ordered (1, a_j, ..., a_j^(m-1)); the transposed-product convention
    differs by the sign (-1)^(m(m-1)/2), which cancels in every identity this
    package relies on.  Zero exactly when two roots coincide exactly.
    """
    rs = roots.roots
    det = 1.0 + 0j
    for j in range(len(rs)):
        for k in range(j + 1, len(rs)):
            det *= rs[k] - rs[j]
    return det


def coefficient_rows(roots: RootSet) -> np.ndarray:
    """Closed-form inverse entries, guarded only against exact coincidence.

    Entry (i, j) is (-1)^(m-i) * S_{m-i}(roots without a_j) divided by
    prod_{k != j} (a_j - a_k); row i holds the coefficients of the
    exponentials e^{a_j x} in basis element i.  Denominators are computed
    once per column and reused across rows, so the whole inverse costs
    O(m^2).
    """
    rs = roots.roots
    m = len(rs)
    inv = np.empty((m, m), dtype=complex)
    for j, aj in enumerate(rs):
        others = rs[:j] + rs[j + 1:]
        denom = 1.0 + 0j
        for ak in others:
            denom *= aj - ak
        if denom == 0:
            raise ConfluentRoots(
                f"root {aj!r} is exactly repeated; the exponential-sum form degenerates"
            )
        # one product-recurrence pass yields S_0..S_{m-1} of the omitted roots
        e = [0j] * m
        e[0] = 1.0 + 0j
        for count, a in enumerate(others, start=1):
            for d in range(min(count, m - 1), 0, -1):
                e[d] += a * e[d - 1]
        sign = 1.0 if (m % 2 == 1) else -1.0
        for i in range(1, m + 1):
            inv[i - 1, j] = sign * e[m - i] / denom
            sign = -sign
    return inv


def vandermonde_inverse(roots: RootSet, sep_tol: float = DEFAULT_SEP_TOL) -> np.ndarray:
    """Closed-form inverse of the Vandermonde matrix.

    Requires the smallest pairwise root distance to exceed
    sep_tol * (1 + max|a_j|); below that the closed form has lost too much
    of the mantissa to be worth returning and ConfluentRoots tells the
    caller to use the companion-exponential route instead.
    """
    scale = 1.0 + roots.max_abs()
    sep = roots.min_separation()
    if sep <= sep_tol * scale:
        raise ConfluentRoots(
            f"min root separation {sep:.3e} is below {sep_tol:g} * {scale:.3g}; "
            "use the companion-exponential backend"
        )
    return coefficient_rows(roots)
