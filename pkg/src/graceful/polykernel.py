"""Complex polynomial and symmetric-function primitives shared by every backend.

Scalars are plain Python ``complex``; NaN/Inf components are rejected at the
API boundary.  Polynomial coefficients are stored ascending by degree, so all
degree bookkeeping derives from sequence length.  Everything here is a pure
function of its value inputs and safe to call from any number of threads.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import NonConvergence

_EPS = 2.220446049250313e-16


def require_finite(z: complex, what: str = "value") -> complex:
    """Coerce to ``complex`` and reject non-finite components."""
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"{what} must be finite, got {z!r}")
    return z


@dataclass(frozen=True)
class RootSet:
    """The multiset of characteristic roots, m >= 1.

    Entry order is a storage artifact: every operation consuming a RootSet
    is invariant under permutation of the entries, up to floating-point
    summation order.
    """

    roots: tuple[complex, ...]

    def __post_init__(self):
        roots = tuple(require_finite(r, "root") for r in self.roots)
        if not roots:
            raise ValueError("a RootSet needs at least one root")
        object.__setattr__(self, "roots", roots)

    @property
    def m(self) -> int:
        return len(self.roots)

    def max_abs(self) -> float:
        return max(abs(r) for r in self.roots)

    def min_separation(self) -> float:
        """Smallest pairwise distance; ``inf`` for a single root."""
        rs = self.roots
        if len(rs) == 1:
            return math.inf
        return min(abs(rs[j] - rs[k]) for j in range(len(rs)) for k in range(j + 1, len(rs)))


@dataclass(frozen=True)
class MonicPolynomial:
    """Coefficients c_0..c_m, ascending degree, with c_m exactly 1."""

    coeffs: tuple[complex, ...]

    def __post_init__(self):
        coeffs = tuple(require_finite(c, "coefficient") for c in self.coeffs)
        if len(coeffs) < 2:
            raise ValueError("degree must be at least 1")
        if coeffs[-1] != 1:
            raise ValueError(f"leading coefficient must be exactly 1, got {coeffs[-1]!r}")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, t: complex) -> complex:
        return eval_poly(self.coeffs, t)


def eval_poly(coeffs: Sequence[complex], t: complex) -> complex:
    """Horner evaluation of ascending-degree coefficients."""
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def elementary_symmetric(values: RootSet | Iterable[complex], d: int) -> complex:
    """Elementary symmetric polynomial S_d of the inputs.

    Computed by the product recurrence (reading coefficient d off the running
    product of (1 + a_k z)), which is O(n*d) and numerically stable.  S_0 is 1
    and S_d is 0 whenever d exceeds the number of inputs.  Exhaustive subset
    enumeration is reserved for test oracles.
    """
    if d < 0:
        raise ValueError("degree must be nonnegative")
    vals = values.roots if isinstance(values, RootSet) else tuple(require_finite(v) for v in values)
    e = [0j] * (d + 1)
    e[0] = 1.0 + 0j
    for count, a in enumerate(vals, start=1):
        for j in range(min(count, d), 0, -1):
            e[j] += a * e[j - 1]
    return e[d]


def poly_from_roots(roots: RootSet) -> MonicPolynomial:
    """Expand prod(t - a_j) by incremental multiplication.

    Equivalently c_k = (-1)^(m-k) * S_{m-k}(a); the incremental product keeps
    the leading coefficient exactly 1.
    """
    coeffs = [1.0 + 0j]
    for a in roots.roots:
        nxt = [0j] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            nxt[k + 1] += c
            nxt[k] -= a * c
        coeffs = nxt
    return MonicPolynomial(tuple(coeffs))


def horner_tails(p: MonicPolynomial) -> list[tuple[complex, ...]]:
    """Suffix polynomials H_i(t) = sum_{k>=i} c_k t^{k-i} for i = 1..m.

    Returned as ascending coefficient tuples; H_m is the constant 1 and
    deg H_i = m - i.  At each root a_j of p, H_i(a_j) equals
    (-1)^(m-i) * S_{m-i} of the remaining roots, which makes these the
    numerators of the contour integrands for the individual basis elements.
    """
    return [p.coeffs[i:] for i in range(1, p.degree + 1)]


def roots_from_poly(p: MonicPolynomial, tol: float = 1e-12, max_iter: int = 200) -> RootSet:
    """All roots of p by Aberth-Ehrlich simultaneous iteration.

    Starts from a slightly rotated circle at the Cauchy bound.  A root is
    accepted once its correction drops below tol*(1 + max|z|) or once its
    residual reaches the componentwise rounding floor of the Horner
    evaluation; the second condition is what lets clusters of multiple
    roots terminate at their attainable accuracy instead of stalling.

    Raises NonConvergence (with the final residual) after ``max_iter``
    sweeps.  Round-tripping through poly_from_roots reproduces the
    coefficients to roughly tol for simple roots; multiple roots are
    resolved only to the conditioning-limited cluster radius.
    """
    m = p.degree
    c = p.coeffs
    if m == 1:
        return RootSet((-c[0],))

    deriv = tuple((k + 1) * c[k + 1] for k in range(m))
    radius = 1.0 + max(abs(ck) for ck in c[:-1])
    z = [radius * cmath.exp(1j * (2.0 * math.pi * k / m + 0.4)) for k in range(m)]
    absc = [abs(ck) for ck in c]

    for _ in range(max_iter):
        steps = []
        new_z = list(z)
        scale = 1.0 + max(abs(zj) for zj in z)
        for j, zj in enumerate(z):
            pv = eval_poly(c, zj)
            # attainable-accuracy floor of the Horner evaluation at zj
            floor = 4.0 * _EPS * eval_poly(absc, abs(zj)).real
            if abs(pv) <= floor:
                steps.append(0.0)
                continue
            dv = eval_poly(deriv, zj)
            if dv == 0:
                dv = _EPS * (1.0 + abs(pv))
            newton = pv / dv
            acc = 0j
            for k, zk in enumerate(z):
                if k == j:
                    continue
                diff = zj - zk
                if diff == 0:
                    diff = 1e-12 * scale
                acc += 1.0 / diff
            denom = 1.0 - newton * acc
            if denom == 0:
                denom = _EPS
            step = newton / denom
            new_z[j] = zj - step
            steps.append(abs(step))
        z = new_z
        if max(steps) < tol * scale:
            return RootSet(tuple(z))
    residual = max(abs(eval_poly(c, zj)) for zj in z)
    raise NonConvergence("root iteration did not converge", max_iter, residual)
