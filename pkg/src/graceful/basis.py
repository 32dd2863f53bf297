"""Evaluation backends for the confluence-proof solution basis.

The object computed everywhere in this package is the family g_1..g_m of
solutions of the degree-m constant-coefficient operator normalised by
g_i^(k)(0) = 1 if k = i-1 else 0.  Unlike the plain exponentials e^{a_j x},
these stay well defined and linearly independent no matter how the
characteristic roots collide.  Four numerically distinct backends compute
them on overlapping regimes:

* partial fractions  -- explicit exponential sums with closed-form
  Vandermonde-inverse coefficients; sharpest for well-separated roots,
  cancels catastrophically as roots approach each other;
* companion exponential -- first row of exp(x*C); entire in the polynomial
  coefficients, so confluent and distinct roots are handled identically;
* contour quadrature -- trapezoidal rule on a circle enclosing every root,
  applied to e^{tx} H_i(t) / p(t) with H_i the suffix (Horner-tail)
  polynomials of p;
* power series -- the Taylor recurrence of the defining equation.

Cross-agreement of these independent routes is the package's executable
evidence that the basis has no hidden singularities.  All evaluators are
pure functions; grid evaluations may run concurrently against a shared
read-only ToleranceConfig.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping

import numpy as np

from ._expm import expm
from .errors import QuadratureNotConverged, SeriesNotConverged
from .polykernel import (
    MonicPolynomial,
    RootSet,
    poly_from_roots,
    require_finite,
)
from .vandermonde import coefficient_rows

# beyond this |t*x| the contour integrand overflows double precision
_EXP_ARG_LIMIT = 700.0


class Backend(str, Enum):
    PARTIAL_FRACTION = "pf"
    COMPANION_EXP = "exp"
    CONTOUR = "contour"
    SERIES = "series"


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical policy knobs shared by the backends.

    sep_tol:        relative pairwise-separation threshold below which the
                    closed-form exponential sum is abandoned for the
                    companion exponential;
    quad_tol:       agreement between successive trapezoidal refinements at
                    which the contour backend stops doubling nodes;
    series_tol:     tail bound at which the Taylor recurrence truncates;
    max_quad_nodes: contour node budget, a power of two >= 16.
    """

    sep_tol: float = 1e-6
    quad_tol: float = 1e-11
    series_tol: float = 1e-14
    max_quad_nodes: int = 4096

    def __post_init__(self):
        for name in ("sep_tol", "quad_tol", "series_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        n = self.max_quad_nodes
        if n < 16 or (n & (n - 1)) != 0:
            raise ValueError("max_quad_nodes must be a power of two >= 16")


DEFAULT_TOLERANCES = ToleranceConfig()


@dataclass(frozen=True)
class BasisValues:
    """The m basis values at one evaluation point, tagged with their origin."""

    values: tuple[complex, ...]
    x: complex
    backend: Backend
    diagnostics: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(require_finite(v, "basis value") for v in self.values))
        object.__setattr__(self, "x", require_finite(self.x, "x"))


def companion_matrix(p: MonicPolynomial) -> np.ndarray:
    """Companion matrix C of p, oriented for the state vector (f, f', ..., f^(m-1)).

    Ones sit on the superdiagonal and -c_0..-c_{m-1} across the last row, so
    exp(x*C) propagates derivative stacks and its row k holds the k-th
    derivatives (g_1^(k)(x), ..., g_m^(k)(x)).  In particular row 1 reads off
    the basis values themselves.  The transposed convention would silently
    turn rows into derivatives of g_1 instead -- keep the orientation.
    """
    m = p.degree
    c = np.zeros((m, m), dtype=complex)
    idx = np.arange(m - 1)
    c[idx, idx + 1] = 1.0
    c[m - 1, :] = [-ck for ck in p.coeffs[:m]]
    return c


def eval_partial_fraction(roots: RootSet, x: complex) -> BasisValues:
    """Exponential-sum form: g_i(x) = sum_j W[i, j] e^{a_j x}.

    W is the closed-form Vandermonde inverse (same formula path as
    ``vandermonde.vandermonde_inverse``).  Only exactly repeated roots are
    rejected here; guarding against near-coincidence is the caller's job
    (``eval_auto`` switches backends on a separation threshold).
    """
    x = require_finite(x, "x")
    weights = coefficient_rows(roots)
    exponentials = np.exp(np.asarray(roots.roots, dtype=complex) * x)
    values = weights @ exponentials
    return BasisValues(tuple(values), x, Backend.PARTIAL_FRACTION)


def eval_companion_exp(p: MonicPolynomial, x: complex) -> BasisValues:
    """First row of exp(x*C): works identically for confluent and distinct roots."""
    x = require_finite(x, "x")
    propagator = expm(x * companion_matrix(p))
    return BasisValues(tuple(propagator[0]), x, Backend.COMPANION_EXP)


def eval_contour(roots: RootSet, x: complex, cfg: ToleranceConfig | None = None) -> BasisValues:
    """Trapezoidal contour quadrature on a circle tightly enclosing the roots.

    The circle is centred at the root centroid with radius
    1 + max|a_j - centre|, and the constant factor e^{centre * x} is pulled
    out of the integral analytically.  A wide origin-centred circle would
    make the integrand reach e^{R|x|} while the result sits at e^{Re(a x)},
    and that dynamic-range gap times machine epsilon would dominate the
    answer; the tight centred circle removes the gap up to the spread of the
    roots themselves.  Overflow beyond double range raises
    QuadratureNotConverged with a diagnostic rather than returning Inf.
    """
    cfg = cfg or DEFAULT_TOLERANCES
    rs = np.asarray(roots.roots, dtype=complex)
    center = complex(rs.mean())
    radius = 1.0 + float(np.abs(rs - center).max())
    return _contour_from_poly(poly_from_roots(roots), center, radius, x, cfg)


def _contour_from_poly(p: MonicPolynomial, center: complex, radius: float, x: complex,
                       cfg: ToleranceConfig) -> BasisValues:
    """Quadrature core, shared with callers that hold exact coefficients.

    On the circle t = center + radius * e^{i theta} the integrand for basis
    element i is e^{(t - center) x} H_i(t) / p(t), with H_i the suffix
    polynomials of p; the factor e^{center * x} multiplies the final
    estimates.  Node counts double from 16 until two successive trapezoidal
    estimates agree to quad_tol (relative to 1 + max|estimate|) or reach the
    rounding floor of the summation itself, whichever comes first.
    """
    x = require_finite(x, "x")
    m = p.degree
    if abs((center * x).real) + radius * abs(x) > _EXP_ARG_LIMIT:
        raise QuadratureNotConverged(
            f"e^(tx) exceeds double-precision range on the contour "
            f"|t - {center:g}| = {radius:g}", nodes=0)
    prefactor = np.exp(center * x)

    coeffs = np.asarray(p.coeffs, dtype=complex)
    previous = None
    nodes = 16
    estimate = None
    while nodes <= cfg.max_quad_nodes:
        s = radius * np.exp(2j * np.pi * np.arange(nodes) / nodes)
        t = center + s
        # one descending Horner pass yields every suffix polynomial and p:
        # H_m = 1, H_i = t*H_{i+1} + c_i, p = t*H_1 + c_0
        tails = np.empty((m, nodes), dtype=complex)
        h = np.ones(nodes, dtype=complex)
        tails[m - 1] = h
        for i in range(m - 1, 0, -1):
            h = h * t + coeffs[i]
            tails[i - 1] = h
        p_on_circle = h * t + coeffs[0]
        weight = np.exp(s * x) * s / p_on_circle
        terms = tails * (prefactor * weight)
        estimate = terms.mean(axis=1)
        # attainable-accuracy floor of the pairwise summation
        floor = 16.0 * 2.2e-16 * math.log2(nodes) * float(np.abs(terms).max())
        if previous is not None:
            gap = float(np.abs(estimate - previous).max())
            tol = cfg.quad_tol * (1.0 + float(np.abs(estimate).max()))
            if gap <= max(tol, floor):
                return BasisValues(tuple(estimate), x, Backend.CONTOUR,
                                   {"quad_nodes": float(nodes)})
        previous = estimate
        nodes *= 2
    raise QuadratureNotConverged(
        f"trapezoidal estimates still moving at {cfg.max_quad_nodes} nodes",
        nodes=cfg.max_quad_nodes,
        last_estimate=tuple(estimate) if estimate is not None else None,
        previous_estimate=tuple(previous) if previous is not None else None)


def eval_series(p: MonicPolynomial, x: complex, cfg: ToleranceConfig | None = None,
                max_terms: int = 500) -> BasisValues:
    """Taylor solution of the defining equation with initial data delta_{i,k+1}.

    Convention for the stored quantities (this is the documented contract):
    the recurrence runs on the summands b_n = f^(n)(0) * x^n / n! themselves,
    so the derivative recurrence a_{n+m} = -sum_{k<m} c_k a_{n+k} becomes

        b_{n+m} = -sum_{k<m} c_k x^(m-k) b_{n+k} / ((n+k+1) * ... * (n+m)),

    keeping every intermediate at the scale of its own term.  Summation is
    compensated (Kahan).  Truncation: once past the series hump (term index
    >= root-bound * |x|, Fujiwara bound from the coefficients) and once the
    window of the last m terms is decaying, the geometric tail estimate
    window_max * r / (1 - r) with the measured decay ratio r must drop below
    series_tol * max(1, |sum|).  The series is entire, so the term cap is a
    cost policy, not a correctness limit: inputs need roughly
    root_bound * |x| + a few dozen terms, and anything still moving at
    ``max_terms`` raises SeriesNotConverged instead of truncating silently.
    """
    cfg = cfg or DEFAULT_TOLERANCES
    x = require_finite(x, "x")
    m = p.degree
    if x == 0:
        return BasisValues(tuple(1.0 + 0j if i == 0 else 0j for i in range(m)),
                           x, Backend.SERIES)

    coeffs = p.coeffs
    # Fujiwara root bound; the series hump sits near max|root| * |x|
    root_bound = 2.0 * max(abs(coeffs[m - k]) ** (1.0 / k) for k in range(1, m + 1))
    min_index = m + int(math.ceil(root_bound * abs(x)))
    x_powers = np.array([x ** (m - k) for k in range(m)], dtype=complex)

    # window[k, i] = b_{n+k} for basis element i+1; initially diag(x^k / k!)
    window = np.zeros((m, m), dtype=complex)
    term = 1.0 + 0j
    for k in range(m):
        window[k, k] = term
        term *= x / (k + 1)
    total = window.sum(axis=0)
    comp = np.zeros(m, dtype=complex)
    prev_window_max = float(np.abs(window).max())

    for q in range(m, max_terms):
        n = q - m
        rising = 1.0
        wcoef = np.empty(m, dtype=complex)
        for k in range(m - 1, -1, -1):
            rising *= n + k + 1
            wcoef[k] = coeffs[k] * x_powers[k] / rising
        b_new = -(wcoef @ window)
        # Kahan step
        y = b_new - comp
        t = total + y
        comp = (t - total) - y
        total = t
        window[:-1] = window[1:]
        window[-1] = b_new

        window_max = float(np.abs(window).max())
        if window_max == 0.0:
            break  # polynomial solution: the series terminated exactly
        if q >= min_index and window_max < prev_window_max:
            ratio = window_max / prev_window_max
            tail = window_max * ratio / (1.0 - ratio)
            if tail < cfg.series_tol * max(1.0, float(np.abs(total).max())):
                break
        prev_window_max = window_max
    else:
        raise SeriesNotConverged(
            f"tail bound not reached within {max_terms} terms", terms=max_terms)
    return BasisValues(tuple(total), x, Backend.SERIES)


def eval_auto(roots: RootSet, x: complex, cfg: ToleranceConfig | None = None,
              *, poly: MonicPolynomial | None = None) -> BasisValues:
    """Pick the sharp backend when the roots allow it, the robust one otherwise.

    Partial fractions when the minimum pairwise separation exceeds
    sep_tol * (1 + max|a_j|); companion exponential below that.  The choice
    is recorded in the backend tag of the result.  Callers that started from
    coefficients should pass them as ``poly`` so the companion branch uses
    them exactly instead of re-expanding recovered (clustered) roots.
    """
    cfg = cfg or DEFAULT_TOLERANCES
    scale = 1.0 + roots.max_abs()
    if roots.min_separation() > cfg.sep_tol * scale:
        return eval_partial_fraction(roots, x)
    return eval_companion_exp(poly or poly_from_roots(roots), x)


def basis_derivatives(p: MonicPolynomial, x: complex, max_order: int) -> np.ndarray:
    """Matrix of derivatives: entry (k, i-1) is g_i^(k)(x), k = 0..max_order.

    Rows 0..m-1 are exp(x*C) itself (so at x = 0 they form the identity --
    the initial-value structure that makes IVP solving coefficient-free);
    higher rows follow from the defining recurrence
    g^(k) = -sum_{j<m} c_j g^(k-m+j).
    """
    if max_order < 0:
        raise ValueError("max_order must be nonnegative")
    x = require_finite(x, "x")
    m = p.degree
    propagator = expm(x * companion_matrix(p))
    rows = [propagator[k] for k in range(min(max_order + 1, m))]
    for k in range(m, max_order + 1):
        acc = np.zeros(m, dtype=complex)
        for j in range(m):
            acc -= p.coeffs[j] * rows[k - m + j]
        rows.append(acc)
    return np.array(rows[:max_order + 1])
