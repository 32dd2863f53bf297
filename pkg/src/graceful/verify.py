"""Executable verification: Wronskian identity, basis health checks, collision sweep.

The two defining properties of the basis are checked the only way a finite
computation can:

* linear independence, via the Wronskian determinant, which for this basis
  must equal e^{s x} with s the root sum (equivalently -c_{m-1});
* absence of singularities in the roots, via cross-agreement of the three
  evaluators that are entire by construction (companion exponential, contour
  quadrature, power series).  That surrogate is stated explicitly in every
  report rather than overclaimed.

The stability sweep drives a root pair together and records each backend's
error against an extended-precision series oracle, quantifying how the
exponential-sum form degrades while the companion form does not.  Sweep
points are independent pure computations and may run concurrently.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ._extprec import series_reference
from .basis import (
    ToleranceConfig,
    DEFAULT_TOLERANCES,
    _contour_from_poly,
    basis_derivatives,
    eval_companion_exp,
    eval_contour,
    eval_partial_fraction,
    eval_series,
)
from .errors import GracefulError
from .polykernel import MonicPolynomial, RootSet, poly_from_roots, require_finite, roots_from_poly

ENTIRETY_NOTE = (
    "Entirety in the roots is not machine-checkable; this report uses the "
    "executable surrogate: three independently constructed evaluators that are "
    "entire by construction (companion exponential, contour quadrature, power "
    "series) must agree at every sample point. Linear independence is checked "
    "through the Wronskian identity."
)

REFERENCE_BACKEND = "series_extended"


def _pair(z: complex) -> list[float]:
    return [z.real, z.imag]


def wronskian(p: MonicPolynomial, x: complex) -> complex:
    """Wronskian determinant of the basis at x.

    Computed as the determinant (LU with partial pivoting) of the m x m
    derivative matrix, deliberately not by the closed identity e^{s x} with
    s = -c_{m-1} = sum of the roots -- that identity is what callers test
    against.
    """
    matrix = basis_derivatives(p, x, p.degree - 1)
    return complex(np.linalg.det(matrix))


@dataclass(frozen=True)
class CheckSample:
    """Outcome of the health checks at one sample point."""

    x: complex
    agreement_error: float | None
    wronskian_error: float | None
    failures: tuple[str, ...]
    passed: bool

    def to_dict(self) -> dict:
        return {
            "x": _pair(self.x),
            "agreement_error": self.agreement_error,
            "wronskian_error": self.wronskian_error,
            "failures": list(self.failures),
            "passed": self.passed,
        }


@dataclass(frozen=True)
class CheckReport:
    coeffs: tuple[complex, ...]
    samples: tuple[CheckSample, ...]
    agree_tol: float
    wronskian_tol: float
    passed: bool
    entirety_note: str = ENTIRETY_NOTE

    def to_dict(self) -> dict:
        return {
            "coeffs": [_pair(c) for c in self.coeffs],
            "agree_tol": self.agree_tol,
            "wronskian_tol": self.wronskian_tol,
            "passed": self.passed,
            "entirety_note": self.entirety_note,
            "samples": [s.to_dict() for s in self.samples],
        }


def _pairwise_error(results: Sequence[tuple[complex, ...]]) -> float:
    """Largest componentwise gap between any two result vectors.

    Normalised by max(1, magnitudes), so the check passes when values agree
    absolutely or relatively, whichever is looser.
    """
    worst = 0.0
    for a_idx in range(len(results)):
        for b_idx in range(a_idx + 1, len(results)):
            for va, vb in zip(results[a_idx], results[b_idx]):
                gap = abs(va - vb) / max(1.0, abs(va), abs(vb))
                worst = max(worst, gap)
    return worst


def check_graceful(p: MonicPolynomial, sample_xs: Sequence[complex],
                   cfg: ToleranceConfig | None = None,
                   agree_tol: float = 1e-8,
                   wronskian_tol: float = 1e-8) -> CheckReport:
    """Run both basis health checks at every sample point.

    Mathematical failures are reported per sample, never raised.  The roots
    are recovered from the coefficients only to size the contour radius; all
    three entire evaluators work from the exact coefficients.
    """
    cfg = cfg or DEFAULT_TOLERANCES
    xs = [require_finite(x, "sample point") for x in sample_xs]
    if not xs:
        raise ValueError("need at least one sample point")
    estimates = np.asarray(roots_from_poly(p).roots, dtype=complex)
    center = complex(estimates.mean())
    radius = 1.0 + float(np.abs(estimates - center).max())
    root_sum = -p.coeffs[p.degree - 1]

    samples = []
    for x in xs:
        failures: list[str] = []
        results = []
        # overflow inside an evaluator is a recordable outcome here, not a
        # warning: non-finite results surface as failure entries below
        with np.errstate(all="ignore"):
            for name, run in (
                ("companion_exp", lambda: eval_companion_exp(p, x)),
                ("contour", lambda: _contour_from_poly(p, center, radius, x, cfg)),
                ("series", lambda: eval_series(p, x, cfg)),
            ):
                try:
                    results.append(run().values)
                except (GracefulError, ValueError) as exc:
                    failures.append(f"{name}: {exc}")
        agreement_error = _pairwise_error(results) if len(results) >= 2 else None

        wronskian_error = None
        try:
            with np.errstate(all="ignore"):
                predicted = cmath.exp(root_sum * x)
                wronskian_error = abs(wronskian(p, x) - predicted) / abs(predicted)
            if not math.isfinite(wronskian_error):
                failures.append(f"wronskian: non-finite at x={x!r}")
                wronskian_error = None
        except (GracefulError, ValueError, OverflowError) as exc:
            failures.append(f"wronskian: {exc}")

        passed = (not failures
                  and agreement_error is not None and agreement_error <= agree_tol
                  and wronskian_error is not None and wronskian_error <= wronskian_tol)
        samples.append(CheckSample(x, agreement_error, wronskian_error,
                                   tuple(failures), passed))
    return CheckReport(p.coeffs, tuple(samples), agree_tol, wronskian_tol,
                       all(s.passed for s in samples))


@dataclass(frozen=True)
class SweepPoint:
    """Backend errors against the extended-precision reference at one separation.

    Errors are absolute max-norm differences; a backend that raised is
    recorded in ``failures`` with a None error.
    """

    separation: float
    partial_fraction_error: float | None
    companion_error: float | None
    contour_error: float | None
    reference_backend: str = REFERENCE_BACKEND
    failures: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "separation": self.separation,
            "partial_fraction_error": self.partial_fraction_error,
            "companion_error": self.companion_error,
            "contour_error": self.contour_error,
            "reference_backend": self.reference_backend,
            "failures": dict(self.failures),
        }


@dataclass(frozen=True)
class SweepReport:
    roots_template: tuple[complex, ...]
    x: complex
    eps_grid: tuple[float, ...]
    points: tuple[SweepPoint, ...]

    def columns(self) -> dict:
        return {
            "eps": list(self.eps_grid),
            "partial_fraction_error": [pt.partial_fraction_error for pt in self.points],
            "companion_error": [pt.companion_error for pt in self.points],
            "contour_error": [pt.contour_error for pt in self.points],
        }

    def to_dict(self) -> dict:
        return {
            "roots_template": [_pair(r) for r in self.roots_template],
            "x": _pair(self.x),
            "reference_backend": REFERENCE_BACKEND,
            "points": [pt.to_dict() for pt in self.points],
            "columns": self.columns(),
        }


def _max_error(values: Sequence[complex], reference: Sequence[complex]) -> float:
    return max(abs(v - r) for v, r in zip(values, reference))


def stability_sweep(template: RootSet, eps_grid: Sequence[float], x: complex,
                    cfg: ToleranceConfig | None = None) -> SweepReport:
    """Collide the first two template roots and measure every backend.

    For each eps the second root is set to first + eps (remaining roots kept
    fixed) and each backend's output is compared against the extended-
    precision series reference built from the same roots.  Expected picture:
    the partial-fraction error grows as eps shrinks, the companion error
    stays flat, and at eps = 0 partial fractions fail outright while the
    companion backend keeps the exact confluent limit.
    """
    cfg = cfg or DEFAULT_TOLERANCES
    if template.m < 2:
        raise ValueError("the sweep needs a colliding pair: m >= 2")
    eps_list = [float(e) for e in eps_grid]
    if not eps_list:
        raise ValueError("eps grid must be nonempty")
    if any(e < 0 for e in eps_list):
        raise ValueError("separations must be nonnegative")
    if any(b >= a for a, b in zip(eps_list, eps_list[1:])):
        raise ValueError("eps grid must be strictly decreasing")
    x = require_finite(x, "x")

    base = template.roots
    points = []
    for eps in eps_list:
        roots = (base[0], base[0] + eps) + base[2:]
        root_set = RootSet(roots)
        reference = series_reference(roots, x)
        failures: dict[str, str] = {}

        def attempt(name: str, run) -> float | None:
            try:
                with np.errstate(all="ignore"):
                    return _max_error(run().values, reference)
            except (GracefulError, ValueError) as exc:
                failures[name] = f"{type(exc).__name__}: {exc}"
                return None

        pf_err = attempt("partial_fraction", lambda: eval_partial_fraction(root_set, x))
        comp_err = attempt("companion_exp", lambda: eval_companion_exp(poly_from_roots(root_set), x))
        contour_err = attempt("contour", lambda: eval_contour(root_set, x, cfg))

        points.append(SweepPoint(eps, pf_err, comp_err, contour_err,
                                 failures=failures))
    return SweepReport(template.roots, x, tuple(eps_list), tuple(points))
