"""Initial value problems, solved without a linear solve.

Because the basis satisfies g_i^(k)(x0-shifted 0) = 1 exactly when k = i-1,
the prescribed derivatives at the expansion point *are* the expansion
coefficients: f(x) = sum_k derivs[k] * g_{k+1}(x - x0).  That coefficients
fall out for free, uniformly in the root configuration, is the payoff of
using this basis instead of raw exponentials.  Translation is handled by
shifting the evaluation argument, never the roots -- the roots are data of
the operator and do not move with x0.
"""

from __future__ import annotations

from dataclasses import dataclass

from .basis import ToleranceConfig, eval_auto
from .polykernel import MonicPolynomial, require_finite, roots_from_poly


@dataclass(frozen=True)
class IVProblem:
    """Operator polynomial, expansion point, and the m prescribed derivatives."""

    p: MonicPolynomial
    x0: complex
    derivs: tuple[complex, ...]

    def __post_init__(self):
        object.__setattr__(self, "x0", require_finite(self.x0, "x0"))
        derivs = tuple(require_finite(d, "derivative") for d in self.derivs)
        if len(derivs) != self.p.degree:
            raise ValueError(
                f"expected {self.p.degree} prescribed derivatives, got {len(derivs)}")
        object.__setattr__(self, "derivs", derivs)


@dataclass(frozen=True)
class Solution:
    """Expansion of the solution in the basis; coefficients equal the derivatives."""

    problem: IVProblem
    coefficients: tuple[complex, ...]


def solve_ivp(problem: IVProblem) -> Solution:
    """Validation plus construction: no linear system is assembled or solved."""
    return Solution(problem, problem.derivs)


def eval_solution(solution: Solution, x: complex,
                  cfg: ToleranceConfig | None = None) -> complex:
    """Evaluate the expansion at x through the auto-selected backend at x - x0.

    Roots are recovered only to drive the backend choice; the companion
    branch keeps the problem's exact coefficients.
    """
    x = require_finite(x, "x")
    problem = solution.problem
    roots = roots_from_poly(problem.p)
    basis = eval_auto(roots, x - problem.x0, cfg, poly=problem.p)
    return sum(c * g for c, g in zip(solution.coefficients, basis.values))
