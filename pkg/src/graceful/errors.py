"""Exception types raised by the numerical kernels."""

from __future__ import annotations


class GracefulError(Exception):
    """Base class for numerical failures in this package.

    Input validation problems raise plain ``ValueError``; subclasses of
    this type mean a well-formed computation could not be carried out.
    """


class ConfluentRoots(GracefulError):
    """Roots coincide (or nearly so) where a backend needs them separated.

    Signals the caller to switch to the companion-exponential backend,
    which has no separation precondition.
    """


class NonConvergence(GracefulError):
    """Simultaneous root iteration hit its cap before converging."""

    def __init__(self, message: str, iterations: int, residual: float):
        super().__init__(f"{message} (iterations={iterations}, residual={residual:.3e})")
        self.iterations = iterations
        self.residual = residual


class QuadratureNotConverged(GracefulError):
    """Contour quadrature did not settle within the node budget.

    Carries the last two estimates and the node count actually used so
    callers can report how far apart the trapezoidal refinements were.
    """

    def __init__(
        self,
        message: str,
        nodes: int,
        last_estimate: tuple[complex, ...] | None = None,
        previous_estimate: tuple[complex, ...] | None = None,
    ):
        super().__init__(message)
        self.nodes = nodes
        self.last_estimate = last_estimate
        self.previous_estimate = previous_estimate


class SeriesNotConverged(GracefulError):
    """Taylor recurrence hit the term cap before the tail bound was met."""

    def __init__(self, message: str, terms: int):
        super().__init__(message)
        self.terms = terms
