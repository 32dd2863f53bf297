"""Fundamental systems for constant-coefficient linear ODEs that survive
root collisions: construction, four evaluation backends, verification, and
a coefficient-free IVP solver.
"""

__version__ = "0.1.0"

from .basis import (
    Backend,
    BasisValues,
    DEFAULT_TOLERANCES,
    ToleranceConfig,
    basis_derivatives,
    companion_matrix,
    eval_auto,
    eval_companion_exp,
    eval_contour,
    eval_partial_fraction,
    eval_series,
)
from .errors import (
    ConfluentRoots,
    GracefulError,
    NonConvergence,
    QuadratureNotConverged,
    SeriesNotConverged,
)
from .ivp import IVProblem, Solution, eval_solution, solve_ivp
from .polykernel import (
    MonicPolynomial,
    RootSet,
    elementary_symmetric,
    eval_poly,
    horner_tails,
    poly_from_roots,
    roots_from_poly,
)
from .vandermonde import vandermonde_det, vandermonde_inverse, vandermonde_matrix
from .verify import (
    CheckReport,
    CheckSample,
    SweepPoint,
    SweepReport,
    check_graceful,
    stability_sweep,
    wronskian,
)

__all__ = [
    "Backend",
    "BasisValues",
    "CheckReport",
    "CheckSample",
    "ConfluentRoots",
    "DEFAULT_TOLERANCES",
    "GracefulError",
    "IVProblem",
    "MonicPolynomial",
    "NonConvergence",
    "QuadratureNotConverged",
    "RootSet",
    "SeriesNotConverged",
    "Solution",
    "SweepPoint",
    "SweepReport",
    "ToleranceConfig",
    "basis_derivatives",
    "check_graceful",
    "companion_matrix",
    "elementary_symmetric",
    "eval_auto",
    "eval_companion_exp",
    "eval_contour",
    "eval_partial_fraction",
    "eval_poly",
    "eval_series",
    "eval_solution",
    "horner_tails",
    "poly_from_roots",
    "roots_from_poly",
    "solve_ivp",
    "stability_sweep",
    "vandermonde_det",
    "vandermonde_inverse",
    "vandermonde_matrix",
    "wronskian",
]
