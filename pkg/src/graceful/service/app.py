"""HTTP facade over the evaluation, verification, and IVP kernels.

Every endpoint is a pure function of its request body, so the service can
serve any number of clients concurrently.  Error contract: malformed or
semantically invalid input yields 422 with a structured envelope; a
well-formed request whose computation fails numerically yields 500 with the
failure type in the envelope.  Single results and reports are JSON; grids
are text/csv.
"""

from __future__ import annotations

import logging

import numpy as np
from fastapi import FastAPI, Request
from fastapi.encoders import jsonable_encoder
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, PlainTextResponse

from .. import __version__
from ..basis import (
    eval_auto,
    eval_companion_exp,
    eval_contour,
    eval_partial_fraction,
    eval_series,
)
from ..errors import GracefulError
from ..ivp import IVProblem, eval_solution, solve_ivp
from ..verify import check_graceful, stability_sweep
from . import schemas
from .schemas import to_complex, to_pair

log = logging.getLogger("graceful.service")

app = FastAPI(
    title="graceful-basis",
    version=__version__,
    description="Evaluate, verify, and solve with a solution basis of "
                "constant-coefficient linear ODEs that survives root collisions.",
)


def _error_body(kind: str, message: str, detail=None) -> dict:
    return {"error": {"type": kind, "message": message, "detail": detail}}


@app.exception_handler(GracefulError)
def _numerical_failure(_: Request, exc: GracefulError) -> JSONResponse:
    log.info("numerical failure: %s: %s", type(exc).__name__, exc)
    detail = {k: jsonable_encoder(v) for k, v in vars(exc).items()}
    return JSONResponse(status_code=500,
                        content=_error_body(type(exc).__name__, str(exc), detail))


@app.exception_handler(ValueError)
def _invalid_input(_: Request, exc: ValueError) -> JSONResponse:
    return JSONResponse(status_code=422,
                        content=_error_body("InvalidInput", str(exc)))


@app.exception_handler(RequestValidationError)
def _schema_error(_: Request, exc: RequestValidationError) -> JSONResponse:
    return JSONResponse(status_code=422,
                        content=_error_body("ValidationError", "request failed schema validation",
                                            jsonable_encoder(exc.errors())))


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


def _make_evaluator(problem: schemas.ProblemSpec, backend: str):
    """Resolve roots/coefficients once; return a point evaluator."""
    cfg = problem.config()
    if backend == "auto":
        roots = problem.root_set()
        exact_poly = problem.poly() if problem.coeffs is not None else None
        return lambda x: eval_auto(roots, x, cfg, poly=exact_poly)
    if backend == "pf":
        roots = problem.root_set()
        return lambda x: eval_partial_fraction(roots, x)
    if backend == "exp":
        poly = problem.poly()
        return lambda x: eval_companion_exp(poly, x)
    if backend == "contour":
        roots = problem.root_set()
        return lambda x: eval_contour(roots, x, cfg)
    poly = problem.poly()
    return lambda x: eval_series(poly, x, cfg)


@app.post("/eval", response_model=schemas.EvalResponse)
def eval_endpoint(req: schemas.EvalRequest) -> schemas.EvalResponse:
    result = _make_evaluator(req.problem, req.backend)(to_complex(req.x))
    log.info("eval backend=%s m=%d", result.backend.value, len(result.values))
    return schemas.EvalResponse(
        x=req.x,
        backend_used=result.backend.value,
        values=[to_pair(v) for v in result.values],
        diagnostics=dict(result.diagnostics),
    )


@app.post("/table", response_class=PlainTextResponse)
def table_endpoint(req: schemas.TableRequest) -> PlainTextResponse:
    """CSV sample table over a real grid, 17 significant digits per value.

    Columns: x, then re/im per basis element, then the backend that produced
    the row.  Rows are emitted in grid order; evaluation is a pure map over
    the grid, so the output is deterministic however it is scheduled.
    """
    evaluate = _make_evaluator(req.problem, req.backend)
    grid = np.linspace(req.x_min, req.x_max, req.n_points)
    results = [evaluate(complex(float(x), 0.0)) for x in grid]
    m = len(results[0].values)
    header = "x," + ",".join(f"g{i}_re,g{i}_im" for i in range(1, m + 1)) + ",backend"
    lines = [header]
    for x, result in zip(grid, results):
        cells = [f"{float(x):.17g}"]
        for v in result.values:
            cells.append(f"{v.real:.17g}")
            cells.append(f"{v.imag:.17g}")
        cells.append(result.backend.value)
        lines.append(",".join(cells))
    return PlainTextResponse("\n".join(lines) + "\n", media_type="text/csv")


@app.post("/verify", response_model=schemas.VerifyResponse)
def verify_endpoint(req: schemas.VerifyRequest) -> schemas.VerifyResponse:
    """Health checks at seed-deterministic sample points in the disc |x| <= 2."""
    rng = np.random.default_rng(req.seed)
    radii = 2.0 * np.sqrt(rng.random(req.samples))
    angles = 2.0 * np.pi * rng.random(req.samples)
    xs = [complex(r * np.cos(a), r * np.sin(a)) for r, a in zip(radii, angles)]
    report = check_graceful(req.problem.poly(), xs, req.problem.config())
    log.info("verify m=%d samples=%d passed=%s", len(report.coeffs) - 1,
             len(report.samples), report.passed)
    return schemas.VerifyResponse(
        passed=report.passed,
        coeffs=[to_pair(c) for c in report.coeffs],
        agree_tol=report.agree_tol,
        wronskian_tol=report.wronskian_tol,
        entirety_note=report.entirety_note,
        samples=[schemas.VerifySample(
            x=to_pair(s.x),
            agreement_error=s.agreement_error,
            wronskian_error=s.wronskian_error,
            failures=list(s.failures),
            passed=s.passed,
        ) for s in report.samples],
    )


@app.post("/sweep", response_model=schemas.SweepResponse)
def sweep_endpoint(req: schemas.SweepRequest) -> schemas.SweepResponse:
    report = stability_sweep(req.problem.root_set(), req.eps,
                             to_complex(req.x), req.problem.config())
    return schemas.SweepResponse(
        roots_template=[to_pair(r) for r in report.roots_template],
        x=to_pair(report.x),
        reference_backend=report.points[0].reference_backend,
        points=[schemas.SweepPointModel(**pt.to_dict()) for pt in report.points],
        columns=report.columns(),
    )


@app.post("/ivp", response_model=schemas.IvpResponse)
def ivp_endpoint(req: schemas.IvpRequest) -> schemas.IvpResponse:
    problem = IVProblem(req.problem.poly(), to_complex(req.x0),
                        tuple(to_complex(d) for d in req.derivs))
    solution = solve_ivp(problem)
    cfg = req.problem.config()
    values = [eval_solution(solution, to_complex(pt), cfg) for pt in req.eval_points]
    return schemas.IvpResponse(
        coefficients=[to_pair(c) for c in solution.coefficients],
        values=[to_pair(v) for v in values],
    )
