"""Request/response models for the HTTP surface.

Complex numbers travel as two-element [re, im] arrays; that sidesteps the
locale and formatting ambiguity of "a+bi" strings.  A problem is specified
by exactly one of ``roots`` or monic ascending ``coeffs``.
"""

from __future__ import annotations

from typing import Annotated, Literal

from pydantic import BaseModel, Field, FiniteFloat, model_validator

from ..basis import ToleranceConfig
from ..polykernel import MonicPolynomial, RootSet, poly_from_roots, roots_from_poly

Pair = Annotated[list[FiniteFloat], Field(min_length=2, max_length=2)]
BackendName = Literal["auto", "pf", "exp", "contour", "series"]


def to_complex(pair: list[float]) -> complex:
    return complex(pair[0], pair[1])


def to_pair(z: complex) -> list[float]:
    return [z.real, z.imag]


class Tolerances(BaseModel):
    sep_tol: float = Field(default=1e-6, gt=0)
    quad_tol: float = Field(default=1e-11, gt=0)
    series_tol: float = Field(default=1e-14, gt=0)
    max_quad_nodes: int = Field(default=4096, ge=16)

    @model_validator(mode="after")
    def _power_of_two(self):
        n = self.max_quad_nodes
        if n & (n - 1):
            raise ValueError("max_quad_nodes must be a power of two")
        return self

    def to_config(self) -> ToleranceConfig:
        return ToleranceConfig(self.sep_tol, self.quad_tol, self.series_tol,
                               self.max_quad_nodes)


class ProblemSpec(BaseModel):
    """Wire form of a problem: roots xor monic coefficients, plus tolerances."""

    roots: list[Pair] | None = None
    coeffs: list[Pair] | None = None
    tolerances: Tolerances = Tolerances()

    @model_validator(mode="after")
    def _exactly_one(self):
        if (self.roots is None) == (self.coeffs is None):
            raise ValueError("specify exactly one of 'roots' or 'coeffs'")
        if self.roots is not None and len(self.roots) < 1:
            raise ValueError("'roots' needs at least one entry")
        if self.coeffs is not None:
            if len(self.coeffs) < 2:
                raise ValueError("'coeffs' needs degree >= 1 (at least two entries)")
            if self.coeffs[-1] != [1.0, 0.0]:
                raise ValueError("'coeffs' must be monic: last entry exactly [1, 0]")
        return self

    def root_set(self) -> RootSet:
        if self.roots is not None:
            return RootSet(tuple(to_complex(r) for r in self.roots))
        return roots_from_poly(self.poly())

    def poly(self) -> MonicPolynomial:
        if self.coeffs is not None:
            return MonicPolynomial(tuple(to_complex(c) for c in self.coeffs))
        return poly_from_roots(self.root_set())

    def config(self) -> ToleranceConfig:
        return self.tolerances.to_config()


class EvalRequest(BaseModel):
    problem: ProblemSpec
    x: Pair
    backend: BackendName = "auto"


class EvalResponse(BaseModel):
    x: Pair
    backend_used: str
    values: list[Pair]
    diagnostics: dict[str, float] = {}


class TableRequest(BaseModel):
    problem: ProblemSpec
    x_min: FiniteFloat
    x_max: FiniteFloat
    n_points: int = Field(ge=2)
    backend: BackendName = "auto"

    @model_validator(mode="after")
    def _ordered(self):
        if not self.x_min < self.x_max:
            raise ValueError("x_min must be strictly less than x_max")
        return self


class VerifyRequest(BaseModel):
    problem: ProblemSpec
    samples: int = Field(default=20, ge=1)
    seed: int = 0


class VerifySample(BaseModel):
    x: Pair
    agreement_error: float | None
    wronskian_error: float | None
    failures: list[str]
    passed: bool


class VerifyResponse(BaseModel):
    passed: bool
    coeffs: list[Pair]
    agree_tol: float
    wronskian_tol: float
    entirety_note: str
    samples: list[VerifySample]


class SweepRequest(BaseModel):
    problem: ProblemSpec
    eps: list[float] = Field(min_length=1)
    x: Pair = [1.0, 0.0]


class SweepPointModel(BaseModel):
    separation: float
    partial_fraction_error: float | None
    companion_error: float | None
    contour_error: float | None
    reference_backend: str
    failures: dict[str, str]


class SweepResponse(BaseModel):
    roots_template: list[Pair]
    x: Pair
    reference_backend: str
    points: list[SweepPointModel]
    columns: dict[str, list[float | None]]


class IvpRequest(BaseModel):
    problem: ProblemSpec
    x0: Pair = [0.0, 0.0]
    derivs: list[Pair] = Field(min_length=1)
    eval_points: list[Pair] = []


class IvpResponse(BaseModel):
    coefficients: list[Pair]
    values: list[Pair]
