"""FastAPI application wrapping the verification suites and matrix dumps.

Complex scalars cross the wire as two-element [re, im] arrays.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from .. import __version__
from ..correspondence import AdsPoint
from ..freefermion import xx_point
from ..ssw import hubbard_point
from ..superalgebra import d_matrices, derive_smatrix_from_symmetry
from ..suites import (
    SUITE_NAMES,
    SuiteNumericalError,
    SuiteReport,
    run_suite,
)
from ..tensor import FockSpace, dump_matrix, graded_permutation
from ..tza import structure_tensor

ComplexPair = tuple[float, float]


def _c(pair: ComplexPair) -> complex:
    return complex(pair[0], pair[1])


class SuiteRequest(BaseModel):
    name: str
    seed: int = 1
    trials: int | None = Field(default=None, ge=1)
    tol: float | None = Field(default=None, gt=0)


class CheckModel(BaseModel):
    name: str
    max_residual: float
    passed: bool = Field(serialization_alias="pass")


class SuiteResponse(BaseModel):
    suite: str
    seed: int
    trials: int
    tolerance: float
    checks: list[CheckModel]
    elapsed_ms: float
    passed: bool = Field(serialization_alias="pass")

    @classmethod
    def from_report(cls, report: SuiteReport) -> "SuiteResponse":
        return cls(
            suite=report.suite,
            seed=report.seed,
            trials=report.trials,
            tolerance=report.tolerance,
            checks=[
                CheckModel(
                    name=c.name, max_residual=c.max_residual, passed=c.passed
                )
                for c in report.checks
            ],
            elapsed_ms=report.elapsed_ms,
            passed=report.passed,
        )


class DumpRequest(BaseModel):
    """Matrix dump request.

    object:
      permutation  graded two-site permutation (4x4); no parameters
      tza          structure tensor at three XX points (8x8); u = [u1,u2,u3]
      rcheck       glued two-layer R-matrix at two Hubbard points (16x16);
                   u = [u1,u2] and U required
    """

    object: str
    u: list[float] = Field(default_factory=list)
    U: float | None = None


class DeriveRequest(BaseModel):
    """Two mass-shell points with a common coupling g."""

    xp: ComplexPair
    xm: ComplexPair
    eta: ComplexPair
    xp2: ComplexPair
    xm2: ComplexPair
    eta2: ComplexPair
    g: ComplexPair


class MatrixResponse(BaseModel):
    matrix: str


def create_app() -> FastAPI:
    app = FastAPI(title="rmatrixkit", version=__version__)

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/suite", response_model=SuiteResponse)
    def suite(req: SuiteRequest) -> SuiteResponse:
        if req.name not in SUITE_NAMES:
            raise HTTPException(
                status_code=400,
                detail=f"unknown suite {req.name!r}; "
                f"choose from {', '.join(SUITE_NAMES)}",
            )
        try:
            report = run_suite(
                req.name, seed=req.seed, trials=req.trials, tol=req.tol
            )
        except SuiteNumericalError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        return SuiteResponse.from_report(report)

    @app.post("/dump", response_model=MatrixResponse)
    def dump(req: DumpRequest) -> MatrixResponse:
        if req.object == "permutation":
            matrix = graded_permutation(FockSpace(2), 1, 2)
        elif req.object == "tza":
            if len(req.u) != 3:
                raise HTTPException(
                    status_code=400, detail="tza needs u = [u1, u2, u3]"
                )
            # 8x8 coefficient table: rows are output sign triples, columns
            # input sign triples, both in lexicographic order (+ before -).
            matrix = structure_tensor(
                *(xx_point(u) for u in req.u)
            ).reshape(8, 8)
        elif req.object == "rcheck":
            if len(req.u) != 2 or req.U is None:
                raise HTTPException(
                    status_code=400,
                    detail="rcheck needs u = [u1, u2] and U",
                )
            from ..superalgebra import r_check

            g1 = hubbard_point(req.u[0], req.U)
            g2 = hubbard_point(req.u[1], req.U)
            matrix = r_check(FockSpace(2, n_layers=2), 1, g1, g2)
        else:
            raise HTTPException(
                status_code=400,
                detail="object must be permutation, tza, or rcheck",
            )
        return MatrixResponse(matrix=dump_matrix(matrix))

    @app.post("/derive", response_model=MatrixResponse)
    def derive(req: DeriveRequest) -> MatrixResponse:
        from ..correspondence import ff_from_ads

        q1 = AdsPoint(_c(req.xp), _c(req.xm), _c(req.eta), _c(req.g))
        q2 = AdsPoint(_c(req.xp2), _c(req.xm2), _c(req.eta2), _c(req.g))
        try:
            g1, couplings, t1 = ff_from_ads(q1)
            g2, _, t2 = ff_from_ads(q2)
            d1, d2, d1p, d2p = d_matrices(g1, g2, couplings, t1, t2)
            derived = derive_smatrix_from_symmetry(d1, d2, d1p, d2p)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        return MatrixResponse(matrix=dump_matrix(derived))

    return app
