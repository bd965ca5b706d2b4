"""FastAPI application exposing the compute and verification commands.

Schema violations return 422 (FastAPI's validation handling); semantically
invalid inputs (unknown names, dimension clashes, degenerate bases) return
400 with a diagnostic. Verification failures are a report outcome, not an
HTTP error.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..errors import ProjFactorError
from .handlers import (
    handle_angle,
    handle_appendix,
    handle_factor,
    handle_principal,
    handle_quantum,
    handle_verify,
)
from .models import (
    AngleRequest,
    AppendixRequest,
    FactorRequest,
    PrincipalRequest,
    QuantumRequest,
    ReportDocument,
    VerifyRequest,
)


def create_app() -> FastAPI:
    app = FastAPI(
        title="projfactor",
        version=__version__,
        description="Projection factors, subspace angles and Pythagorean identity checks",
    )

    def run(handler, request):
        try:
            return handler(request)
        except ProjFactorError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/factor", response_model=ReportDocument)
    def factor(request: FactorRequest) -> ReportDocument:
        return run(handle_factor, request)

    @app.post("/angle", response_model=ReportDocument)
    def angle(request: AngleRequest) -> ReportDocument:
        return run(handle_angle, request)

    @app.post("/principal", response_model=ReportDocument)
    def principal(request: PrincipalRequest) -> ReportDocument:
        return run(handle_principal, request)

    @app.post("/verify", response_model=ReportDocument)
    def verify(request: VerifyRequest) -> ReportDocument:
        return run(handle_verify, request)

    @app.post("/appendix", response_model=ReportDocument)
    def appendix(request: AppendixRequest) -> ReportDocument:
        return run(handle_appendix, request)

    @app.post("/quantum", response_model=ReportDocument)
    def quantum(request: QuantumRequest) -> ReportDocument:
        return run(handle_quantum, request)

    return app


app = create_app()
