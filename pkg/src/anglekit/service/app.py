"""FastAPI application exposing the verification core."""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .handlers import (
    handle_angles,
    handle_check_psd,
    handle_complete,
    handle_rk,
    handle_verify,
)
from .models import (
    AnglesRequest,
    AnglesResponse,
    CheckPsdRequest,
    CheckPsdResponse,
    CompleteRequest,
    CompleteResponse,
    RkRequest,
    RkResponse,
    VerifyRequest,
)


def create_app() -> FastAPI:
    app = FastAPI(
        title="anglekit",
        description="Angle metrics, correlation-matrix entry inequalities, and their pass/fail certificates.",
        version="0.1.0",
    )

    @app.exception_handler(ValueError)
    async def _value_error(request: Request, exc: ValueError) -> JSONResponse:
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": app.version}

    @app.post("/check-psd", response_model=CheckPsdResponse)
    def check_psd(request: CheckPsdRequest) -> CheckPsdResponse:
        return handle_check_psd(request)

    @app.post("/angles", response_model=AnglesResponse)
    def angles(request: AnglesRequest) -> AnglesResponse:
        return handle_angles(request)

    @app.post("/complete", response_model=CompleteResponse)
    def complete(request: CompleteRequest) -> CompleteResponse:
        return handle_complete(request)

    @app.post("/rk", response_model=RkResponse)
    def rk(request: RkRequest) -> RkResponse:
        return handle_rk(request)

    @app.post("/verify")
    def verify(request: VerifyRequest) -> dict:
        return handle_verify(request).to_dict()

    return app


app = create_app()
