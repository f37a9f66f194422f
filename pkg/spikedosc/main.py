from __future__ import annotations

import logging

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import settings
from .errors import SpikedOscError
from .routes import router

logger = logging.getLogger(__name__)


def create_app() -> FastAPI:
    settings.configure_logging()
    app = FastAPI(title="spikedosc")

    # Routes
    app.include_router(router)

    # HEAD / answers 200 so uptime monitors see the service as live
    @app.head("/")
    async def _head_root():
        return {}

    # Domain errors -> JSON body with the error class and message
    @app.exception_handler(SpikedOscError)
    def spiked_osc_error_handler(request: Request, exc: SpikedOscError):
        logger.info("%s %s -> %s: %s", request.method, request.url.path, type(exc).__name__, exc.detail)
        return JSONResponse(
            status_code=exc.http_status,
            content={"error": type(exc).__name__, "detail": exc.detail},
        )

    return app


app = create_app()
