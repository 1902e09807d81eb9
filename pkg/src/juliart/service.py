"""HTTP render service.

Stateless JSON-in, PNG-out endpoint plus preset listing and a health
probe.  Every request renders from scratch with the service resource
caps; a bounded semaphore keeps the number of simultaneous render jobs
at the worker-thread count so a burst of requests degrades to 503
instead of thrashing.

Scene problems (bad grammar, unresolved names, runtime failures, cap
overruns) come back as 422 with the error kind and source position so
an editor can anchor the diagnostic; malformed requests are 400.
"""

from __future__ import annotations

import threading

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, Response
from pydantic import BaseModel

from . import __version__
from .errors import SceneError
from .gallery import preset, preset_names
from .render import SERVICE_LIMITS, render_source, resolve_workers

MAX_SIZE = 2000


class RenderRequest(BaseModel):
    source: str | None = None
    preset: str | None = None
    size: int = 1000
    border: int = 0
    variation: str | None = None


def _bad_request(message: str) -> JSONResponse:
    return JSONResponse({"error": {"kind": "request", "message": message}}, status_code=400)


def create_app(*, workers: int | None = None, max_concurrency: int | None = None) -> FastAPI:
    app = FastAPI(title="juliart render service", version=__version__)
    # the browser explorer is served as static files from whatever origin;
    # without these headers it could neither call /render nor read the
    # primitive/step counters off the response
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
        expose_headers=["X-Primitives", "X-Steps"],
    )
    worker_count = resolve_workers(workers)
    slots = threading.BoundedSemaphore(max_concurrency or worker_count)

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.get("/presets")
    def presets() -> list[dict]:
        out = []
        for name in preset_names():
            p = preset(name)
            out.append(
                {
                    "name": name,
                    "title": p.title,
                    "source": p.source,
                    "seed_re": p.seed.real,
                    "seed_im": p.seed.imag,
                    "max_steps": p.max_steps,
                    "resolution": p.resolution,
                    "variation": p.variation,
                }
            )
        return out

    @app.post("/render")
    def render(req: RenderRequest) -> Response:
        if (req.source is None) == (req.preset is None):
            return _bad_request("provide exactly one of 'source' or 'preset'")
        if not 1 <= req.size <= MAX_SIZE:
            return _bad_request(f"size must be in [1, {MAX_SIZE}]")
        if req.border < 0 or req.size - 2 * req.border < 1:
            return _bad_request("border leaves no canvas")

        variation = req.variation
        if req.preset is not None:
            try:
                p = preset(req.preset)
            except ValueError as err:
                return _bad_request(str(err))
            source = p.source
            if variation is None:
                variation = p.variation
        else:
            source = req.source

        if not slots.acquire(blocking=False):
            return JSONResponse(
                {"error": {"kind": "busy", "message": "render capacity exhausted"}},
                status_code=503,
            )
        try:
            result = render_source(
                source,
                size=req.size,
                border=req.border,
                variation=variation or "",
                workers=worker_count,
                limits=SERVICE_LIMITS,
            )
        except SceneError as err:
            return JSONResponse({"error": err.diagnostic()}, status_code=422)
        finally:
            slots.release()
        return Response(
            content=result.png,
            media_type="image/png",
            headers={
                "X-Primitives": str(result.primitive_count),
                "X-Steps": str(result.steps_executed),
            },
        )

    return app
