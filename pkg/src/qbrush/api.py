"""HTTP API for the painting engine, consumed by the studio frontend.

All structured bodies are UTF-8 JSON; canvas and preview payloads are PNG.
Errors use structured bodies ``{code, message, field?}``.
"""

from __future__ import annotations

import math
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .canvas import load_png, save_png
from .errors import (ArgumentError, JobNotFoundError, JobStateError,
                     PngDecodeError, QBrushError, ValidationError)
from .script import parse_request
from .service import Engine, JobStatus

BRUSH_DESCRIPTORS = [
    {
        "kind": "aquarela",
        "label": "Aquarela",
        "stroke_input": "path",
        "params": [
            {"name": "color", "type": "hsl"},
            {"name": "gamma", "type": "number", "min": 0.0, "max": 1.0,
             "default": 0.5},
            {"name": "n_segments", "type": "integer", "min": 1, "max": 11,
             "default": 4},
        ],
    },
    {
        "kind": "heisen_continuous",
        "label": "Heisenbrush (continuous)",
        "stroke_input": "path",
        "params": [
            {"name": "color", "type": "hsl"},
            {"name": "gamma", "type": "number", "min": 0.0, "max": 1.0,
             "default": 0.5},
            {"name": "n_steps", "type": "integer", "min": 1, "max": 10,
             "default": 5},
            {"name": "n_qubits", "type": "integer", "min": 1, "max": 10,
             "optional": True},
        ],
    },
    {
        "kind": "heisen_discrete",
        "label": "Heisenbrush (discrete)",
        "stroke_input": "multi_path",
        "max_paths": 10,
        "params": [
            {"name": "color", "type": "hsl"},
            {"name": "gamma", "type": "number", "min": 0.0, "max": 1.0,
             "default": 0.5},
            {"name": "n_qubits", "type": "integer", "min": 1, "max": 10,
             "optional": True},
        ],
    },
    {
        "kind": "smudge",
        "label": "Smudge",
        "stroke_input": "multi_path",
        "max_paths": 11,
        "params": [
            {"name": "control", "type": "integer", "min": 0, "max": 1,
             "default": 0},
            {"name": "gamma", "type": "number", "min": 0.0, "max": math.pi,
             "default": 1.5},
        ],
    },
    {
        "kind": "collage",
        "label": "Collage",
        "stroke_input": "lasso",
        "params": [
            {"name": "s0", "type": "number", "min": 1e-6, "max": 1.0,
             "default": 2.0 / 3.0},
            {"name": "paste_origin", "type": "point"},
        ],
    },
]

BACKEND_DESCRIPTOR = {
    "kinds": ["exact", "sampling", "noisy", "remote_stub"],
    "default": "exact",
    "shots_default": 1024,
}


def _error_body(code: str, message: str, field: str | None = None) -> dict:
    body = {"code": code, "message": message}
    if field:
        body["field"] = field
    return body


def _job_view(job) -> dict:
    view = {
        "job_id": job.job_id,
        "snapshot_id": job.snapshot_id,
        "brush_kind": job.brush_kind,
        "status": job.status.value,
        "seed": job.seed,
        "backend": job.backend.kind,
    }
    if job.error:
        view["error"] = job.error
    return view


def default_frontend_dir() -> Path:
    return Path(__file__).resolve().parents[2] / "frontend" / "dist"


def create_app(engine: Engine, frontend_dir: Path | None = None) -> FastAPI:
    app = FastAPI(title="qbrush engine", docs_url=None, redoc_url=None)

    @app.exception_handler(ValidationError)
    async def _validation(_, exc: ValidationError):
        return JSONResponse(status_code=422, content=_error_body(
            "validation_error", str(exc), exc.field))

    @app.exception_handler(JobNotFoundError)
    async def _not_found(_, exc: JobNotFoundError):
        return JSONResponse(status_code=404,
                            content=_error_body("not_found", str(exc)))

    @app.exception_handler(JobStateError)
    async def _state(_, exc: JobStateError):
        return JSONResponse(status_code=409,
                            content=_error_body("state_error", str(exc)))

    @app.exception_handler(PngDecodeError)
    async def _png(_, exc: PngDecodeError):
        return JSONResponse(status_code=422,
                            content=_error_body("png_decode_error", str(exc)))

    @app.exception_handler(QBrushError)
    async def _generic(_, exc: QBrushError):
        return JSONResponse(status_code=422,
                            content=_error_body("invalid_argument", str(exc)))

    @app.get("/api/brushes")
    def get_brushes():
        return {"brushes": BRUSH_DESCRIPTORS, "backends": BACKEND_DESCRIPTOR}

    @app.post("/api/canvas")
    async def post_canvas(request: Request):
        data = await request.body()
        image = load_png(data)
        engine.load_canvas(image)
        return {"width": image.width, "height": image.height}

    @app.get("/api/canvas")
    def get_canvas():
        if not engine.has_canvas():
            raise JobStateError("no canvas loaded")
        return Response(content=save_png(engine.canvas),
                        media_type="image/png")

    @app.post("/api/strokes")
    def post_strokes(body: dict):
        if not engine.has_canvas():
            raise JobStateError("no canvas loaded")
        canvas = engine.canvas
        kind, strokes, params, backend, seed = parse_request(
            body, canvas.width, canvas.height)
        job_id = engine.submit(kind, strokes, params, backend=backend,
                               seed=seed)
        return {"job_id": job_id}

    @app.get("/api/jobs")
    def get_jobs():
        return {"jobs": [_job_view(j) for j in engine.list_jobs()]}

    @app.get("/api/jobs/{job_id}")
    def get_job(job_id: str):
        return _job_view(engine.get(job_id))

    @app.get("/api/jobs/{job_id}/preview")
    def get_preview(job_id: str):
        return Response(content=save_png(engine.preview(job_id)),
                        media_type="image/png")

    @app.post("/api/jobs/{job_id}/run")
    async def post_run(job_id: str, request: Request):
        body = {}
        raw = await request.body()
        if raw:
            import json
            body = json.loads(raw)
        job = engine.get(job_id)
        if job.status in (JobStatus.DONE, JobStatus.FAILED):
            engine.rerun(job_id, seed=body.get("seed"))
        else:
            engine.run(job_id)
        return _job_view(engine.get(job_id))

    @app.post("/api/jobs/{job_id}/paste")
    def post_paste(job_id: str):
        engine.paste(job_id)
        return _job_view(engine.get(job_id))

    @app.delete("/api/jobs/{job_id}")
    def delete_job(job_id: str):
        engine.delete(job_id)
        return {"deleted": job_id}

    static_dir = frontend_dir or default_frontend_dir()
    if static_dir.is_dir():
        app.mount("/", StaticFiles(directory=str(static_dir), html=True),
                  name="studio")
    else:
        @app.get("/")
        def index():
            return {"service": "qbrush engine",
                    "note": "frontend assets not built; API under /api"}

    return app
