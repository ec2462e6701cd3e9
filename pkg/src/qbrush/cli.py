"""Command line entry points: ``qbrush serve`` and ``qbrush apply``.

``apply`` replays a stroke script headlessly against an input image,
auto-pasting every job, and writes a PNG whose bytes are fully determined by
(image, script, seeds, backend). Exit codes: 0 success, 2 script schema
violation, 3 brush validation or execution error, 1 anything else.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .canvas import load_png, save_png
from .errors import QBrushError, ScriptError, ValidationError
from .script import load_script, parse_request
from .service import Engine, JobStatus

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_SCHEMA = 2
EXIT_BRUSH = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qbrush", description="quantum digital painting engine")
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the HTTP engine service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8787)
    serve.add_argument("--workers", type=int, default=None,
                       help="brush worker threads (default: cores, max 4)")

    apply_ = sub.add_parser("apply", help="apply a stroke script to an image")
    apply_.add_argument("--image", required=True, help="input PNG")
    apply_.add_argument("--script", required=True, help="stroke script JSON")
    apply_.add_argument("--out", required=True, help="output PNG")
    apply_.add_argument("--seed", type=int, default=None,
                        help="override every entry's seed")
    apply_.add_argument("--backend",
                        choices=["exact", "sampling", "noisy", "remote_stub"],
                        default=None, help="override every entry's backend kind")
    return parser


def cli_apply(image_path: str, script_path: str, out_path: str,
              seed_override: int | None = None,
              backend_override: str | None = None) -> int:
    """Run a stroke script and write the resulting PNG; returns an exit code."""
    try:
        image_bytes = Path(image_path).read_bytes()
        script_text = Path(script_path).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"qbrush: cannot read input: {exc}", file=sys.stderr)
        return EXIT_ERROR

    try:
        script = load_script(script_text)
    except ScriptError as exc:
        print(f"qbrush: script rejected: {exc}", file=sys.stderr)
        return EXIT_SCHEMA

    try:
        canvas = load_png(image_bytes)
    except QBrushError as exc:
        print(f"qbrush: cannot decode image: {exc}", file=sys.stderr)
        return EXIT_ERROR

    engine = Engine(canvas=canvas, workers=1)
    try:
        for i, body in enumerate(script["strokes"]):
            body = dict(body)
            if seed_override is not None:
                body["seed"] = seed_override
            if backend_override is not None:
                backend = dict(body.get("backend", {}))
                backend["kind"] = backend_override
                body["backend"] = backend
            live = engine.canvas
            try:
                kind, strokes, params, backend_spec, seed = parse_request(
                    body, live.width, live.height)
            except ValidationError as exc:
                print(f"qbrush: stroke {i}: invalid parameters: {exc}",
                      file=sys.stderr)
                return EXIT_BRUSH
            job_id = engine.submit(kind, strokes, params, backend=backend_spec,
                                   seed=seed)
            engine.run(job_id)
            job = engine.wait(job_id)
            if job.status is JobStatus.FAILED:
                print(f"qbrush: stroke {i} ({kind}) failed: {job.error}",
                      file=sys.stderr)
                return EXIT_BRUSH
            engine.paste(job_id)
        out = save_png(engine.canvas)
    except QBrushError as exc:
        print(f"qbrush: {exc}", file=sys.stderr)
        return EXIT_BRUSH
    finally:
        engine.shutdown()

    try:
        Path(out_path).write_bytes(out)
    except OSError as exc:
        print(f"qbrush: cannot write output: {exc}", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_OK


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "serve":
        import uvicorn

        from .api import create_app
        from .service import DEFAULT_WORKERS

        engine = Engine(workers=args.workers or DEFAULT_WORKERS)
        app = create_app(engine)
        uvicorn.run(app, host=args.host, port=args.port, log_level="info")
        return EXIT_OK
    return cli_apply(args.image, args.script, args.out,
                     seed_override=args.seed, backend_override=args.backend)


if __name__ == "__main__":
    sys.exit(main())
