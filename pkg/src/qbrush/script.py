"""Wire-format parsing: stroke requests and the StrokeScript batch format.

The same request shape serves ``POST /api/strokes`` and each entry of a
stroke script (``{"version": 1, "strokes": [...]}``). Unknown fields are
rejected. Multi-stroke brushes (smudge, discrete heisenbrush) tag points with
an optional ``path`` index; collage sends its lasso polygon as the points and
a ``paste_origin`` in params.
"""

from __future__ import annotations

import json

import jsonschema

from .backends import BackendSpec
from .brushes import (AquarelaParams, CollageParams, HeisenParams, SmudgeParams)
from .canvas import Stroke, polygon_mask
from .color import HslColor
from .errors import ArgumentError, ScriptError, ValidationError
from .sim import NoiseSpec

_COLOR_SCHEMA = {
    "type": "object",
    "properties": {
        "h": {"type": "number"},
        "s": {"type": "number", "minimum": 0, "maximum": 1},
        "l": {"type": "number", "minimum": 0, "maximum": 1},
    },
    "required": ["h", "s", "l"],
    "additionalProperties": False,
}

_POINT_SCHEMA = {
    "type": "object",
    "properties": {
        "x": {"type": "number"},
        "y": {"type": "number"},
        "path": {"type": "integer", "minimum": 0},
    },
    "required": ["x", "y"],
    "additionalProperties": False,
}

_NOISE_SCHEMA = {
    "type": "object",
    "properties": {
        "p_depolarize_1q": {"type": "number", "minimum": 0, "maximum": 1},
        "p_depolarize_2q": {"type": "number", "minimum": 0, "maximum": 1},
        "seed": {"type": "integer", "minimum": 0},
    },
    "additionalProperties": False,
}

_BACKEND_SCHEMA = {
    "type": "object",
    "properties": {
        "kind": {"enum": ["exact", "sampling", "noisy", "remote_stub"]},
        "shots": {"type": "integer", "minimum": 1},
        "noise": _NOISE_SCHEMA,
    },
    "required": ["kind"],
    "additionalProperties": False,
}

STROKE_REQUEST_SCHEMA = {
    "type": "object",
    "properties": {
        "brush_kind": {"enum": ["aquarela", "heisen_continuous",
                                "heisen_discrete", "smudge", "collage"]},
        "params": {"type": "object"},
        "points": {"type": "array", "items": _POINT_SCHEMA, "minItems": 1},
        "radius": {"type": "number", "exclusiveMinimum": 0},
        "backend": _BACKEND_SCHEMA,
        "seed": {"type": "integer", "minimum": 0},
    },
    "required": ["brush_kind", "params", "points", "radius"],
    "additionalProperties": False,
}

STROKE_SCRIPT_SCHEMA = {
    "type": "object",
    "properties": {
        "version": {"const": 1},
        "strokes": {"type": "array", "items": STROKE_REQUEST_SCHEMA},
    },
    "required": ["version", "strokes"],
    "additionalProperties": False,
}

_PARAM_SCHEMAS = {
    "aquarela": {
        "type": "object",
        "properties": {
            "color": _COLOR_SCHEMA,
            "gamma": {"type": "number"},
            "n_segments": {"type": "integer"},
        },
        "required": ["color", "gamma", "n_segments"],
        "additionalProperties": False,
    },
    "heisen_continuous": {
        "type": "object",
        "properties": {
            "color": _COLOR_SCHEMA,
            "gamma": {"type": "number"},
            "n_steps": {"type": "integer"},
            "n_qubits": {"type": "integer"},
        },
        "required": ["color", "gamma", "n_steps"],
        "additionalProperties": False,
    },
    "heisen_discrete": {
        "type": "object",
        "properties": {
            "color": _COLOR_SCHEMA,
            "gamma": {"type": "number"},
            "n_qubits": {"type": "integer"},
        },
        "required": ["color", "gamma"],
        "additionalProperties": False,
    },
    "smudge": {
        "type": "object",
        "properties": {
            "control": {"type": "integer"},
            "gamma": {"type": "number"},
        },
        "required": ["control", "gamma"],
        "additionalProperties": False,
    },
    "collage": {
        "type": "object",
        "properties": {
            "s0": {"type": "number"},
            "paste_origin": {
                "type": "object",
                "properties": {"x": {"type": "integer"},
                               "y": {"type": "integer"}},
                "required": ["x", "y"],
                "additionalProperties": False,
            },
        },
        "required": ["s0", "paste_origin"],
        "additionalProperties": False,
    },
}


def _json_path(error: jsonschema.ValidationError) -> str:
    parts = ["$"] + [str(p) for p in error.absolute_path]
    return ".".join(parts)


def validate_request(body: dict) -> None:
    """Structural validation of one stroke request (schema level)."""
    validator = jsonschema.Draft202012Validator(STROKE_REQUEST_SCHEMA)
    errors = sorted(validator.iter_errors(body), key=lambda e: list(e.absolute_path))
    if errors:
        raise ValidationError([(_json_path(e), e.message) for e in errors])
    kind = body["brush_kind"]
    pvalidator = jsonschema.Draft202012Validator(_PARAM_SCHEMAS[kind])
    errors = sorted(pvalidator.iter_errors(body["params"]),
                    key=lambda e: list(e.absolute_path))
    if errors:
        raise ValidationError([
            ("params." + _json_path(e)[2:] if len(e.absolute_path) else "params",
             e.message) for e in errors
        ])


def _color_from(raw: dict, prefix: str) -> HslColor:
    try:
        return HslColor(h=float(raw["h"]), s=float(raw["s"]), l=float(raw["l"]))
    except ArgumentError as exc:
        raise ValidationError([(prefix, str(exc))]) from exc


def _group_paths(points: list[dict]) -> list[list[tuple[float, float]]]:
    groups: dict[int, list[tuple[float, float]]] = {}
    for p in points:
        groups.setdefault(int(p.get("path", 0)), []).append(
            (float(p["x"]), float(p["y"]))
        )
    return [groups[k] for k in sorted(groups)]


def parse_request(body: dict, canvas_width: int, canvas_height: int):
    """Turn a validated request body into engine submission arguments.

    Returns ``(brush_kind, strokes, params, backend, seed)``.
    """
    validate_request(body)
    kind = body["brush_kind"]
    raw = body["params"]
    radius = float(body["radius"])
    if radius < 0.5:
        raise ValidationError([("radius", f"must be >= 0.5, got {radius}")])
    paths = _group_paths(body["points"])

    backend = _backend_from(body.get("backend"))
    seed = body.get("seed")

    if kind == "aquarela":
        params = AquarelaParams(
            brush_color=_color_from(raw["color"], "params.color"),
            gamma=float(raw["gamma"]),
            n_segments=int(raw["n_segments"]),
        )
        if len(paths) != 1:
            raise ValidationError([("points", "aquarela takes a single path")])
    elif kind in ("heisen_continuous", "heisen_discrete"):
        mode = "continuous" if kind == "heisen_continuous" else "discrete"
        n_steps = (int(raw["n_steps"]) if mode == "continuous"
                   else max(1, len(paths)))
        params = HeisenParams(
            mode=mode,
            user_color=_color_from(raw["color"], "params.color"),
            gamma=float(raw["gamma"]),
            n_steps=n_steps,
            n_qubits=int(raw["n_qubits"]) if "n_qubits" in raw else None,
        )
        if mode == "continuous" and len(paths) != 1:
            raise ValidationError([
                ("points", "continuous heisenbrush takes a single path")
            ])
    elif kind == "smudge":
        params = SmudgeParams(control=int(raw["control"]),
                              gamma=float(raw["gamma"]),
                              n_strokes=len(paths))
    elif kind == "collage":
        if len(body["points"]) < 3:
            raise ValidationError([
                ("points", "collage lasso needs at least 3 points")
            ])
        region = polygon_mask(
            [(p["x"], p["y"]) for p in body["points"]],
            canvas_width, canvas_height,
        )
        params = CollageParams(
            s0=float(raw["s0"]),
            copy_region=region,
            paste_origin=(int(raw["paste_origin"]["x"]),
                          int(raw["paste_origin"]["y"])),
        )
    else:  # unreachable after schema validation
        raise ValidationError([("brush_kind", f"unknown brush {kind!r}")])

    params.validate()
    if kind == "collage":
        strokes = [Stroke(points=[(p["x"], p["y"]) for p in body["points"]],
                          radius=radius, brush_kind=kind, params=params)]
    else:
        strokes = [Stroke(points=path, radius=radius, brush_kind=kind,
                          params=params) for path in paths]
    return kind, strokes, params, backend, seed


def _backend_from(raw: dict | None) -> BackendSpec:
    if raw is None:
        return BackendSpec()
    noise = None
    if "noise" in raw:
        noise = NoiseSpec(
            p_depolarize_1q=float(raw["noise"].get("p_depolarize_1q", 0.0)),
            p_depolarize_2q=float(raw["noise"].get("p_depolarize_2q", 0.0)),
            seed=int(raw["noise"].get("seed", 0)),
        )
    spec = BackendSpec(kind=raw["kind"], shots=int(raw.get("shots", 1024)),
                       noise=noise)
    spec.validate()
    return spec


def load_script(text: str) -> dict:
    """Parse and schema-validate a stroke script from JSON text."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScriptError(f"invalid JSON: {exc.msg}",
                          location=f"line {exc.lineno}, column {exc.colno}") from exc
    validator = jsonschema.Draft202012Validator(STROKE_SCRIPT_SCHEMA)
    errors = sorted(validator.iter_errors(data),
                    key=lambda e: list(e.absolute_path))
    if errors:
        first = errors[0]
        raise ScriptError(first.message, location=_json_path(first))
    return data
