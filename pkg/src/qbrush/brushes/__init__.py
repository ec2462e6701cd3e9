"""The four quantum brushes and their parameter records."""

from __future__ import annotations

from ..canvas import Snapshot, Stroke
from ..errors import ArgumentError
from .aquarela import aquarela_circuit, run_aquarela
from .collage import (remap_singular_values, run_collage, solve_s1, svd_encode,
                      uaqc_circuit)
from .heisen import (chain_pairs, heisen_color, prep_circuit, run_heisenbrush,
                     trotter_step_circuit)
from .params import (AquarelaParams, BrushOutcome, CollageParams, HeisenParams,
                     RegionRewrite, SegmentColorUpdate, SingularTriple,
                     SmudgeParams, cloning_constraint)
from .smudge import run_smudge, smudge_circuit

BRUSH_KINDS = ("aquarela", "heisen_continuous", "heisen_discrete", "smudge",
               "collage")


def run_brush(kind: str, snapshot: Snapshot, strokes: list[Stroke], params,
              backend) -> BrushOutcome:
    """Dispatch one brush run; every brush is a pure function of its inputs."""
    if kind == "aquarela":
        if len(strokes) != 1:
            raise ArgumentError("aquarela takes exactly one stroke")
        return run_aquarela(snapshot, strokes[0], params, backend)
    if kind in ("heisen_continuous", "heisen_discrete"):
        return run_heisenbrush(snapshot, strokes, params, backend)
    if kind == "smudge":
        return run_smudge(snapshot, strokes, params, backend)
    if kind == "collage":
        return run_collage(snapshot, params, backend)
    raise ArgumentError(f"unknown brush kind {kind!r}")


__all__ = [
    "AquarelaParams", "BrushOutcome", "CollageParams", "HeisenParams",
    "RegionRewrite", "SegmentColorUpdate", "SingularTriple", "SmudgeParams",
    "BRUSH_KINDS", "aquarela_circuit", "chain_pairs", "cloning_constraint",
    "heisen_color", "prep_circuit", "remap_singular_values", "run_aquarela",
    "run_brush", "run_collage", "run_heisenbrush", "run_smudge", "solve_s1",
    "smudge_circuit", "svd_encode", "trotter_step_circuit", "uaqc_circuit",
]
