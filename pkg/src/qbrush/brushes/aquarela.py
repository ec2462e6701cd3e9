"""Aquarela: a watercolour brush that steers stroke segments toward the brush
color through an ancilla qubit, with a canvas back-action on the ancilla.

Each stroke segment becomes one qubit carrying the segment's mean (hue,
luminosity). The ancilla starts in |1> and applies conditional rotations that
pull every segment toward the brush color; after each segment the canvas
rotates the ancilla toward |0> (strength pi/3 at full effect), weakening the
brush along the stroke. All effect angles scale with gamma so the circuit is
exactly trivial at gamma = 0.
"""

from __future__ import annotations

import math

from ..canvas import Snapshot, Stroke, region_mean_hsl, segment_stroke
from ..color import BlochAngles, decode_bloch, encode_hl
from ..errors import ArgumentError
from ..sim import Circuit, Gate
from .params import MAX_SEGMENTS, AquarelaParams, BrushOutcome, SegmentColorUpdate

BACKACTION_ANGLE = math.pi / 3


def aquarela_circuit(segment_angles: list[BlochAngles],
                     brush_angles: BlochAngles, gamma: float) -> Circuit:
    """Build the steering circuit on N segment qubits plus ancilla N."""
    n = len(segment_angles)
    if not 1 <= n <= MAX_SEGMENTS:
        raise ArgumentError(f"segment count must be in 1..{MAX_SEGMENTS}, got {n}")
    ancilla = n
    circ = Circuit(n + 1)
    for i, ang in enumerate(segment_angles):
        circ.append(Gate.ry(i, ang.theta))
        circ.append(Gate.rz(i, ang.phi))
    circ.append(Gate.x(ancilla))
    for i, ang in enumerate(segment_angles):
        circ.append(Gate.rz(i, -gamma * ang.phi).controlled_by(ancilla, 1))
        circ.append(Gate.ry(i, gamma * (brush_angles.theta - ang.theta))
                    .controlled_by(ancilla, 1))
        circ.append(Gate.rz(i, gamma * brush_angles.phi).controlled_by(ancilla, 1))
        circ.append(Gate.ry(ancilla, gamma * BACKACTION_ANGLE)
                    .controlled_by(i, 0))
    return circ


def run_aquarela(snapshot: Snapshot, stroke: Stroke, params: AquarelaParams,
                 backend) -> BrushOutcome:
    """Segment the stroke, run the steering circuit, decode shift updates."""
    params.validate()
    masks = segment_stroke(stroke, params.n_segments, snapshot.width,
                           snapshot.height)
    means = [region_mean_hsl(snapshot.image, m) for m in masks]
    segment_angles = [encode_hl(c) for c in means]
    brush_angles = encode_hl(params.brush_color)
    circ = aquarela_circuit(segment_angles, brush_angles, params.gamma)
    blochs = backend.tomography(circ, qubits=range(len(masks)))
    updates = []
    for i, (e, old) in enumerate(zip(blochs, means)):
        h, l = decode_bloch(e, fallback_hue=old.h)
        updates.append(SegmentColorUpdate(segment_index=i, new_h=h, new_l=l,
                                          mode="shift"))
    return BrushOutcome(updates=updates, masks=masks)
