"""Smudge: an uneven quantum cascade of amplitude damping (or pumping).

One qubit per stroke, prepared from the stroke's mean (hue, luminosity). A
single shared ancilla applies the damping channel to every stroke qubit in
order and is never reset, so only the first stroke is truly damped; the rest
entangle through the ancilla. Control = 1 conjugates the channel with X,
turning damping (collapse toward dark) into pumping (toward bright).
"""

from __future__ import annotations

from ..canvas import Snapshot, Stroke, rasterize, region_mean_hsl
from ..color import BlochAngles, decode_bloch, encode_hl
from ..errors import ArgumentError
from ..sim import Circuit, Gate
from .params import MAX_SEGMENTS, BrushOutcome, SegmentColorUpdate, SmudgeParams


def smudge_circuit(stroke_angles: list[BlochAngles], gamma: float,
                   control: int) -> Circuit:
    """Damping cascade: shared ancilla (index N), never re-initialized."""
    n = len(stroke_angles)
    if not 1 <= n <= MAX_SEGMENTS:
        raise ArgumentError(f"stroke count must be in 1..{MAX_SEGMENTS}, got {n}")
    if control not in (0, 1):
        raise ArgumentError(f"control must be 0 or 1, got {control}")
    ancilla = n
    circ = Circuit(n + 1)
    for i, ang in enumerate(stroke_angles):
        circ.append(Gate.ry(i, ang.theta))
        circ.append(Gate.rz(i, ang.phi))
    for i in range(n):
        if control == 1:
            circ.append(Gate.x(i))
        circ.append(Gate.ry(ancilla, gamma).controlled_by(i, 1))
        circ.append(Gate.cnot(control=ancilla, target=i))
        if control == 1:
            circ.append(Gate.x(i))
    return circ


def run_smudge(snapshot: Snapshot, strokes: list[Stroke], params: SmudgeParams,
               backend) -> BrushOutcome:
    """One qubit per stroke; decoded colors shift each stroke's whole mask."""
    params.validate()
    if not strokes:
        raise ArgumentError("smudge needs at least one stroke")
    if len(strokes) != params.n_strokes:
        raise ArgumentError(
            f"params declare {params.n_strokes} strokes, got {len(strokes)}"
        )
    masks = [rasterize(s, snapshot.width, snapshot.height) for s in strokes]
    means = [region_mean_hsl(snapshot.image, m) for m in masks]
    angles = [encode_hl(c) for c in means]
    circ = smudge_circuit(angles, params.gamma, params.control)
    blochs = backend.tomography(circ, qubits=range(len(masks)))
    updates = []
    for i, (e, old) in enumerate(zip(blochs, means)):
        h, l = decode_bloch(e, fallback_hue=old.h)
        updates.append(SegmentColorUpdate(segment_index=i, new_h=h, new_l=l,
                                          mode="shift"))
    return BrushOutcome(updates=updates, masks=masks)
