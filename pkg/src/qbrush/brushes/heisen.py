"""Heisenbrush: acrylic-like fills colored by the magnetization of a
Trotterized spin-1/2 Heisenberg chain with periodic boundaries.

The chain Hamiltonian is
``H = 1/2 * sum_n (-Xn Xn+1 - Yn Yn+1 - Zn Zn+1 + Xn + Zn)``,
simulated with first-order Trotter steps at a fixed dt of 0.1. The chain
starts in a uniform product state prepared from the user color; after each
step the mean Z magnetization shifts the user color, and the resulting colors
overwrite the canvas segment by segment (continuous mode) or stroke by stroke
(discrete mode).
"""

from __future__ import annotations

from ..canvas import Snapshot, Stroke, rasterize, segment_stroke
from ..color import HslColor, encode_hl
from ..errors import ArgumentError, ValidationError
from ..sim import Circuit, Gate
from .params import (HEISEN_DT, MAX_HEISEN_QUBITS, MAX_TROTTER_STEPS,
                     BrushOutcome, HeisenParams, SegmentColorUpdate)


def chain_pairs(n_qubits: int) -> list[tuple[int, int]]:
    """Periodic neighbour pairs, each unordered bond exactly once."""
    pairs = []
    seen = set()
    for i in range(n_qubits):
        a, b = i, (i + 1) % n_qubits
        if a == b:
            continue
        bond = frozenset((a, b))
        if bond not in seen:
            seen.add(bond)
            pairs.append((a, b))
    return pairs


def trotter_step_circuit(n_qubits: int, dt: float) -> Circuit:
    """One first-order Trotter step: all bond terms, then the field terms."""
    if not 1 <= n_qubits <= MAX_HEISEN_QUBITS:
        raise ArgumentError(
            f"n_qubits must be in 1..{MAX_HEISEN_QUBITS}, got {n_qubits}"
        )
    circ = Circuit(n_qubits)
    for a, b in chain_pairs(n_qubits):
        circ.append(Gate.rxx(a, b, -dt))
        circ.append(Gate.ryy(a, b, -dt))
        circ.append(Gate.rzz(a, b, -dt))
    for q in range(n_qubits):
        circ.append(Gate.rz(q, dt))
    for q in range(n_qubits):
        circ.append(Gate.rx(q, dt))
    return circ


def prep_circuit(n_qubits: int, color: HslColor) -> Circuit:
    """Uniform product state |(phi, theta)> on every chain qubit."""
    ang = encode_hl(color)
    circ = Circuit(n_qubits)
    for q in range(n_qubits):
        circ.append(Gate.ry(q, ang.theta))
        circ.append(Gate.rz(q, ang.phi))
    return circ


def heisen_color(user_color: HslColor, m: float, gamma: float) -> HslColor:
    """Blend the user color with the magnetization-shifted color.

    Each of H, S, L independently becomes
    ``gamma * ((V + m) mod 1) + (1 - gamma) * V``.
    """
    def channel(v):
        return gamma * ((v + m) % 1.0) + (1.0 - gamma) * v

    return HslColor(h=channel(user_color.h), s=channel(user_color.s),
                    l=channel(user_color.l))


def run_heisenbrush(snapshot: Snapshot, strokes: list[Stroke],
                    params: HeisenParams, backend) -> BrushOutcome:
    """Evolve the chain step by step and overwrite one region per step.

    At gamma = 0 the brush is a no-op: the quantum effect vanishes and nothing
    is painted.
    """
    params.validate()
    if not strokes:
        raise ArgumentError("heisenbrush needs at least one stroke")
    if params.mode == "continuous":
        if len(strokes) != 1:
            raise ArgumentError("continuous mode takes exactly one stroke")
        n_steps = params.n_steps
        masks = segment_stroke(strokes[0], n_steps, snapshot.width,
                               snapshot.height)
    else:
        if len(strokes) > MAX_TROTTER_STEPS:
            raise ValidationError([
                ("strokes",
                 f"discrete mode allows at most {MAX_TROTTER_STEPS} strokes, "
                 f"got {len(strokes)}")
            ])
        n_steps = len(strokes)
        masks = [rasterize(s, snapshot.width, snapshot.height) for s in strokes]

    if params.gamma == 0.0:
        return BrushOutcome(updates=[], masks=[])

    n_qubits = params.qubits_for_radius(strokes[0].radius)
    prep = prep_circuit(n_qubits, params.user_color)
    step = trotter_step_circuit(n_qubits, params.dt)
    magnetizations = backend.magnetization_series(prep, step, n_steps)
    updates = []
    for i, m in enumerate(magnetizations):
        c = heisen_color(params.user_color, m, params.gamma)
        updates.append(SegmentColorUpdate(segment_index=i, new_h=c.h,
                                          new_l=c.l, new_s=c.s,
                                          mode="overwrite"))
    return BrushOutcome(updates=updates, masks=masks)
