"""Collage: copy a lasso region through an asymmetric quantum cloner.

The region's pixel-by-3 RGB matrix is SVD-decomposed; the log-scaled singular
values orient a single qubit on the Bloch sphere. A universal asymmetric
cloning circuit (helper ancilla plus four CNOTs) splits the information
between the original (C) and the clone (P) with a user-tunable balance s0.
Tomography on both qubits yields new singular values for each patch; the
patches are rebuilt with the original singular vectors, writing C over the
copy region and P at the paste target.
"""

from __future__ import annotations

import math

import numpy as np

from ..canvas import PixelMask, Snapshot
from ..color import BlochAngles
from ..errors import ArgumentError, PlacementError, RegionTooSmallError
from ..sim import Circuit, Gate, PauliVector
from .params import (BrushOutcome, CollageParams, RegionRewrite,
                     SingularTriple, cloning_constraint)

SINGULAR_FLOOR = 1e-12  # below any 8-bit dynamic range; keeps logs finite


def solve_s1(s0: float) -> float:
    """Largest paste fidelity parameter compatible with the cloning constraint."""
    if not 0.0 < s0 <= 1.0:
        raise ArgumentError(f"s0 must be in (0, 1], got {s0}")
    s1 = ((1.0 - s0) + math.sqrt((1.0 - s0) * (1.0 + 3.0 * s0))) / 2.0
    return min(1.0, max(0.0, s1))


def svd_encode(region_rgb: np.ndarray) -> tuple[BlochAngles, SingularTriple]:
    """Encode a region's RGB matrix as Bloch angles along log(S)."""
    m = np.asarray(region_rgb, dtype=float)
    if m.ndim != 2 or m.shape[1] != 3 or m.shape[0] < 3:
        raise RegionTooSmallError(
            f"region must be an (n>=3, 3) matrix, got {m.shape}"
        )
    u, s, vt = np.linalg.svd(m, full_matrices=False)
    s = np.maximum(s, SINGULAR_FLOOR)
    logs = np.log(s)
    phi = math.atan2(logs[1], logs[0]) % (2.0 * math.pi)
    theta = math.atan2(math.hypot(logs[0], logs[1]), logs[2])
    triple = SingularTriple(s_values=s, u_vectors=u, v_vectors=vt)
    return BlochAngles(phi=phi, theta=theta), triple


def uaqc_circuit(psi_angles: BlochAngles, s0: float, s1: float) -> Circuit:
    """Cloning circuit on qubits C=0, A=1, P=2.

    The helper pair (A, P) is prepared so that, reading kets as |P A>, its
    state is sqrt((s0+s1)/2)|00> + sqrt((1-s0)/2)|01> + sqrt((1-s1)/2)|11>;
    four CNOTs then perform the cloning.
    """
    if cloning_constraint(s0, s1) > 1e-12:
        raise ArgumentError(
            f"(s0={s0}, s1={s1}) violates the cloning constraint"
        )
    amp_00 = math.sqrt(max(0.0, (s0 + s1) / 2.0))   # A=0, P=0
    amp_a1 = math.sqrt(max(0.0, (1.0 - s0) / 2.0))  # A=1, P=0
    amp_11 = math.sqrt(max(0.0, (1.0 - s1) / 2.0))  # A=1, P=1
    rest = math.hypot(amp_a1, amp_11)
    theta_a = 2.0 * math.atan2(rest, amp_00)
    theta_p = 2.0 * math.atan2(amp_11, amp_a1) if rest > 0 else 0.0

    circ = Circuit(3)
    circ.append(Gate.ry(0, psi_angles.theta))
    circ.append(Gate.rz(0, psi_angles.phi))
    circ.append(Gate.ry(1, theta_a))
    circ.append(Gate.ry(2, theta_p).controlled_by(1, 1))
    circ.append(Gate.cnot(control=0, target=2))
    circ.append(Gate.cnot(control=0, target=1))
    circ.append(Gate.cnot(control=2, target=0))
    circ.append(Gate.cnot(control=1, target=0))
    return circ


def remap_singular_values(e: PauliVector, triple: SingularTriple) -> np.ndarray:
    """Map a tomography vector back to singular values.

    ``S_q = |E| * exp((|log S| / |E|) * E) + (1 - |E|) * mean(S)``, with the
    |E| -> 0 limit giving a flat [mean, mean, mean] triple. Vectors outside
    the unit ball (sampling noise) are rescaled onto it first.
    """
    vec = e.as_array()
    norm = float(np.linalg.norm(vec))
    if norm > 1.0:
        vec = vec / norm
        norm = 1.0
    s_mean = triple.mean
    if norm < 1e-15:
        return np.full(3, s_mean)
    log_norm = float(np.linalg.norm(np.log(triple.s_values)))
    return norm * np.exp((log_norm / norm) * vec) + (1.0 - norm) * s_mean


def run_collage(snapshot: Snapshot, params: CollageParams,
                backend) -> BrushOutcome:
    """Clone the copy region onto the paste target; rewrite both patches."""
    params.validate()
    copy_mask = params.copy_region
    if copy_mask.count < 3:
        raise RegionTooSmallError(
            f"copy region has {copy_mask.count} pixels, need at least 3"
        )
    if not copy_mask.fits(snapshot.width, snapshot.height):
        raise PlacementError("copy region exceeds the canvas")
    dx = int(params.paste_origin[0]) - copy_mask.x0
    dy = int(params.paste_origin[1]) - copy_mask.y0
    paste_mask = copy_mask.translated(dx, dy)
    if not paste_mask.fits(snapshot.width, snapshot.height):
        raise PlacementError(
            f"paste at {params.paste_origin} does not fit the canvas"
        )

    xs, ys = copy_mask.coords()
    matrix = snapshot.image.pixels[ys, xs, :3].astype(float) / 255.0
    angles, triple = svd_encode(matrix)
    circ = uaqc_circuit(angles, params.s0, params.s1)
    e_copy, e_paste = backend.tomography(circ, qubits=(0, 2))

    patches = []
    for e in (e_copy, e_paste):
        new_s = remap_singular_values(e, triple)
        patches.append(np.clip(triple.reconstruct(new_s), 0.0, 1.0))
    return BrushOutcome(
        updates=[RegionRewrite(mask=copy_mask, values=patches[0]),
                 RegionRewrite(mask=paste_mask, values=patches[1])],
        masks=[copy_mask, paste_mask],
    )
