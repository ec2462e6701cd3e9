"""Brush parameter records, their validation, and brush output types."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..canvas import PixelMask
from ..color import HslColor
from ..errors import ValidationError

MAX_TROTTER_STEPS = 10
MAX_HEISEN_QUBITS = 10
# one qubit per segment/stroke plus the ancilla must fit in 12 qubits
MAX_SEGMENTS = 11

HEISEN_DT = 0.1
RADIUS_PX_PER_QUBIT = 5.0


def _collect(violations, ok, f, message):
    if not ok:
        violations.append((f, message))


@dataclass(frozen=True)
class AquarelaParams:
    brush_color: HslColor
    gamma: float
    n_segments: int

    def validate(self):
        v = []
        _collect(v, 0.0 <= self.gamma <= 1.0, "gamma",
                 f"must be in [0, 1], got {self.gamma}")
        _collect(v, 1 <= self.n_segments <= MAX_SEGMENTS, "n_segments",
                 f"must be in [1, {MAX_SEGMENTS}], got {self.n_segments}")
        if v:
            raise ValidationError(v)


@dataclass(frozen=True)
class HeisenParams:
    mode: str  # "continuous" | "discrete"
    user_color: HslColor
    gamma: float
    n_steps: int = 1
    n_qubits: int | None = None  # derived from stroke radius when None
    dt: float = HEISEN_DT

    def validate(self):
        v = []
        _collect(v, self.mode in ("continuous", "discrete"), "mode",
                 f"must be 'continuous' or 'discrete', got {self.mode!r}")
        _collect(v, 0.0 <= self.gamma <= 1.0, "gamma",
                 f"must be in [0, 1], got {self.gamma}")
        _collect(v, 1 <= self.n_steps <= MAX_TROTTER_STEPS, "n_steps",
                 f"must be in [1, {MAX_TROTTER_STEPS}], got {self.n_steps}")
        if self.n_qubits is not None:
            _collect(v, 1 <= self.n_qubits <= MAX_HEISEN_QUBITS, "n_qubits",
                     f"must be in [1, {MAX_HEISEN_QUBITS}], got {self.n_qubits}")
        _collect(v, abs(self.dt - HEISEN_DT) < 1e-12, "dt",
                 f"time step is fixed at {HEISEN_DT}")
        if v:
            raise ValidationError(v)

    def qubits_for_radius(self, radius: float) -> int:
        if self.n_qubits is not None:
            return self.n_qubits
        return min(MAX_HEISEN_QUBITS, max(1, round(radius / RADIUS_PX_PER_QUBIT)))


@dataclass(frozen=True)
class SmudgeParams:
    control: int  # 0 = damp toward dark, 1 = pump toward bright
    gamma: float
    n_strokes: int

    def validate(self):
        v = []
        _collect(v, self.control in (0, 1), "control",
                 f"must be 0 or 1, got {self.control}")
        _collect(v, 0.0 <= self.gamma <= math.pi, "gamma",
                 f"must be in [0, pi], got {self.gamma}")
        _collect(v, 1 <= self.n_strokes <= MAX_SEGMENTS, "n_strokes",
                 f"must be in [1, {MAX_SEGMENTS}], got {self.n_strokes}")
        if v:
            raise ValidationError(v)


def cloning_constraint(s0: float, s1: float) -> float:
    """Residual of the asymmetric-cloning constraint; must be <= 0."""
    return s0 * s0 + s1 * s1 + s0 * s1 - s0 - s1


@dataclass(frozen=True)
class CollageParams:
    s0: float
    copy_region: PixelMask
    paste_origin: tuple[int, int]
    s1: float | None = None  # solved for maximal paste fidelity when None

    def __post_init__(self):
        if self.s1 is None:
            from .collage import solve_s1
            if 0.0 < self.s0 <= 1.0:
                object.__setattr__(self, "s1", solve_s1(self.s0))
            else:
                object.__setattr__(self, "s1", 0.0)

    def validate(self):
        v = []
        _collect(v, 0.0 < self.s0 <= 1.0, "s0",
                 f"must be in (0, 1], got {self.s0}")
        _collect(v, 0.0 <= self.s1 <= 1.0, "s1",
                 f"must be in [0, 1], got {self.s1}")
        if not v:
            _collect(v, cloning_constraint(self.s0, self.s1) <= 1e-12, "s1",
                     "violates the cloning constraint "
                     f"(residual {cloning_constraint(self.s0, self.s1):.3g})")
        if v:
            raise ValidationError(v)


@dataclass(frozen=True)
class SegmentColorUpdate:
    """New color for one segment; ``shift`` moves the region mean to it,
    ``overwrite`` floods the region with it."""

    segment_index: int
    new_h: float
    new_l: float
    mode: str  # "shift" | "overwrite"
    new_s: float | None = None  # only used by overwrite updates


@dataclass(frozen=True)
class RegionRewrite:
    """Explicit per-pixel RGB values for a mask (Collage output)."""

    mask: PixelMask
    values: np.ndarray  # (mask.count, 3) floats in [0, 1]


@dataclass(frozen=True)
class SingularTriple:
    """SVD of a region's pixel-by-3 RGB matrix: values descending plus factors."""

    s_values: np.ndarray  # (3,) non-negative, descending
    u_vectors: np.ndarray  # (n_pixels, 3)
    v_vectors: np.ndarray  # (3, 3), rows are right singular vectors (Vt)

    @property
    def mean(self) -> float:
        return float(np.mean(self.s_values))

    def reconstruct(self, s_values=None) -> np.ndarray:
        s = self.s_values if s_values is None else np.asarray(s_values, float)
        return (self.u_vectors * s) @ self.v_vectors


@dataclass(frozen=True)
class BrushOutcome:
    """What a brush run produced: updates plus the masks they apply to."""

    updates: list
    masks: list[PixelMask] = field(default_factory=list)
