"""Dense statevector simulator for the brush circuits.

Conventions (fixed once, used everywhere):

* Rotations: ``Ra(t) = exp(-i t Pa / 2)`` for ``a`` in {x, y, z}, and
  ``Raa(t) = exp(-i t Pa (x) Pa / 2)`` for the two-qubit interactions, so that
  ``Rxx(-dt) = exp(+i dt XX / 2)``.
* Controls carry a polarity: positive fires on ``|1>``, negative on ``|0>``.
* Qubit 0 is the least significant bit of the basis-state index.

States are plain complex vectors of length ``2**n``; every operation returns a
new :class:`StateVector` and preserves the L2 norm to better than 1e-10.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .errors import ArgumentError

MAX_QUBITS = 12

_PAULI = {
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


class GateKind(str, Enum):
    RX = "rx"
    RY = "ry"
    RZ = "rz"
    X = "x"
    RXX = "rxx"
    RYY = "ryy"
    RZZ = "rzz"
    CNOT = "cnot"


_ROTATIONS_1Q = {GateKind.RX, GateKind.RY, GateKind.RZ}
_ROTATIONS_2Q = {GateKind.RXX, GateKind.RYY, GateKind.RZZ}


@dataclass(frozen=True)
class Gate:
    """One circuit operation: kind, target qubits, optional angle and controls.

    ``controls`` is a tuple of ``(qubit, polarity)`` pairs; polarity 1 means
    the gate fires when the control is ``|1>``, polarity 0 when it is ``|0>``.
    """

    kind: GateKind
    targets: tuple[int, ...]
    angle: float | None = None
    controls: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        n_targets = 2 if self.kind in _ROTATIONS_2Q else 1
        if len(self.targets) != n_targets:
            raise ArgumentError(
                f"{self.kind.value} takes {n_targets} target(s), got {len(self.targets)}"
            )
        if self.kind in _ROTATIONS_1Q or self.kind in _ROTATIONS_2Q:
            if self.angle is None or not math.isfinite(self.angle):
                raise ArgumentError(f"{self.kind.value} needs a finite angle")
        elif self.angle is not None:
            raise ArgumentError(f"{self.kind.value} takes no angle")
        if self.kind is GateKind.CNOT and len(self.controls) != 1:
            raise ArgumentError("cnot takes exactly one control")
        control_qubits = [q for q, _ in self.controls]
        if len(set(control_qubits)) != len(control_qubits):
            raise ArgumentError("duplicate control qubits")
        if len(set(self.targets)) != len(self.targets):
            raise ArgumentError("duplicate target qubits")
        if set(control_qubits) & set(self.targets):
            raise ArgumentError("targets and controls must be disjoint")
        for q, pol in self.controls:
            if pol not in (0, 1):
                raise ArgumentError(f"control polarity must be 0 or 1, got {pol}")
            if q < 0:
                raise ArgumentError(f"negative qubit index {q}")
        if any(t < 0 for t in self.targets):
            raise ArgumentError("negative qubit index")

    @property
    def qubits(self) -> tuple[int, ...]:
        """All qubits the gate touches, targets first."""
        return self.targets + tuple(q for q, _ in self.controls)

    def controlled_by(self, qubit: int, polarity: int = 1) -> "Gate":
        return Gate(self.kind, self.targets, self.angle,
                    self.controls + ((qubit, polarity),))

    def inverse(self) -> "Gate":
        angle = -self.angle if self.angle is not None else None
        return Gate(self.kind, self.targets, angle, self.controls)

    # -- constructors -------------------------------------------------------
    @staticmethod
    def rx(q: int, angle: float) -> "Gate":
        return Gate(GateKind.RX, (q,), angle)

    @staticmethod
    def ry(q: int, angle: float) -> "Gate":
        return Gate(GateKind.RY, (q,), angle)

    @staticmethod
    def rz(q: int, angle: float) -> "Gate":
        return Gate(GateKind.RZ, (q,), angle)

    @staticmethod
    def x(q: int) -> "Gate":
        return Gate(GateKind.X, (q,))

    @staticmethod
    def rxx(a: int, b: int, angle: float) -> "Gate":
        return Gate(GateKind.RXX, (a, b), angle)

    @staticmethod
    def ryy(a: int, b: int, angle: float) -> "Gate":
        return Gate(GateKind.RYY, (a, b), angle)

    @staticmethod
    def rzz(a: int, b: int, angle: float) -> "Gate":
        return Gate(GateKind.RZZ, (a, b), angle)

    @staticmethod
    def cnot(control: int, target: int, polarity: int = 1) -> "Gate":
        return Gate(GateKind.CNOT, (target,), None, ((control, polarity),))


@dataclass
class Circuit:
    """An ordered gate list on a fixed number of qubits."""

    n_qubits: int
    gates: list[Gate] = field(default_factory=list)

    def __post_init__(self):
        if not 1 <= self.n_qubits <= MAX_QUBITS:
            raise ArgumentError(
                f"n_qubits must be in 1..{MAX_QUBITS}, got {self.n_qubits}"
            )
        for g in self.gates:
            self._check(g)

    def _check(self, gate: Gate):
        for q in gate.qubits:
            if not 0 <= q < self.n_qubits:
                raise ArgumentError(
                    f"gate {gate.kind.value} touches qubit {q}, "
                    f"circuit has {self.n_qubits}"
                )

    def append(self, gate: Gate) -> "Circuit":
        self._check(gate)
        self.gates.append(gate)
        return self

    def extend(self, gates: Iterable[Gate]) -> "Circuit":
        for g in gates:
            self.append(g)
        return self

    def inverse(self) -> "Circuit":
        return Circuit(self.n_qubits, [g.inverse() for g in reversed(self.gates)])

    def __len__(self):
        return len(self.gates)


@dataclass(frozen=True)
class NoiseSpec:
    """Per-gate depolarizing trajectory noise, reproducible from ``seed``."""

    p_depolarize_1q: float = 0.0
    p_depolarize_2q: float = 0.0
    seed: int = 0

    def __post_init__(self):
        for name in ("p_depolarize_1q", "p_depolarize_2q"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise ArgumentError(f"{name} must be in [0, 1], got {p}")


@dataclass(frozen=True)
class PauliVector:
    """Single-qubit expectation triple (<X>, <Y>, <Z>)."""

    ex: float
    ey: float
    ez: float

    def norm(self) -> float:
        return math.sqrt(self.ex**2 + self.ey**2 + self.ez**2)

    def as_array(self) -> np.ndarray:
        return np.array([self.ex, self.ey, self.ez])


class StateVector:
    """Complex amplitude vector over ``n_qubits`` (1..12)."""

    __slots__ = ("n_qubits", "amps")

    def __init__(self, n_qubits: int, amps: np.ndarray):
        if not 1 <= n_qubits <= MAX_QUBITS:
            raise ArgumentError(f"n_qubits must be in 1..{MAX_QUBITS}")
        amps = np.asarray(amps, dtype=complex)
        if amps.shape != (2**n_qubits,):
            raise ArgumentError(
                f"amplitude vector must have length {2**n_qubits}, got {amps.shape}"
            )
        self.n_qubits = n_qubits
        self.amps = amps

    @classmethod
    def zero(cls, n_qubits: int) -> "StateVector":
        amps = np.zeros(2**n_qubits, dtype=complex)
        amps[0] = 1.0
        return cls(n_qubits, amps)

    def copy(self) -> "StateVector":
        return StateVector(self.n_qubits, self.amps.copy())

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amps) ** 2


def _matrix_for(kind: GateKind, angle: float | None) -> np.ndarray:
    if kind is GateKind.X or kind is GateKind.CNOT:
        return _PAULI["X"]
    c, s = math.cos(angle / 2), math.sin(angle / 2)
    if kind is GateKind.RX:
        return np.array([[c, -1j * s], [-1j * s, c]])
    if kind is GateKind.RY:
        return np.array([[c, -s], [s, c]], dtype=complex)
    if kind is GateKind.RZ:
        return np.array([[c - 1j * s, 0], [0, c + 1j * s]])
    pauli = _PAULI[kind.value[1].upper()]
    pp = np.kron(pauli, pauli)
    return c * np.eye(4, dtype=complex) - 1j * s * pp


def _apply_unitary(amps: np.ndarray, n: int, unitary: np.ndarray,
                   targets: Sequence[int],
                   controls: Sequence[tuple[int, int]] = ()) -> None:
    """Apply ``unitary`` to ``targets`` in place, restricted to the control
    subspace. Axis ``a`` of the reshaped tensor holds qubit ``n - 1 - a``."""
    psi = amps.reshape([2] * n)
    index = [slice(None)] * n
    for q, pol in controls:
        index[n - 1 - q] = pol
    sub = psi[tuple(index)]
    control_qubits = {q for q, _ in controls}
    remaining = [q for q in range(n - 1, -1, -1) if q not in control_qubits]
    axis_of = {q: a for a, q in enumerate(remaining)}
    k = len(targets)
    # reversed() puts targets[0] on the least significant bit of the flat index
    src_axes = [axis_of[t] for t in reversed(targets)]
    moved = np.moveaxis(sub, src_axes, range(k))
    block = moved.reshape(2**k, -1)
    out = unitary @ block
    sub[...] = np.moveaxis(out.reshape(moved.shape), range(k), src_axes)


def apply_gate(state: StateVector, gate: Gate) -> StateVector:
    """Return the state with one gate applied (controls respected)."""
    for q in gate.qubits:
        if not 0 <= q < state.n_qubits:
            raise ArgumentError(f"qubit index {q} out of range for {state.n_qubits}")
    out = state.copy()
    _apply_unitary(out.amps, out.n_qubits, _matrix_for(gate.kind, gate.angle),
                   gate.targets, gate.controls)
    return out


def _apply_pauli(amps: np.ndarray, n: int, which: str, qubit: int) -> None:
    _apply_unitary(amps, n, _PAULI[which], (qubit,))


def run_circuit(state: StateVector, circuit: Circuit,
                noise: NoiseSpec | None = None) -> StateVector:
    """Run all gates in order; optionally insert seeded Pauli trajectory noise.

    With noise, after each gate every touched qubit independently suffers a
    uniformly random Pauli error with the per-gate-class probability, drawn
    from a stream seeded by ``noise.seed``; identical inputs give identical
    outputs.
    """
    if circuit.n_qubits != state.n_qubits:
        raise ArgumentError(
            f"circuit has {circuit.n_qubits} qubits, state has {state.n_qubits}"
        )
    out = state.copy()
    rng = np.random.default_rng(noise.seed) if noise is not None else None
    for gate in circuit.gates:
        _apply_unitary(out.amps, out.n_qubits, _matrix_for(gate.kind, gate.angle),
                       gate.targets, gate.controls)
        if rng is not None:
            touched = gate.qubits
            p = (noise.p_depolarize_2q if len(touched) >= 2
                 else noise.p_depolarize_1q)
            for q in touched:
                if rng.random() < p:
                    which = "XYZ"[rng.integers(3)]
                    _apply_pauli(out.amps, out.n_qubits, which, q)
    return out


def reduced_density(state: StateVector, qubit: int) -> np.ndarray:
    """2x2 reduced density matrix of one qubit."""
    if not 0 <= qubit < state.n_qubits:
        raise ArgumentError(f"qubit index {qubit} out of range")
    n = state.n_qubits
    t = state.amps.reshape([2] * n)
    t = np.moveaxis(t, n - 1 - qubit, 0).reshape(2, -1)
    return t @ t.conj().T


def bloch_vector(state: StateVector, qubit: int) -> PauliVector:
    """Exact (<X>, <Y>, <Z>) of one qubit from the reduced density matrix."""
    rho = reduced_density(state, qubit)
    return PauliVector(
        ex=float(2 * rho[0, 1].real),
        ey=float(-2 * rho[0, 1].imag),
        ez=float((rho[0, 0] - rho[1, 1]).real),
    )


def sampled_bloch_vector(state: StateVector, qubit: int, shots: int,
                         seed: int) -> PauliVector:
    """Shot-based Bloch estimate: each axis measured with ``shots`` samples.

    Converges to :func:`bloch_vector` as shots grow; deterministic for a
    fixed seed. Each component lies in [-1, 1] and deterministic outcomes are
    exact, but shot noise can push the vector norm above 1; consumers that
    need the unit ball (color decoding, the collage singular map) rescale.
    """
    if shots < 1:
        raise ArgumentError(f"shots must be >= 1, got {shots}")
    exact = bloch_vector(state, qubit)
    rng = np.random.default_rng(seed)
    est = []
    for value in (exact.ex, exact.ey, exact.ez):
        p_plus = min(1.0, max(0.0, (1.0 + value) / 2.0))
        hits = rng.binomial(shots, p_plus)
        est.append(2.0 * hits / shots - 1.0)
    return PauliVector(*est)


def magnetization(state: StateVector) -> float:
    """Mean Z expectation over all qubits, in [-1, 1]."""
    n = state.n_qubits
    probs = state.probabilities().reshape([2] * n)
    total = 0.0
    for q in range(n):
        axes = tuple(a for a in range(n) if a != n - 1 - q)
        marginal = probs.sum(axis=axes)
        total += float(marginal[0] - marginal[1])
    return total / n


def sampled_magnetization(state: StateVector, shots: int, seed: int) -> float:
    """Estimate the mean magnetization from ``shots`` full-register samples."""
    if shots < 1:
        raise ArgumentError(f"shots must be >= 1, got {shots}")
    n = state.n_qubits
    probs = state.probabilities()
    probs = probs / probs.sum()
    rng = np.random.default_rng(seed)
    outcomes = rng.choice(len(probs), size=shots, p=probs)
    ones = np.array([bin(int(b)).count("1") for b in outcomes])
    return float(np.mean((n - 2 * ones) / n))
