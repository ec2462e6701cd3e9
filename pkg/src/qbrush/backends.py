"""Execution backends: exact expectations, shot sampling, trajectory noise,
and a stub seam for remote quantum hardware.

A :class:`BackendSession` is created per job run with the job seed; all
stochastic choices (shot sampling, noise insertion) derive from that seed in a
fixed call order, so identical jobs reproduce identical results bit for bit.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np
import requests

from .errors import (ArgumentError, BackendNotConfiguredError,
                     RemoteBackendError, ValidationError)
from .sim import (Circuit, Gate, GateKind, NoiseSpec, PauliVector, StateVector,
                  bloch_vector, magnetization, run_circuit,
                  sampled_bloch_vector, sampled_magnetization)

BACKEND_KINDS = ("exact", "sampling", "noisy", "remote_stub")
REMOTE_ENDPOINT_ENV = "QBRUSH_REMOTE_ENDPOINT"
DEFAULT_SHOTS = 1024
DEFAULT_NOISE_1Q = 0.001
DEFAULT_NOISE_2Q = 0.01


@dataclass(frozen=True)
class BackendSpec:
    kind: str = "exact"
    shots: int = DEFAULT_SHOTS
    noise: NoiseSpec | None = None

    def validate(self):
        v = []
        if self.kind not in BACKEND_KINDS:
            v.append(("backend.kind",
                      f"must be one of {BACKEND_KINDS}, got {self.kind!r}"))
        if self.kind in ("sampling", "noisy", "remote_stub") and self.shots < 1:
            v.append(("backend.shots", f"must be >= 1, got {self.shots}"))
        if v:
            raise ValidationError(v)


def circuit_to_json(circuit: Circuit) -> dict:
    gates = []
    for g in circuit.gates:
        entry = {"kind": g.kind.value, "targets": list(g.targets)}
        if g.angle is not None:
            entry["angle"] = g.angle
        if g.controls:
            entry["controls"] = [[q, pol] for q, pol in g.controls]
        gates.append(entry)
    return {"n_qubits": circuit.n_qubits, "gates": gates}


def circuit_from_json(payload: dict) -> Circuit:
    circ = Circuit(int(payload["n_qubits"]))
    for entry in payload["gates"]:
        circ.append(Gate(
            kind=GateKind(entry["kind"]),
            targets=tuple(entry["targets"]),
            angle=entry.get("angle"),
            controls=tuple((q, pol) for q, pol in entry.get("controls", [])),
        ))
    return circ


class BackendSession:
    """One job's execution context; owns the derived random streams."""

    def __init__(self, spec: BackendSpec, seed: int):
        spec.validate()
        self.spec = spec
        self.seed = int(seed)
        self._seed_rng = np.random.default_rng(self.seed)
        if spec.kind == "noisy":
            base = spec.noise if spec.noise is not None else NoiseSpec(
                p_depolarize_1q=DEFAULT_NOISE_1Q,
                p_depolarize_2q=DEFAULT_NOISE_2Q,
                seed=self.seed,
            )
            self._noise_template = base
            self._noise_counter = np.random.default_rng(base.seed)
        else:
            self._noise_template = None

    def _child_seed(self) -> int:
        return int(self._seed_rng.integers(0, 2**63 - 1))

    def _next_noise(self) -> NoiseSpec | None:
        if self._noise_template is None:
            return None
        return NoiseSpec(
            p_depolarize_1q=self._noise_template.p_depolarize_1q,
            p_depolarize_2q=self._noise_template.p_depolarize_2q,
            seed=int(self._noise_counter.integers(0, 2**63 - 1)),
        )

    def evolve(self, state: StateVector, circuit: Circuit) -> StateVector:
        return run_circuit(state, circuit, noise=self._next_noise())

    def tomography(self, circuit: Circuit, qubits) -> list[PauliVector]:
        """Run the circuit from |0...0> and report each qubit's Bloch vector."""
        qubits = list(qubits)
        if self.spec.kind == "remote_stub":
            return self._remote_tomography(circuit, qubits)
        state = self.evolve(StateVector.zero(circuit.n_qubits), circuit)
        if self.spec.kind == "exact":
            return [bloch_vector(state, q) for q in qubits]
        return [
            sampled_bloch_vector(state, q, self.spec.shots, self._child_seed())
            for q in qubits
        ]

    def magnetization_series(self, prep: Circuit, step: Circuit,
                             n_steps: int) -> list[float]:
        """Mean magnetization after each of ``n_steps`` evolution steps."""
        if n_steps < 1:
            raise ArgumentError(f"n_steps must be >= 1, got {n_steps}")
        if self.spec.kind == "remote_stub":
            return self._remote_magnetizations(prep, step, n_steps)
        state = self.evolve(StateVector.zero(prep.n_qubits), prep)
        series = []
        for _ in range(n_steps):
            state = self.evolve(state, step)
            if self.spec.kind == "exact":
                series.append(magnetization(state))
            else:
                series.append(sampled_magnetization(
                    state, self.spec.shots, self._child_seed()
                ))
        return series

    # -- remote seam ----------------------------------------------------------

    def _endpoint(self) -> str:
        endpoint = os.environ.get(REMOTE_ENDPOINT_ENV, "").strip()
        if not endpoint:
            raise BackendNotConfiguredError(
                f"remote backend requires {REMOTE_ENDPOINT_ENV} to be set"
            )
        return endpoint

    def _remote_call(self, circuit: Circuit, observables: list[dict]) -> list:
        payload = dict(circuit_to_json(circuit), shots=self.spec.shots,
                       seed=self.seed, observables=observables)
        try:
            reply = requests.post(self._endpoint(), json=payload, timeout=60)
            reply.raise_for_status()
            results = reply.json()["results"]
        except BackendNotConfiguredError:
            raise
        except Exception as exc:
            raise RemoteBackendError(f"remote execution failed: {exc}") from exc
        if len(results) != len(observables):
            raise RemoteBackendError(
                f"remote returned {len(results)} results for "
                f"{len(observables)} observables"
            )
        return results

    def _remote_tomography(self, circuit, qubits) -> list[PauliVector]:
        observables = [{"type": "bloch", "qubit": int(q)} for q in qubits]
        out = []
        for triple in self._remote_call(circuit, observables):
            vec = np.asarray(triple, dtype=float)
            norm = float(np.linalg.norm(vec))
            if norm > 1.0:
                vec = vec / norm
            out.append(PauliVector(*map(float, vec)))
        return out

    def _remote_magnetizations(self, prep, step, n_steps) -> list[float]:
        series = []
        for k in range(1, n_steps + 1):
            circ = Circuit(prep.n_qubits, list(prep.gates) + list(step.gates) * k)
            (value,) = self._remote_call(circ, [{"type": "magnetization"}])
            series.append(float(value))
        return series
