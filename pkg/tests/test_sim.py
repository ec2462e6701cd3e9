import math

import numpy as np
import pytest

import oracles
from qbrush import (Circuit, Gate, GateKind, NoiseSpec, StateVector,
                    apply_gate, bloch_vector, magnetization, run_circuit,
                    sampled_bloch_vector, sampled_magnetization)
from qbrush.errors import ArgumentError


def prepared(n, angle_pairs):
    """Product state from (phi, theta) pairs via the package's own gates."""
    state = StateVector.zero(n)
    for q, (phi, theta) in enumerate(angle_pairs):
        state = apply_gate(state, Gate.ry(q, theta))
        state = apply_gate(state, Gate.rz(q, phi))
    return state


def random_state(rng, n):
    amps = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    return StateVector(n, amps / np.linalg.norm(amps))


def random_gate(rng, n):
    kind = list(GateKind)[int(rng.integers(len(GateKind)))]
    angle = float(rng.uniform(-2 * math.pi, 2 * math.pi))
    qubits = rng.permutation(n)
    if kind in (GateKind.RXX, GateKind.RYY, GateKind.RZZ):
        if n < 2:
            return Gate.rx(0, angle)
        return Gate(kind, (int(qubits[0]), int(qubits[1])), angle)
    if kind is GateKind.CNOT:
        if n < 2:
            return Gate.x(0)
        return Gate.cnot(int(qubits[0]), int(qubits[1]),
                         polarity=int(rng.integers(2)))
    if kind is GateKind.X:
        return Gate.x(int(qubits[0]))
    gate = Gate(kind, (int(qubits[0]),), angle)
    # sometimes decorate single-qubit rotations with a control
    if n >= 2 and rng.random() < 0.4:
        gate = gate.controlled_by(int(qubits[1]), int(rng.integers(2)))
    return gate


def oracle_apply(state, gate):
    full = oracles.gate_matrix(state.n_qubits, gate.kind.value,
                               list(gate.targets), gate.angle,
                               list(gate.controls))
    return full @ state.amps


# -- apply_gate ----------------------------------------------------------------

def test_ry_pi_flips_zero_to_one():
    state = apply_gate(StateVector.zero(1), Gate.ry(0, math.pi))
    assert abs(abs(state.amps[1]) - 1.0) < 1e-12
    assert abs(state.amps[0]) < 1e-12


def test_rzz_matches_matrix_exponential():
    rng = np.random.default_rng(42)
    state = random_state(rng, 2)
    got = apply_gate(state, Gate.rzz(0, 1, -0.1))
    want = oracles.rot2(oracles.PAULI_Z, -0.1) @ state.amps
    assert np.max(np.abs(got.amps - want)) <= 1e-12


def test_negative_control_cnot_fires_on_zero():
    state = apply_gate(StateVector.zero(2), Gate.cnot(1, 0, polarity=0))
    assert abs(state.amps[0b01] - 1.0) < 1e-12


def test_gate_argument_errors():
    state = StateVector.zero(2)
    with pytest.raises(ArgumentError):
        apply_gate(state, Gate.rx(5, 0.3))
    with pytest.raises(ArgumentError):
        Gate.rx(0, math.inf)
    with pytest.raises(ArgumentError):
        Gate(GateKind.RXX, (0,), 0.1)
    with pytest.raises(ArgumentError):
        Gate.rx(0, 0.5).controlled_by(0)


def test_gate_oracle_equivalence_random():
    rng = np.random.default_rng(7)
    for n in (1, 2, 3):
        for _ in range(60):
            state = random_state(rng, n)
            gate = random_gate(rng, n)
            got = apply_gate(state, gate)
            want = oracle_apply(state, gate)
            assert np.max(np.abs(got.amps - want)) <= 1e-10


def test_control_polarity_identity_on_nonmatching_basis_states():
    # enumerate all basis states for n <= 3: controlled gate acts as identity
    # whenever the control bit differs from the polarity
    for n in (2, 3):
        for pol in (0, 1):
            gate = Gate.ry(0, 1.234).controlled_by(n - 1, pol)
            for basis in range(2**n):
                amps = np.zeros(2**n, dtype=complex)
                amps[basis] = 1.0
                out = apply_gate(StateVector(n, amps), gate)
                if (basis >> (n - 1)) & 1 != pol:
                    assert np.max(np.abs(out.amps - amps)) == 0.0


# -- run_circuit -----------------------------------------------------------------

def test_empty_circuit_identity():
    rng = np.random.default_rng(3)
    state = random_state(rng, 3)
    out = run_circuit(state, Circuit(3))
    assert np.array_equal(out.amps, state.amps)


def test_unitarity_forward_backward():
    rng = np.random.default_rng(11)
    for trial in range(100):
        n = int(rng.integers(1, 5))
        circ = Circuit(n)
        for _ in range(int(rng.integers(1, 12))):
            circ.append(random_gate(rng, n))
        state = random_state(rng, n)
        roundtrip = run_circuit(run_circuit(state, circ), circ.inverse())
        assert np.max(np.abs(roundtrip.amps - state.amps)) <= 1e-10


def test_mismatched_qubit_counts_rejected():
    with pytest.raises(ArgumentError):
        run_circuit(StateVector.zero(2), Circuit(3))


def test_norm_preserved_without_noise():
    rng = np.random.default_rng(5)
    for _ in range(20):
        n = int(rng.integers(1, 5))
        circ = Circuit(n)
        for _ in range(25):
            circ.append(random_gate(rng, n))
        out = run_circuit(random_state(rng, n), circ)
        assert abs(out.norm() - 1.0) <= 1e-10


def test_noise_determinism_and_norm():
    rng = np.random.default_rng(13)
    circ = Circuit(3)
    for _ in range(30):
        circ.append(random_gate(rng, 3))
    noise = NoiseSpec(p_depolarize_1q=0.2, p_depolarize_2q=0.5, seed=99)
    state = random_state(rng, 3)
    out1 = run_circuit(state, circ, noise)
    out2 = run_circuit(state, circ, noise)
    assert np.array_equal(out1.amps, out2.amps)
    assert abs(out1.norm() - 1.0) <= 1e-10
    # a different seed should (generically) change the trajectory
    out3 = run_circuit(state, circ, NoiseSpec(0.2, 0.5, seed=100))
    assert not np.allclose(out1.amps, out3.amps)


def test_noise_probability_range_validated():
    with pytest.raises(ArgumentError):
        NoiseSpec(p_depolarize_1q=1.5)


# -- tomography -------------------------------------------------------------------

def test_bloch_vector_of_zero_state():
    e = bloch_vector(StateVector.zero(1), 0)
    assert (e.ex, e.ey, e.ez) == (0.0, 0.0, 1.0)


def test_bloch_vector_of_bell_qubit_is_mixed():
    amps = np.zeros(4, dtype=complex)
    amps[0b00] = amps[0b11] = 1 / math.sqrt(2)
    e = bloch_vector(StateVector(2, amps), 0)
    assert abs(e.ex) < 1e-12 and abs(e.ey) < 1e-12 and abs(e.ez) < 1e-12


def test_bloch_vector_of_plus_i_state():
    state = prepared(1, [(math.pi / 2, math.pi / 2)])
    e = bloch_vector(state, 0)
    assert abs(e.ex) < 1e-12
    assert abs(e.ey - 1.0) < 1e-12
    assert abs(e.ez) < 1e-12


def test_bloch_vector_norm_bounds():
    rng = np.random.default_rng(17)
    for _ in range(50):
        n = int(rng.integers(1, 4))
        state = random_state(rng, n)
        e = bloch_vector(state, int(rng.integers(n)))
        assert e.norm() <= 1.0 + 1e-9
    # product states sit exactly on the sphere
    for _ in range(20):
        phi = rng.uniform(0, 2 * math.pi)
        theta = rng.uniform(0, math.pi)
        e = bloch_vector(prepared(1, [(phi, theta)]), 0)
        assert abs(e.norm() - 1.0) <= 1e-9
        assert abs(e.ex - math.sin(theta) * math.cos(phi)) < 1e-12
        assert abs(e.ey - math.sin(theta) * math.sin(phi)) < 1e-12
        assert abs(e.ez - math.cos(theta)) < 1e-12


def test_sampled_bloch_deterministic_outcome_is_exact():
    e = sampled_bloch_vector(StateVector.zero(1), 0, shots=37, seed=5)
    assert e.ez == 1.0


def test_sampled_bloch_converges_on_plus_state():
    state = apply_gate(StateVector.zero(1), Gate.ry(0, math.pi / 2))
    e = sampled_bloch_vector(state, 0, shots=100_000, seed=21)
    assert abs(e.ex - 1.0) <= 0.02
    # components are individually honest estimates in [-1, 1]
    assert all(abs(v) <= 1.0 for v in (e.ex, e.ey, e.ez))


def test_sampled_bloch_seed_determinism():
    state = prepared(1, [(0.7, 1.1)])
    a = sampled_bloch_vector(state, 0, shots=500, seed=123)
    b = sampled_bloch_vector(state, 0, shots=500, seed=123)
    assert a == b
    with pytest.raises(ArgumentError):
        sampled_bloch_vector(state, 0, shots=0, seed=1)


def test_sampled_bloch_statistics_midsphere():
    # theta = pi/3: <X> = sin(pi/3); binomial std ~ 0.0016 at 1e5 shots
    state = prepared(1, [(0.0, math.pi / 3)])
    e = sampled_bloch_vector(state, 0, shots=100_000, seed=8)
    assert abs(e.ex - math.sin(math.pi / 3)) < 0.01
    assert abs(e.ez - 0.5) < 0.01


# -- magnetization ----------------------------------------------------------------

def test_magnetization_all_up():
    assert magnetization(StateVector.zero(3)) == 1.0


def test_magnetization_cancellation():
    state = apply_gate(StateVector.zero(2), Gate.x(1))
    assert abs(magnetization(state)) < 1e-12


def test_magnetization_uniform_product():
    for n in (1, 2, 4):
        state = prepared(n, [(0.3, math.pi / 3)] * n)
        assert abs(magnetization(state) - 0.5) <= 1e-12


def test_sampled_magnetization_deterministic_and_close():
    state = prepared(3, [(0.1, math.pi / 3)] * 3)
    a = sampled_magnetization(state, shots=20_000, seed=4)
    b = sampled_magnetization(state, shots=20_000, seed=4)
    assert a == b
    assert abs(a - 0.5) < 0.02
