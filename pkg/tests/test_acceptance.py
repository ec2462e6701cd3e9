"""Acceptance suite: one test per release criterion, at the stated tolerances.

Each test prints a PASS/FAIL line (see conftest) so the suite doubles as a
release checklist. Tolerances are pinned here and must not be loosened.
"""

import json
import math
import time

import numpy as np
import pytest
from scipy.linalg import expm

import oracles
from qbrush import (CanvasImage, HslColor, Snapshot, StateVector, Stroke,
                    apply_updates, bloch_vector, load_png, magnetization,
                    run_circuit, save_png)
from qbrush.backends import BackendSession, BackendSpec
from qbrush.brushes import (AquarelaParams, HeisenParams, SmudgeParams,
                            cloning_constraint, heisen_color,
                            remap_singular_values, run_aquarela,
                            run_heisenbrush, run_smudge, solve_s1,
                            trotter_step_circuit, uaqc_circuit)
from qbrush.brushes.heisen import prep_circuit
from qbrush.brushes.params import SingularTriple
from qbrush.cli import main as cli_main
from qbrush.color import decode_bloch, encode_hl
from qbrush.sim import Circuit, Gate, GateKind, PauliVector, reduced_density


def exact_backend(seed=0):
    return BackendSession(BackendSpec(kind="exact"), seed)


def random_canvas_array(rng, width, height):
    px = rng.integers(0, 256, size=(height, width, 4), dtype=np.uint8)
    px[:, :, 3] = 255
    return CanvasImage(px)


def random_polyline(rng, width, height, n_points=3, margin=6):
    return [(float(rng.uniform(margin, width - margin)),
             float(rng.uniform(margin, height - margin)))
            for _ in range(n_points)]


# -- 1. gate oracle suite ------------------------------------------------------------

def test_acceptance_gate_oracle_suite():
    start = time.perf_counter()
    rng = np.random.default_rng(2024)
    kinds = list(GateKind)
    for kind in kinds:
        for _ in range(50):
            angle = float(rng.uniform(-2 * math.pi, 2 * math.pi))
            n = int(rng.integers(2, 4)) if kind in (
                GateKind.RXX, GateKind.RYY, GateKind.RZZ, GateKind.CNOT
            ) else int(rng.integers(1, 4))
            order = rng.permutation(n)
            if kind is GateKind.CNOT:
                gate = Gate.cnot(int(order[0]), int(order[1]),
                                 polarity=int(rng.integers(2)))
            elif kind in (GateKind.RXX, GateKind.RYY, GateKind.RZZ):
                gate = Gate(kind, (int(order[0]), int(order[1])), angle)
            elif kind is GateKind.X:
                gate = Gate.x(int(order[0]))
            else:
                gate = Gate(kind, (int(order[0]),), angle)
                if n >= 2 and rng.random() < 0.5:
                    gate = gate.controlled_by(int(order[1]),
                                              int(rng.integers(2)))
            amps = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
            state = StateVector(n, amps / np.linalg.norm(amps))
            from qbrush import apply_gate
            got = apply_gate(state, gate)
            want = oracles.gate_matrix(n, gate.kind.value, list(gate.targets),
                                       gate.angle, list(gate.controls)) @ state.amps
            assert np.max(np.abs(got.amps - want)) <= 1e-10
    assert time.perf_counter() - start < 5.0


# -- 2. trotter order ----------------------------------------------------------------

def test_acceptance_trotter_order():
    start = time.perf_counter()
    color = HslColor(0.6, 0.6, 0.4)
    t_total = 1.0
    for n in (2, 3):
        ham = oracles.heisenberg_hamiltonian(n)
        one = oracles.prep_state(2 * math.pi * color.h, math.pi * color.l)
        psi0 = np.array([1.0 + 0j])
        for _ in range(n):
            psi0 = np.kron(one, psi0)
        mz_exact = oracles.mean_z(expm(-1j * ham * t_total) @ psi0, n)
        errors = []
        for dt in (0.1, 0.05, 0.025):
            state = run_circuit(StateVector.zero(n), prep_circuit(n, color))
            step = trotter_step_circuit(n, dt)
            for _ in range(round(t_total / dt)):
                state = run_circuit(state, step)
            errors.append(abs(magnetization(state) - mz_exact))
        for coarse, fine in zip(errors, errors[1:]):
            assert 1.6 <= coarse / fine <= 2.4
    assert time.perf_counter() - start < 10.0


# -- 3. gamma = 0 vanishing effect ------------------------------------------------------

def test_acceptance_gamma_zero_vanishing_effect():
    start = time.perf_counter()
    rng = np.random.default_rng(7)
    canvas = random_canvas_array(rng, 96, 96)
    snap = Snapshot(snapshot_id="s", image=canvas)
    brush_color = HslColor(0.7, 0.8, 0.6)
    for trial in range(20):
        pts = random_polyline(rng, 96, 96)
        radius = float(rng.uniform(1.5, 3.0))
        stroke = Stroke(points=pts, radius=radius, brush_kind="aquarela")

        out = run_aquarela(snap, stroke, AquarelaParams(
            brush_color=brush_color, gamma=0.0,
            n_segments=int(rng.integers(1, 4))), exact_backend(trial))
        assert len(apply_updates(snap, out.updates, out.masks)) == 0

        out = run_heisenbrush(snap, [stroke], HeisenParams(
            mode="continuous", user_color=brush_color, gamma=0.0,
            n_steps=int(rng.integers(1, 5))), exact_backend(trial))
        assert len(apply_updates(snap, out.updates, out.masks)) == 0

        n_disc = int(rng.integers(1, 4))
        disc = [Stroke(points=random_polyline(rng, 96, 96), radius=radius,
                       brush_kind="heisen_discrete") for _ in range(n_disc)]
        out = run_heisenbrush(snap, disc, HeisenParams(
            mode="discrete", user_color=brush_color, gamma=0.0,
            n_steps=n_disc), exact_backend(trial))
        assert len(apply_updates(snap, out.updates, out.masks)) == 0

        n_smudge = int(rng.integers(1, 4))
        smudges = [Stroke(points=random_polyline(rng, 96, 96), radius=radius,
                          brush_kind="smudge") for _ in range(n_smudge)]
        out = run_smudge(snap, smudges, SmudgeParams(
            control=int(rng.integers(2)), gamma=0.0, n_strokes=n_smudge),
            exact_backend(trial))
        assert len(apply_updates(snap, out.updates, out.masks)) == 0
    assert time.perf_counter() - start < 10.0


# -- 4. smudge endpoints -----------------------------------------------------------------

def test_acceptance_smudge_endpoints():
    rng = np.random.default_rng(12)
    canvas = random_canvas_array(rng, 64, 64)
    snap = Snapshot(snapshot_id="s", image=canvas)
    strokes = [Stroke(points=[(6.0, 8.0 + 14 * i), (56.0, 8.0 + 14 * i)],
                      radius=2.5, brush_kind="smudge") for i in range(3)]
    for control, target_l in ((0, 0.0), (1, 1.0)):
        out = run_smudge(snap, strokes, SmudgeParams(
            control=control, gamma=math.pi, n_strokes=3), exact_backend())
        assert abs(out.updates[0].new_l - target_l) <= 1e-9
    out = run_smudge(snap, strokes, SmudgeParams(control=0, gamma=0.0,
                                                 n_strokes=3), exact_backend())
    assert len(apply_updates(snap, out.updates, out.masks)) == 0


# -- 5. uaqc anchors ----------------------------------------------------------------------

def test_acceptance_uaqc_anchors():
    assert abs(solve_s1(2.0 / 3.0) - 2.0 / 3.0) <= 1e-12
    for s0 in np.arange(0.1, 1.0 + 1e-9, 0.1):
        assert cloning_constraint(float(s0), solve_s1(float(s0))) <= 1e-12
    rng = np.random.default_rng(17)
    for _ in range(20):
        from qbrush import BlochAngles
        angles = BlochAngles(phi=float(rng.uniform(0, 2 * math.pi)),
                             theta=float(rng.uniform(0, math.pi)))
        state = run_circuit(StateVector.zero(3),
                            uaqc_circuit(angles, 2 / 3, 2 / 3))
        psi = oracles.prep_state(angles.phi, angles.theta)
        for qubit in (0, 2):
            rho = reduced_density(state, qubit)
            fidelity = float((psi.conj() @ rho @ psi).real)
            assert abs(fidelity - 5.0 / 6.0) <= 1e-9


# -- 6. collage mapping bullets --------------------------------------------------------------

def test_acceptance_collage_mapping_bullets():
    rng = np.random.default_rng(23)
    for _ in range(100):
        s = np.sort(rng.uniform(0.01, 50.0, size=3))[::-1]
        triple = SingularTriple(s_values=s, u_vectors=np.eye(3),
                                v_vectors=np.eye(3))
        logs = np.log(s)
        direction = logs / np.linalg.norm(logs)
        recovered = remap_singular_values(PauliVector(*direction), triple)
        assert np.max(np.abs(recovered - s)) <= 1e-9
        flat = remap_singular_values(PauliVector(0.0, 0.0, 0.0), triple)
        assert np.all(flat == triple.mean)


# -- 7. codec round trip ------------------------------------------------------------------

def test_acceptance_codec_round_trip():
    rng = np.random.default_rng(29)
    for _ in range(10_000):
        h = float(rng.uniform(0.0, 1.0))
        l = float(rng.uniform(1e-3, 1.0 - 1e-3))
        angles = encode_hl(HslColor(h, 1.0, l))
        state = StateVector.zero(1)
        from qbrush import apply_gate
        state = apply_gate(state, Gate.ry(0, angles.theta))
        state = apply_gate(state, Gate.rz(0, angles.phi))
        got_h, got_l = decode_bloch(bloch_vector(state, 0), fallback_hue=0.5)
        error_h = min(abs(got_h - h), 1.0 - abs(got_h - h))
        assert error_h <= 1e-9
        assert abs(got_l - l) <= 1e-9


# -- 8. brute-force equivalence ---------------------------------------------------------------

def test_acceptance_bruteforce_aquarela():
    rng = np.random.default_rng(31)
    for _ in range(50):
        n = int(rng.integers(1, 4))
        seg_hl = [(float(rng.uniform(0, 1)), float(rng.uniform(0.02, 0.98)))
                  for _ in range(n)]
        brush_hl = (float(rng.uniform(0, 1)), float(rng.uniform(0, 1)))
        gamma = float(rng.uniform(0, 1))
        from qbrush import BlochAngles
        from qbrush.brushes import aquarela_circuit
        seg = [BlochAngles(2 * math.pi * h, math.pi * l) for h, l in seg_hl]
        brush = BlochAngles(2 * math.pi * brush_hl[0], math.pi * brush_hl[1])
        state = run_circuit(StateVector.zero(n + 1),
                            aquarela_circuit(seg, brush, gamma))
        want = oracles.aquarela_colors(seg_hl, brush_hl, gamma)
        for q in range(n):
            got = decode_bloch(bloch_vector(state, q),
                               fallback_hue=seg_hl[q][0])
            assert abs(got[0] - want[q][0]) <= 1e-9
            assert abs(got[1] - want[q][1]) <= 1e-9


def test_acceptance_bruteforce_smudge():
    rng = np.random.default_rng(37)
    from qbrush.brushes import smudge_circuit
    for _ in range(50):
        n = int(rng.integers(1, 4))
        hl = [(float(rng.uniform(0, 1)), float(rng.uniform(0.02, 0.98)))
              for _ in range(n)]
        gamma = float(rng.uniform(0, math.pi))
        control = int(rng.integers(2))
        angles = [encode_hl(HslColor(h, 1.0, l)) for h, l in hl]
        state = run_circuit(StateVector.zero(n + 1),
                            smudge_circuit(angles, gamma, control))
        want = oracles.smudge_colors(hl, gamma, control)
        for q in range(n):
            got = decode_bloch(bloch_vector(state, q), fallback_hue=hl[q][0])
            assert abs(got[0] - want[q][0]) <= 1e-9
            assert abs(got[1] - want[q][1]) <= 1e-9


def test_acceptance_bruteforce_heisen():
    rng = np.random.default_rng(41)
    for _ in range(50):
        n_qubits = int(rng.integers(1, 5))
        n_steps = int(rng.integers(1, 6))
        gamma = float(rng.uniform(0.05, 1.0))
        user = HslColor(float(rng.uniform(0, 1)), float(rng.uniform(0, 1)),
                        float(rng.uniform(0, 1)))
        state = run_circuit(StateVector.zero(n_qubits),
                            prep_circuit(n_qubits, user))
        step = trotter_step_circuit(n_qubits, 0.1)
        series = []
        for _ in range(n_steps):
            state = run_circuit(state, step)
            series.append(magnetization(state))
        want = oracles.heisen_series((user.h, user.l), n_qubits, n_steps)
        for m_got, m_want in zip(series, want):
            assert abs(m_got - m_want) <= 1e-9
            got_c = heisen_color(user, m_got, gamma)
            want_c = [oracles.heisen_blend(v, m_want, gamma)
                      for v in (user.h, user.s, user.l)]
            assert abs(got_c.h - want_c[0]) <= 1e-9
            assert abs(got_c.s - want_c[1]) <= 1e-9
            assert abs(got_c.l - want_c[2]) <= 1e-9


def test_acceptance_bruteforce_collage():
    rng = np.random.default_rng(43)
    for _ in range(50):
        from qbrush import BlochAngles
        s = np.sort(rng.uniform(0.05, 20.0, size=3))[::-1]
        triple = SingularTriple(s_values=s, u_vectors=np.eye(3),
                                v_vectors=np.eye(3))
        logs = np.log(s)
        angles = BlochAngles(
            phi=math.atan2(logs[1], logs[0]) % (2 * math.pi),
            theta=math.atan2(math.hypot(logs[0], logs[1]), logs[2]),
        )
        s0 = float(rng.uniform(0.2, 1.0))
        s1 = solve_s1(s0)
        state = run_circuit(StateVector.zero(3), uaqc_circuit(angles, s0, s1))
        psi_oracle = oracles.uaqc_state(angles.phi, angles.theta, s0, s1)
        for qubit in (0, 2):
            got_e = bloch_vector(state, qubit)
            want_e = oracles.bloch_of(psi_oracle, 3, qubit)
            got_s = remap_singular_values(got_e, triple)
            # independent remap: the formula re-derived inline
            vec = np.array(want_e)
            norm = np.linalg.norm(vec)
            if norm > 1.0:
                vec, norm = vec / norm, 1.0
            if norm < 1e-15:
                want_s = np.full(3, s.mean())
            else:
                want_s = norm * np.exp(
                    (np.linalg.norm(logs) / norm) * vec) + (1 - norm) * s.mean()
            assert np.max(np.abs(got_s - want_s)) <= 1e-9


# -- 9. end-to-end determinism -----------------------------------------------------------------

def _ten_entry_script():
    def color(h, s, l):
        return {"h": h, "s": s, "l": l}

    entries = []
    for i in range(4):
        entries.append({
            "brush_kind": "aquarela",
            "params": {"color": color(0.1 + 0.2 * i, 0.8, 0.55),
                       "gamma": 0.6 + 0.1 * i, "n_segments": 2 + i},
            "points": [{"x": 10 + 20 * i, "y": 12}, {"x": 30 + 20 * i, "y": 200}],
            "radius": 3.0,
            "backend": {"kind": "sampling", "shots": 128},
            "seed": 100 + i,
        })
    entries.append({
        "brush_kind": "heisen_continuous",
        "params": {"color": color(0.55, 0.9, 0.45), "gamma": 1.0,
                   "n_steps": 6, "n_qubits": 4},
        "points": [{"x": 12, "y": 220}, {"x": 240, "y": 230}],
        "radius": 4.0,
        "backend": {"kind": "exact"},
        "seed": 200,
    })
    entries.append({
        "brush_kind": "heisen_discrete",
        "params": {"color": color(0.8, 0.7, 0.5), "n_qubits": 3,
                   "gamma": 0.9},
        "points": [{"x": 20, "y": 20, "path": 0}, {"x": 60, "y": 20, "path": 0},
                   {"x": 20, "y": 40, "path": 1}, {"x": 60, "y": 40, "path": 1}],
        "radius": 2.5,
        "backend": {"kind": "noisy", "shots": 256,
                    "noise": {"p_depolarize_1q": 0.01,
                              "p_depolarize_2q": 0.02, "seed": 9}},
        "seed": 300,
    })
    entries.append({
        "brush_kind": "smudge",
        "params": {"control": 0, "gamma": 1.4},
        "points": [{"x": 100, "y": 100, "path": 0},
                   {"x": 160, "y": 100, "path": 0},
                   {"x": 100, "y": 130, "path": 1},
                   {"x": 160, "y": 130, "path": 1}],
        "radius": 3.5,
        "backend": {"kind": "sampling", "shots": 512},
        "seed": 400,
    })
    entries.append({
        "brush_kind": "smudge",
        "params": {"control": 1, "gamma": 2.0},
        "points": [{"x": 200, "y": 60, "path": 0},
                   {"x": 240, "y": 90, "path": 0}],
        "radius": 2.0,
        "backend": {"kind": "exact"},
        "seed": 500,
    })
    entries.append({
        "brush_kind": "collage",
        "params": {"s0": 2.0 / 3.0, "paste_origin": {"x": 140, "y": 150}},
        "points": [{"x": 30, "y": 30}, {"x": 90, "y": 30},
                   {"x": 90, "y": 80}, {"x": 30, "y": 80}],
        "radius": 1.0,
        "backend": {"kind": "exact"},
        "seed": 600,
    })
    entries.append({
        "brush_kind": "collage",
        "params": {"s0": 0.9, "paste_origin": {"x": 150, "y": 20}},
        "points": [{"x": 10, "y": 120}, {"x": 70, "y": 125},
                   {"x": 60, "y": 170}, {"x": 15, "y": 165}],
        "radius": 1.0,
        "backend": {"kind": "sampling", "shots": 2048},
        "seed": 700,
    })
    assert len(entries) == 10
    return {"version": 1, "strokes": entries}


def test_acceptance_end_to_end_determinism(tmp_path):
    rng = np.random.default_rng(47)
    canvas = random_canvas_array(rng, 256, 256)
    img = tmp_path / "in.png"
    img.write_bytes(save_png(canvas))
    script = tmp_path / "script.json"
    script.write_text(json.dumps(_ten_entry_script()))
    outputs = []
    for name in ("one.png", "two.png"):
        out = tmp_path / name
        start = time.perf_counter()
        code = cli_main(["apply", "--image", str(img), "--script", str(script),
                         "--out", str(out)])
        elapsed = time.perf_counter() - start
        assert code == 0
        assert elapsed < 5.0
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1]
    assert outputs[0] != save_png(canvas)  # the script does paint


# -- 10. performance ------------------------------------------------------------------------

def test_acceptance_heisenbrush_performance():
    canvas = CanvasImage.blank(256, 256)
    snap = Snapshot(snapshot_id="s", image=canvas)
    stroke = Stroke(points=[(10.0, 128.0), (250.0, 128.0)], radius=10.0,
                    brush_kind="heisen_continuous")
    params = HeisenParams(mode="continuous",
                          user_color=HslColor(0.3, 0.8, 0.45), gamma=1.0,
                          n_steps=10, n_qubits=10)
    backend = exact_backend()
    start = time.perf_counter()
    outcome = run_heisenbrush(snap, [stroke], params, backend)
    apply_updates(snap, outcome.updates, outcome.masks)
    elapsed = time.perf_counter() - start
    assert len(outcome.updates) == 10
    assert elapsed < 0.2
