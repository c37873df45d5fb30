import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lambda_qsp import circuit as ir
from lambda_qsp.bench import verify
from lambda_qsp.circuit import Circuit, GateKind, RegisterLayout, counts
from lambda_qsp.parameters import AmplitudeVector, ry_angles
from lambda_qsp.simulator import simulate
from lambda_qsp.states import gen_state, parse_family
from lambda_qsp.synth import (
    Method,
    SynthesisOptions,
    SynthesisResult,
    multiplexed_rotation,
    prepare_mott,
    synthesize,
)
from oracles import circuit_unitary, multiplexed_ry_matrix, random_state

METHODS = [m.value for m in Method]
S2 = 1 / math.sqrt(2)


def _check(state, method, opts=None):
    target = AmplitudeVector.from_array(state)
    report = verify(target, synthesize(target, method, opts))
    assert report.passed, report
    assert report.trace_distance <= 1e-5
    return report


@pytest.mark.parametrize("method", METHODS)
@pytest.mark.parametrize("state", [[1, 0], [0, 1], [S2, S2], [S2, -1j * S2], [0, 0, 0, 1.0], [0.5j, -0.5, 0.5, 0.5]])
def test_small_states(method, state):
    _check(state, method)


@pytest.mark.parametrize("method", METHODS)
@pytest.mark.parametrize("kind", ["complex", "pos", "neg"])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_random_states(method, kind, n, rng):
    _check(random_state(rng, n, kind), method)


@settings(max_examples=25)
@given(st.sampled_from(METHODS), st.integers(1, 4), st.integers(0, 2**32 - 1), st.floats(0, 0.8))
def test_random_sparse_states(method, n, seed, zero_frac):
    rng = np.random.default_rng(seed)
    c = random_state(rng, n)
    c[rng.random(c.size) < zero_frac] = 0
    if not c.any():
        c[-1] = 1.0
    _check(c / np.linalg.norm(c), method)


@pytest.mark.parametrize("method", METHODS)
def test_global_phase_gate_closes_circuit(method, rng):
    res = synthesize(random_state(rng, 3), method)
    last = res.circuit.gates[-1]
    assert last.kind is GateKind.GLOBAL_PHASE and last.angle == res.global_phase
    assert isinstance(res, SynthesisResult) and res.method is Method(method)


@pytest.mark.parametrize("method", METHODS)
@pytest.mark.parametrize("n", [2, 3, 5, 7])
def test_metrics_depend_on_class_only(method, n):
    ref = synthesize(gen_state(parse_family("random_complex", n, 0)), method).metrics
    for seed in range(1, 6):
        for fam in ("random_complex", "random_real_neg", "random_complex_sparse"):
            assert synthesize(gen_state(parse_family(fam, n, seed)), method).metrics == ref
    real = synthesize(gen_state(parse_family("random_real_pos", n, 0)), method).metrics
    for seed in range(1, 6):
        assert synthesize(gen_state(parse_family("random_real_pos_sparse", n, seed)), method).metrics == real


@pytest.mark.parametrize("n", range(2, 8))
def test_osun_dominates_sun(n, rng):
    c = random_state(rng, n)
    o, s = synthesize(c, "osun").metrics, synthesize(c, "sun").metrics
    assert o.depth < s.depth and o.total_gates < s.total_gates and o.cnot < s.cnot


@pytest.mark.parametrize("n", range(2, 8))
def test_real_positive_path_omits_phase_block(n, rng):
    m = synthesize(random_state(rng, n, "pos"), "osun").metrics
    assert m.by_kind["phase"] == sum((1 << j) - 1 for j in range(2, n + 1))
    forced = synthesize(random_state(rng, n, "complex"), "osun", SynthesisOptions(apply_phases=False)).metrics
    assert forced == m


def test_no_phase_option_prepares_moduli(rng):
    c = random_state(rng, 3)
    res = synthesize(c, "osun", SynthesisOptions(apply_phases=False))
    assert verify(AmplitudeVector.from_array(np.abs(c)), res).passed


@pytest.mark.parametrize("method", METHODS)
def test_corrupted_circuit_fails_verification(method, rng):
    target = AmplitudeVector.from_array(random_state(rng, 3))
    res = synthesize(target, method)
    gates = list(res.circuit.gates)
    idx = next(i for i, g in enumerate(gates) if g.kind is GateKind.RY)
    gates[idx] = ir.Gate(gates[idx].kind, gates[idx].wires, gates[idx].angle + 0.1)
    broken = Circuit(res.layout, tuple(gates))
    bad = SynthesisResult(broken, res.layout, res.global_phase, res.metrics, res.method)
    report = verify(target, bad)
    assert not report.passed and report.fidelity < 1 - 1e-6


@pytest.mark.parametrize("fanout", ["chain", "doubling"])
def test_fanout_and_pruning_preserve_state(fanout, rng):
    c = random_state(rng, 4)
    _check(c, "osun", SynthesisOptions(fanout=fanout, prune_zero_phases=True))
    _check(c, "sun", SynthesisOptions(fanout=fanout))


def test_pruning_shrinks_named_states():
    ghz = gen_state(parse_family("ghz", 4))
    full = synthesize(ghz, "osun").metrics
    pruned = synthesize(ghz, "osun", SynthesisOptions(prune_zero_phases=True)).metrics
    assert pruned.by_kind["phase"] < full.by_kind["phase"]
    _check(ghz.c, "osun", SynthesisOptions(prune_zero_phases=True))


def test_sun_series_points(rng):
    m = synthesize(random_state(rng, 2), "sun").metrics
    assert (m.depth, m.total_gates, m.cnot) == (60, 70, 54)
    m = synthesize(random_state(rng, 5), "sun").metrics
    assert (m.depth, m.cnot) == (360, 570)


def test_mott_n10_metrics(rng):
    m = prepare_mott(random_state(rng, 10)).metrics
    assert (m.depth, m.total_gates, m.cnot) == (4072, 4090, 2044)


@pytest.mark.parametrize("name", ["bell_phi_plus", "bell_phi_minus", "bell_psi_plus", "bell_psi_minus"])
def test_bell_states_all_methods(name):
    state = gen_state(parse_family(name, 2))
    for method in METHODS:
        _check(state.c, method)


def test_bell_metrics():
    plus = synthesize(gen_state(parse_family("bell_phi_plus", 2)), "osun").metrics
    minus = synthesize(gen_state(parse_family("bell_psi_minus", 2)), "osun").metrics
    assert (plus.depth, plus.total_gates, plus.cnot) == (20, 26, 18)
    assert (minus.depth, minus.total_gates, minus.cnot) == (39, 47, 36)


@given(st.integers(0, 3), st.integers(0, 2**32 - 1))
def test_multiplexed_ry_matches_block_diagonal(k, seed):
    angles = np.random.default_rng(seed).uniform(-math.pi, math.pi, 1 << k)
    c = Circuit(RegisterLayout(k + 1), tuple(multiplexed_rotation(GateKind.RY, k, angles)))
    assert np.allclose(circuit_unitary(c), multiplexed_ry_matrix(angles), atol=1e-10)


def test_multiplexed_rotation_cost():
    gates = multiplexed_rotation(GateKind.RZ, 3, np.zeros(8))
    m = counts(Circuit(RegisterLayout(4), tuple(gates)))
    assert m.cnot == 8 and m.by_kind["rz"] == 8


def test_mott_uses_no_ancillae(rng):
    res = prepare_mott(random_state(rng, 4))
    assert res.layout == RegisterLayout(4) and res.circuit.width == 4


def test_osun_first_gate_is_root_rotation(rng):
    c = random_state(rng, 3)
    res = synthesize(c, "osun")
    assert res.circuit.gates[0] == ir.ry(0, ry_angles(np.abs(c)).levels[0][0])
    assert res.layout == RegisterLayout.with_ancillae(3)


def test_synthesize_accepts_method_enum_and_rejects_unknown(rng):
    c = random_state(rng, 2)
    assert synthesize(c, Method.SUN).method is Method.SUN
    with pytest.raises(ValueError):
        synthesize(c, "qiskit")


def test_deterministic_circuits(rng):
    c = random_state(rng, 4)
    for method in METHODS:
        assert synthesize(c, method).circuit == synthesize(c, method).circuit


def test_simulated_state_includes_global_phase(rng):
    c = random_state(rng, 3)
    res = synthesize(c, "mott")
    assert np.allclose(simulate(res.circuit).amps, c, atol=1e-10)
