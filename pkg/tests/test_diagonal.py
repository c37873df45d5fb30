import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lambda_qsp.circuit import Circuit, CircuitError, GateKind, RegisterLayout, counts, depth
from lambda_qsp.diagonal import build_copy_tree, build_lambda, prefix_width, schedule_labels
from lambda_qsp.simulator import StateVector, simulate, simulate_batch


def _random_theta(rng, n):
    return np.concatenate([[0.0], rng.uniform(-2 * np.pi, 2 * np.pi, (1 << n) - 1)])


def _basis_columns(n):
    """Columns |x>|0^{2n}> for every input x."""
    cols = np.zeros((1 << (3 * n), 1 << n), dtype=complex)
    for x in range(1 << n):
        cols[x << (2 * n), x] = 1.0
    return cols


def _expected(n, theta):
    out = np.zeros((1 << (3 * n), 1 << n), dtype=complex)
    for x in range(1 << n):
        out[x << (2 * n), x] = np.exp(1j * theta[x])
    return out


# schedule

@pytest.mark.parametrize("n", range(1, 11))
def test_schedule_covers_every_nonzero_label_once(n):
    sched = schedule_labels(n, n)
    labels = sched.labels()
    assert sorted(labels) == list(range(1, 1 << n))
    assert len(sched.sequences) == n


@pytest.mark.parametrize("n", range(1, 11))
def test_schedule_gray_property(n):
    for j, seq in enumerate(schedule_labels(n, n).sequences):
        steps = list(seq) if j else [0, *seq]
        for a, b in zip(steps, steps[1:]):
            assert bin(a ^ b).count("1") == 1


@pytest.mark.parametrize("n", range(1, 11))
def test_schedule_flips_match_labels(n):
    sched = schedule_labels(n, n)
    for j in range(sched.n_active):
        label = sched.initial[j]
        for wire, nxt in zip(sched.flips[j], sched.sequences[j][1 if j else 0 :]):
            label ^= 1 << (n - 1 - wire)
            assert label == nxt


@pytest.mark.parametrize("n", range(1, 11))
def test_schedule_shape(n):
    sched = schedule_labels(n, n)
    t = prefix_width(n)
    assert sched.n_active == 1 << t
    lengths = [len(s) for s in sched.sequences]
    assert lengths[0] == (1 << (n - t)) - 1
    assert all(l == 1 << (n - t) for l in lengths[1 : 1 << t])
    assert all(l == 0 for l in lengths[1 << t :])


def test_schedule_small_cases():
    assert schedule_labels(1, 1).sequences == ((1,),)
    assert schedule_labels(2, 2).sequences == ((0b01,), (0b10, 0b11))


def test_schedule_deterministic_and_checked():
    assert schedule_labels(7, 7) == schedule_labels(7, 7)
    with pytest.raises(CircuitError):
        schedule_labels(3, 2)


# copy trees

def _apply_classically(gates, bits):
    bits = dict(bits)
    for g in gates:
        c, t = g.wires
        bits[t] ^= bits[c]
    return bits


def test_copy_tree_single_dest():
    gates = build_copy_tree([0], [1])
    assert len(gates) == 1 and depth(gates) == 1


def test_copy_tree_doubling_depth():
    gates = build_copy_tree([0], [1, 2, 3], mode="doubling")
    assert len(gates) == 3 and depth(gates) == 2
    assert depth(build_copy_tree([0], [1, 2, 3], mode="chain")) == 3


@pytest.mark.parametrize("mode", ["chain", "doubling"])
@pytest.mark.parametrize("nsrc,ndst", [(1, 1), (1, 3), (1, 7), (2, 4), (3, 6), (2, 5)])
def test_copy_tree_copies_assigned_bits(mode, nsrc, ndst):
    src = list(range(nsrc))
    dst = list(range(nsrc, nsrc + ndst))
    gates = build_copy_tree(src, dst, mode)
    for value in range(1 << nsrc):
        start = {w: (value >> i) & 1 for i, w in enumerate(src)} | {w: 0 for w in dst}
        out = _apply_classically(gates, start)
        for i, d in enumerate(dst):
            assert out[d] == start[src[i % nsrc]]
        assert _apply_classically(gates[::-1], out) == start


@pytest.mark.parametrize("copies", [1, 2, 3, 4, 7, 8])
def test_copy_tree_doubling_depth_bound(copies):
    gates = build_copy_tree([0], list(range(1, copies + 1)), mode="doubling")
    assert depth(gates) <= int(np.ceil(np.log2(copies + 1)))


def test_copy_tree_errors():
    with pytest.raises(CircuitError):
        build_copy_tree([0, 1], [1, 2])
    with pytest.raises(CircuitError):
        build_copy_tree([0], [1], mode="star")


# Lambda circuits

@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_lambda_matches_diagonal_on_basis_states(n, rng):
    theta = _random_theta(rng, n)
    out = simulate_batch(build_lambda(n, theta), _basis_columns(n))
    assert np.max(np.abs(out - _expected(n, theta))) < 1e-10


@pytest.mark.parametrize("fanout", ["chain", "doubling"])
@pytest.mark.parametrize("n", [2, 3, 5])
def test_lambda_fanout_variants_agree(n, fanout, rng):
    theta = _random_theta(rng, n)
    out = simulate_batch(build_lambda(n, theta, fanout=fanout), _basis_columns(n))
    assert np.max(np.abs(out - _expected(n, theta))) < 1e-10


def test_lambda_zero_phases_is_identity():
    out = simulate_batch(build_lambda(3, np.zeros(8)), _basis_columns(3))
    assert np.allclose(out, _basis_columns(3))


@pytest.mark.parametrize("n", range(1, 9))
def test_lambda_structure(n):
    c = build_lambda(n, np.zeros(1 << n))
    m = counts(c)
    assert m.by_kind["phase"] == (1 << n) - 1
    assert m.cnot + m.by_kind["phase"] == m.total_gates
    phased = [g.wires[0] for g in c.gates if g.kind is GateKind.PHASE]
    assert set(phased) <= set(c.layout.phase_wires)


def test_lambda_prune_zero_phases():
    theta = np.zeros(8)
    theta[7] = 0.5  # a single corner has a dense spectrum
    assert counts(build_lambda(3, theta, prune_zero_phases=True)).by_kind["phase"] == 7
    assert counts(build_lambda(3, np.zeros(8), prune_zero_phases=True)).by_kind["phase"] == 0
    theta = np.array([0, 1.0, 0, 1.0, 0, 1.0, 0, 1.0])  # depends on the last bit only
    pruned = build_lambda(3, theta, prune_zero_phases=True)
    assert counts(pruned).by_kind["phase"] == 1
    out = simulate_batch(pruned, _basis_columns(3))
    assert np.max(np.abs(out - _expected(3, theta))) < 1e-10


def test_lambda_embeds_in_larger_layout(rng):
    theta = _random_theta(rng, 2)
    lay = RegisterLayout.with_ancillae(4)
    c = build_lambda(2, theta, lay)
    for x in range(16):
        out = simulate(c, StateVector.basis(12, x << 8))
        assert abs(out.amps[x << 8] - np.exp(1j * theta[x >> 2])) < 1e-12


def test_lambda_deterministic(rng):
    theta = _random_theta(rng, 4)
    assert build_lambda(4, theta) == build_lambda(4, theta)


def test_lambda_errors():
    with pytest.raises(CircuitError):
        build_lambda(3, np.zeros(8), RegisterLayout(3, 2, 3))
    with pytest.raises(CircuitError):
        build_lambda(3, np.zeros(4), RegisterLayout.with_ancillae(3))
    with pytest.raises(ValueError):
        build_lambda(2, [0.1, 0, 0, 0])


@given(st.integers(1, 5), st.integers(0, 2**32 - 1))
def test_lambda_on_random_superposition(n, seed):
    rng = np.random.default_rng(seed)
    theta = _random_theta(rng, n)
    psi = rng.standard_normal(1 << n) + 1j * rng.standard_normal(1 << n)
    psi /= np.linalg.norm(psi)
    full = np.zeros(1 << (3 * n), dtype=complex)
    full[np.arange(1 << n) << (2 * n)] = psi
    out = simulate(build_lambda(n, theta), StateVector(3 * n, full)).amps
    expect = np.zeros_like(full)
    expect[np.arange(1 << n) << (2 * n)] = psi * np.exp(1j * theta)
    assert np.max(np.abs(out - expect)) < 1e-10
    mask = np.ones(out.size, bool)
    mask[np.arange(1 << n) << (2 * n)] = False
    assert float(np.sum(np.abs(out[mask]) ** 2)) < 1e-20


def test_lambda_depth_scaling():
    measured = {n: depth(build_lambda(n, np.zeros(1 << n))) for n in range(2, 11)}

    def basis(n):
        return [np.log2(2 * n), 2**n / (2 * n), 1.0]

    fit = [2, 3, 4]
    coef = np.linalg.solve(np.array([basis(n) for n in fit]), [measured[n] for n in fit])
    for n in range(5, 11):
        assert measured[n] <= 1.1 * float(np.dot(basis(n), coef)), (n, measured[n], coef)
