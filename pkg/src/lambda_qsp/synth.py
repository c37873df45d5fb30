"""State-preparation synthesizers.

* OSUN: R_y ladder where each multiplexed R_y is rewritten as one diagonal
  Lambda block between basis changes, followed by one Lambda for the phases.
* SUN: full Z-Y-Z multiplexed gates, three Lambda blocks per level.
* MOTT: ancilla-free multiplexed rotations with Gray-code CNOT ladders.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import circuit as ir
from .circuit import Circuit, Gate, GateKind, MetricsReport, RegisterLayout
from .diagonal import lambda_gates
from .parameters import (
    NORM_TOL,
    AmplitudeVector,
    diagonal_to_lambda,
    fwht,
    phase_angles,
    ry_angles,
    rz_block_phases,
    subtree_norms,
    zyz_angles,
)


class Method(Enum):
    OSUN = "osun"
    SUN = "sun"
    MOTT = "mott"


@dataclass(frozen=True)
class SynthesisOptions:
    apply_phases: bool = True  # False drops the final phase block (moduli only)
    prune_zero_phases: bool = False
    fanout: str = "chain"
    count_global_phase: bool = False


@dataclass(frozen=True)
class SynthesisResult:
    circuit: Circuit
    layout: RegisterLayout
    global_phase: float
    metrics: MetricsReport
    method: Method


def _result(gates: list[Gate], layout: RegisterLayout, gphase: float, method: Method, opts: SynthesisOptions):
    gates.append(ir.global_phase(gphase))
    circ = Circuit(layout, tuple(gates))
    return SynthesisResult(circ, layout, float(gphase), ir.counts(circ, opts.count_global_phase), method)


def _as_state(state) -> AmplitudeVector:
    return state if isinstance(state, AmplitudeVector) else AmplitudeVector.from_array(state)


def _basis_changed(target: int, block: list[Gate]) -> list[Gate]:
    # S H Rz(g) H S^dagger = Ry(g), so a diagonal block between these acts as a multiplexed R_y.
    return [ir.sdg(target), ir.h(target), *block, ir.h(target), ir.s(target)]


def prepare_osun(state, opts: SynthesisOptions | None = None) -> SynthesisResult:
    opts = opts or SynthesisOptions()
    state = _as_state(state)
    n = state.n
    layout = RegisterLayout.with_ancillae(n)
    ladder = ry_angles(state.moduli)
    gates: list[Gate] = [ir.ry(0, ladder.levels[0][0])]
    gphase = 0.0
    for j in range(2, n + 1):
        block, offset = diagonal_to_lambda(rz_block_phases(ladder.levels[j - 1]))
        gphase += offset
        lam = lambda_gates(j, block, layout, opts.prune_zero_phases, opts.fanout)
        gates += _basis_changed(j - 1, lam)
    if opts.apply_phases and not state.is_real_nonnegative():
        phases = phase_angles(state)
        gates += lambda_gates(n, phases, layout, opts.prune_zero_phases, opts.fanout)
        gphase += phases.global_phase
    return _result(gates, layout, gphase, Method.OSUN, opts)


def _completion(a0: complex, a1: complex, parent: float) -> np.ndarray:
    """SU(2) matrix whose first column is (a0, a1) / parent."""
    if parent < NORM_TOL:
        u0, u1 = 1.0 + 0j, 0j
    else:
        u0, u1 = a0 / parent, a1 / parent
    return np.array([[u0, -np.conj(u1)], [u1, np.conj(u0)]], dtype=complex)


def _level_blocks(state: AmplitudeVector) -> list[np.ndarray]:
    """Per level j, the Euler angles (rows alpha, beta, gamma, delta) of every 2x2 block."""
    norms = subtree_norms(state.moduli)
    n = state.n
    levels = []
    for j in range(1, n + 1):
        amps = state.c if j == n else norms[j]
        parents = norms[j - 1]
        angles = [
            zyz_angles(_completion(amps[2 * c], amps[2 * c + 1], parents[c])) for c in range(1 << (j - 1))
        ]
        levels.append(np.array(angles).T)
    return levels


def prepare_sun(state, opts: SynthesisOptions | None = None) -> SynthesisResult:
    opts = opts or SynthesisOptions()
    state = _as_state(state)
    n = state.n
    layout = RegisterLayout.with_ancillae(n)
    blocks = _level_blocks(state)
    alpha, beta, gamma, delta = (float(v[0]) for v in blocks[0])
    gates: list[Gate] = [ir.rz(0, delta), ir.ry(0, gamma), ir.rz(0, beta)]
    gphase = alpha
    for j in range(2, n + 1):
        alpha, beta, gamma, delta = blocks[j - 1]
        tgt = j - 1
        last_phases = rz_block_phases(beta) + np.repeat(alpha, 2)
        for phases, wrap in (
            (rz_block_phases(delta), False),
            (rz_block_phases(gamma), True),
            (last_phases, False),
        ):
            block, offset = diagonal_to_lambda(phases)
            gphase += offset
            lam = lambda_gates(j, block, layout, opts.prune_zero_phases, opts.fanout)
            gates += _basis_changed(tgt, lam) if wrap else lam
    return _result(gates, layout, gphase, Method.SUN, opts)


def multiplexed_rotation(kind: GateKind, target: int, angles: np.ndarray) -> list[Gate]:
    """Rotation on ``target`` controlled by wires 0..target-1, one angle per control value.

    Step i rotates by the Walsh coefficient at Gray code g_i, then a CNOT from the
    control whose bit changes between g_i and g_{i+1} flips the sign of later steps.
    """
    rot = ir.ry if kind is GateKind.RY else ir.rz
    k = target
    if k == 0:
        return [rot(target, float(angles[0]))]
    size = 1 << k
    coeffs = fwht(angles) / size
    gray = [i ^ (i >> 1) for i in range(size)]
    gates = []
    for i in range(size):
        changed = gray[i] ^ gray[(i + 1) % size]
        gates.append(rot(target, float(coeffs[gray[i]])))
        gates.append(ir.cnot(target - changed.bit_length(), target))
    return gates


def prepare_mott(state, opts: SynthesisOptions | None = None) -> SynthesisResult:
    opts = opts or SynthesisOptions()
    state = _as_state(state)
    n = state.n
    layout = RegisterLayout(n)
    ladder = ry_angles(state.moduli)
    gates: list[Gate] = []
    for k in range(n):
        gates += multiplexed_rotation(GateKind.RY, k, ladder.levels[k])
    gphase = 0.0
    if opts.apply_phases and not state.is_real_nonnegative():
        phases = np.where(np.abs(state.c) > NORM_TOL, np.angle(state.c), 0.0)
        omegas = []
        for _ in range(n):
            pairs = phases.reshape(-1, 2)
            omegas.append(pairs[:, 1] - pairs[:, 0])
            phases = pairs.mean(axis=1)
        gphase = float(phases[0])
        for k, omega in enumerate(reversed(omegas)):
            gates += multiplexed_rotation(GateKind.RZ, k, omega)
    return _result(gates, layout, gphase, Method.MOTT, opts)


_DISPATCH = {Method.OSUN: prepare_osun, Method.SUN: prepare_sun, Method.MOTT: prepare_mott}


def synthesize(state, method: Method | str, opts: SynthesisOptions | None = None) -> SynthesisResult:
    return _DISPATCH[Method(method)](state, opts)
