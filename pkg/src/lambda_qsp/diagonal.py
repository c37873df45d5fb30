"""Ancilla-parallel circuit for diagonal unitaries Lambda_n(theta) = diag(1, e^{i theta_1}, ...).

The construction uses n copy wires and n phase wires and runs in five stages:

1. prefix copy: fan the first t = floor(log2 n) input bits out onto the copy wires;
2. gray initial: phase wire j collects the parity of the prefix bits selected by
   the binary digits of j, then gets its first phase;
3. undo the prefix copy and fan the remaining r = n - t suffix bits out instead;
4. gray path: every phase wire walks a reflected Gray code over the suffix bits,
   one CNOT and one phase per step (the upper half of the wires walks the code
   with its bit order reversed);
5. replay every CNOT in reverse to restore all ancillae.

Every phase wire j visits the labels ``prefix(j) xor h`` for all suffix states h, so
the 2**t wires jointly cover each nonzero parity label exactly once.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .circuit import Circuit, CircuitError, Gate, GateKind, RegisterLayout, cnot, phase
from .parameters import PhaseVector, walsh_spectrum

PRUNE_TOL = 1e-12


def prefix_width(n: int) -> int:
    return n.bit_length() - 1


def _trailing_zeros(p: int) -> int:
    return (p & -p).bit_length() - 1


@dataclass(frozen=True)
class GraySchedule:
    """Parity labels visited by each phase wire, in order.

    Labels are integers over the n input bits with wire 0 as the most significant
    bit. ``flips[j][i]`` is the input wire toggled by Gray-path step ``i`` of phase
    wire ``j``; ``initial[j]`` is the label loaded during the gray initial stage.
    """

    n: int
    prefix_width: int
    initial: tuple[int, ...]
    flips: tuple[tuple[int, ...], ...]
    sequences: tuple[tuple[int, ...], ...]

    @property
    def n_active(self) -> int:
        return 1 << self.prefix_width

    def labels(self) -> list[int]:
        return [s for seq in self.sequences for s in seq]


def schedule_labels(n: int, n_phase: int) -> GraySchedule:
    if n < 1:
        raise CircuitError(f"need n >= 1, got {n}")
    if n_phase != n:
        raise CircuitError(f"schedule is defined for n_phase = n, got n={n}, n_phase={n_phase}")
    t = prefix_width(n)
    r = n - t
    active = 1 << t
    half = active // 2
    initial, flips, sequences = [], [], []
    for j in range(n_phase):
        if j >= active:
            initial.append(0)
            flips.append(())
            sequences.append(())
            continue
        label = sum(1 << (n - 1 - b) for b in range(t) if (j >> b) & 1)
        seq = [label] if label else []
        steps = []
        for p in range(1, 1 << r):
            bpos = _trailing_zeros(p)
            if active > 1 and j >= half:
                bpos = r - 1 - bpos
            wire = t + bpos
            label ^= 1 << (n - 1 - wire)
            steps.append(wire)
            seq.append(label)
        initial.append(seq[0] if j else 0)
        flips.append(tuple(steps))
        sequences.append(tuple(seq))
    return GraySchedule(n, t, tuple(initial), tuple(flips), tuple(sequences))


def build_copy_tree(
    source_wires: Sequence[int],
    dest_wires: Sequence[int],
    mode: str = "chain",
) -> tuple[Gate, ...]:
    """CNOT fan-out; dest ``i`` receives a copy of source ``i % len(source_wires)``.

    ``chain`` copies source -> d0 -> d1 -> ... (one CNOT per layer per bit);
    ``doubling`` lets every wire holding the bit feed a new one each layer.
    Gates are listed bit by bit. Reversing the fragment uncomputes it.
    """
    src, dst = list(source_wires), list(dest_wires)
    if set(src) & set(dst) or len(set(src)) != len(src) or len(set(dst)) != len(dst):
        raise CircuitError(f"source {src} and dest {dst} wires must be distinct")
    if dst and not src:
        raise CircuitError("no source wires to copy")
    gates: list[Gate] = []
    for i, root in enumerate(src):
        mine = dst[i :: len(src)]
        if mode == "chain":
            prev = root
            for d in mine:
                gates.append(cnot(prev, d))
                prev = d
        elif mode == "doubling":
            holders, pending = [root], list(mine)
            while pending:
                fresh = []
                for holder in holders:
                    if not pending:
                        break
                    d = pending.pop(0)
                    gates.append(cnot(holder, d))
                    fresh.append(d)
                holders += fresh
        else:
            raise CircuitError(f"unknown fan-out mode {mode!r}")
    return tuple(gates)


class _ParityTracker:
    """Records gates and follows the F2 parity held by each wire."""

    def __init__(self, masks: dict[int, int], alpha: np.ndarray, prune: bool):
        self.masks = masks
        self.alpha = alpha
        self.prune = prune
        self.gates: list[Gate] = []

    def cx(self, control: int, target: int) -> None:
        self.masks[target] ^= self.masks[control]
        self.gates.append(cnot(control, target))

    def run(self, gates: Sequence[Gate]) -> None:
        for g in gates:
            self.cx(*g.wires)

    def rotate(self, wire: int, expected: int) -> None:
        label = self.masks[wire]
        if label != expected:
            raise AssertionError(f"phase wire {wire} holds {label:b}, schedule expects {expected:b}")
        angle = float(self.alpha[label])
        if self.prune and abs(angle) < PRUNE_TOL:
            return
        self.gates.append(phase(wire, angle))


def lambda_gates(
    n: int,
    theta: PhaseVector | Sequence[float] | np.ndarray,
    layout: RegisterLayout,
    prune_zero_phases: bool = False,
    fanout: str = "chain",
) -> list[Gate]:
    """Gate list for Lambda_n on input wires 0..n-1 and the first n copy / phase wires."""
    if layout.n_input < n or layout.n_copy < n or layout.n_phase < n:
        raise CircuitError(f"layout {layout} too small for Lambda_{n}")
    spectrum = walsh_spectrum(theta)
    if spectrum.n != n:
        raise CircuitError(f"phase vector has n={spectrum.n}, expected {n}")
    q = list(layout.input_wires)[:n]
    c = list(layout.copy_wires)[:n]
    p = list(layout.phase_wires)[:n]
    sched = schedule_labels(n, n)
    t, r = sched.prefix_width, n - sched.prefix_width

    masks = {w: 0 for w in q + c + p}
    for i, w in enumerate(q):
        masks[w] = 1 << (n - 1 - i)
    tr = _ParityTracker(masks, spectrum.alpha, prune_zero_phases)

    prefix_copy = build_copy_tree(q[:t], c[: t * (n // t)], fanout) if t else ()
    tr.run(prefix_copy)
    for j in range(sched.n_active):
        for b in range(t):
            if (j >> b) & 1:
                tr.cx(c[b], p[j])
        if j:
            tr.rotate(p[j], sched.initial[j])
    tr.run(prefix_copy[::-1])

    tr.run(build_copy_tree(q[t:], c[: r * (n // r)], fanout))
    for step in range(len(sched.flips[0])):
        for j in range(sched.n_active):
            tr.cx(c[sched.flips[j][step] - t], p[j])
            tr.rotate(p[j], sched.sequences[j][step + (1 if j else 0)])

    forward = tr.gates
    uncompute = [g for g in reversed(forward) if g.kind is GateKind.CNOT]
    tr.gates = []
    tr.run(uncompute)
    if any(masks[w] for w in c + p):
        raise AssertionError("ancillae not restored")
    return forward + tr.gates


def build_lambda(
    n: int,
    theta: PhaseVector | Sequence[float] | np.ndarray,
    layout: RegisterLayout | None = None,
    prune_zero_phases: bool = False,
    fanout: str = "chain",
) -> Circuit:
    """Circuit mapping |x>|0...0> to exp(i theta_x)|x>|0...0>."""
    layout = layout or RegisterLayout.with_ancillae(n)
    return Circuit(layout, tuple(lambda_gates(n, theta, layout, prune_zero_phases, fanout)))
