"""Dense statevector simulation and the verification oracles."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, Gate, GateKind, RegisterLayout

DEFAULT_MAX_WIRES = 30
WARN_WIRES = 25  # above n = 8 for the ancilla layouts

_SQ = 1 / math.sqrt(2)
_H = np.array([[_SQ, _SQ], [_SQ, -_SQ]], dtype=complex)


class SimulationError(ValueError):
    pass


@dataclass
class StateVector:
    width: int
    amps: np.ndarray

    def __post_init__(self) -> None:
        self.amps = np.asarray(self.amps, dtype=complex)
        if self.amps.shape != (1 << self.width,):
            raise SimulationError(f"expected {1 << self.width} amplitudes, got {self.amps.shape}")

    @classmethod
    def zero(cls, width: int) -> StateVector:
        amps = np.zeros(1 << width, dtype=complex)
        amps[0] = 1.0
        return cls(width, amps)

    @classmethod
    def basis(cls, width: int, index: int) -> StateVector:
        amps = np.zeros(1 << width, dtype=complex)
        amps[index] = 1.0
        return cls(width, amps)

    def norm(self) -> float:
        return math.sqrt(float(np.sum(np.abs(self.amps) ** 2)))

    def copy(self) -> StateVector:
        return StateVector(self.width, self.amps.copy())


def _matrix(g: Gate) -> np.ndarray:
    k = g.kind
    if k is GateKind.H:
        return _H
    if k is GateKind.RY:
        c, s = math.cos(g.angle / 2), math.sin(g.angle / 2)
        return np.array([[c, -s], [s, c]], dtype=complex)
    raise AssertionError(k)


def _diag(g: Gate) -> tuple[complex, complex]:
    k = g.kind
    if k is GateKind.RZ:
        return np.exp(-0.5j * g.angle), np.exp(0.5j * g.angle)
    if k is GateKind.PHASE:
        return 1.0, np.exp(1j * g.angle)
    if k is GateKind.S:
        return 1.0, 1j
    if k is GateKind.SDG:
        return 1.0, -1j
    raise AssertionError(k)


def apply_gate(amps: np.ndarray, width: int, g: Gate) -> None:
    """Apply ``g`` in place (wire 0 = most significant bit).

    ``amps`` is C-contiguous with leading dimension 2**width; any trailing axes are
    treated as a batch of independent states.
    """
    k = g.kind
    if k is GateKind.GLOBAL_PHASE:
        amps *= np.exp(1j * g.angle)
        return
    if k is GateKind.CNOT:
        c, t = g.wires
        lo, hi = min(c, t), max(c, t)
        v = amps.reshape(1 << lo, 2, 1 << (hi - lo - 1), 2, -1)
        if c < t:
            a, b = v[:, 1, :, 0, :], v[:, 1, :, 1, :]
        else:
            a, b = v[:, 0, :, 1, :], v[:, 1, :, 1, :]
        tmp = a.copy()
        a[...] = b
        b[...] = tmp
        return
    (w,) = g.wires
    v = amps.reshape(1 << w, 2, -1)
    if k in (GateKind.RZ, GateKind.PHASE, GateKind.S, GateKind.SDG):
        d0, d1 = _diag(g)
        if d0 != 1.0:
            v[:, 0, :] *= d0
        v[:, 1, :] *= d1
        return
    m = _matrix(g)
    x0 = v[:, 0, :].copy()
    x1 = v[:, 1, :]
    v[:, 0, :] = m[0, 0] * x0 + m[0, 1] * x1
    v[:, 1, :] = m[1, 0] * x0 + m[1, 1] * x1


def _check_width(width: int, max_wires: int) -> None:
    if width > max_wires:
        raise SimulationError(
            f"{width} wires exceeds the simulation cap of {max_wires} "
            f"({16 * (1 << width) / 2**30:.1f} GiB of amplitudes)"
        )
    if width > WARN_WIRES:
        warnings.warn(f"simulating {width} wires needs {16 * (1 << width) / 2**30:.1f} GiB", ResourceWarning)


def simulate(
    circuit: Circuit,
    initial: StateVector | None = None,
    max_wires: int = DEFAULT_MAX_WIRES,
) -> StateVector:
    width = circuit.width
    _check_width(width, max_wires)
    if initial is None:
        state = StateVector.zero(width)
    else:
        if initial.width != width:
            raise SimulationError(f"initial state has {initial.width} wires, circuit has {width}")
        state = initial.copy()
    for g in circuit.gates:
        apply_gate(state.amps, width, g)
    return state


def simulate_batch(circuit: Circuit, columns: np.ndarray, max_wires: int = DEFAULT_MAX_WIRES) -> np.ndarray:
    """Run every column of a ``(2**width, k)`` array through the circuit."""
    width = circuit.width
    _check_width(width, max_wires)
    out = np.array(columns, dtype=complex, order="C")
    if out.ndim != 2 or out.shape[0] != 1 << width:
        raise SimulationError(f"expected shape ({1 << width}, k), got {out.shape}")
    for g in circuit.gates:
        apply_gate(out, width, g)
    return out


def apply_diagonal(state: StateVector | np.ndarray, theta) -> StateVector:
    """Multiply amplitude ``x`` by ``exp(i theta_x)``."""
    if not isinstance(state, StateVector):
        arr = np.asarray(state, dtype=complex)
        state = StateVector(int(arr.size).bit_length() - 1, arr)
    theta = np.asarray(getattr(theta, "theta", theta), dtype=float)
    if theta.shape != state.amps.shape:
        raise SimulationError(f"phase vector of size {theta.size} for {state.amps.size} amplitudes")
    return StateVector(state.width, state.amps * np.exp(1j * theta))


def _amps(x) -> np.ndarray:
    if isinstance(x, StateVector):
        return x.amps
    return np.asarray(getattr(x, "amps", x), dtype=complex)


def overlap(a, b) -> complex:
    a, b = _amps(a), _amps(b)
    if a.shape != b.shape:
        raise SimulationError(f"size mismatch: {a.shape} vs {b.shape}")
    # np.sum is pairwise, so the result does not depend on threading.
    return complex(np.sum(np.conj(a) * b))


def fidelity(a, b) -> float:
    return min(1.0, abs(overlap(a, b)) ** 2)


def trace_distance(a, b) -> float:
    """Pure-state trace distance sqrt(1 - |<a|b>|^2).

    For unit vectors this equals sqrt(d^2 - d^4/4), with d the distance between a
    and b after aligning their global phase; that form avoids the cancellation in
    1 - |<a|b>|^2 when the states nearly coincide.
    """
    va, vb = _amps(a), _amps(b)
    ov = overlap(va, vb)
    na = float(np.sum(np.abs(va) ** 2))
    nb = float(np.sum(np.abs(vb) ** 2))
    if abs(na - 1) > 1e-8 or abs(nb - 1) > 1e-8 or abs(ov) == 0:
        return math.sqrt(max(0.0, 1.0 - fidelity(va, vb)))
    aligned = vb * (np.conj(ov) / abs(ov))
    d2 = float(np.sum(np.abs(va - aligned) ** 2))
    return math.sqrt(min(1.0, max(0.0, d2 - d2 * d2 / 4)))


def extract_input_register(state: StateVector, layout: RegisterLayout) -> tuple[np.ndarray, float]:
    """Input-register amplitudes with all ancillae in |0>, renormalised, and the leaked mass."""
    if state.width != layout.total:
        raise SimulationError(f"state has {state.width} wires, layout has {layout.total}")
    block = state.amps.reshape(1 << layout.n_input, 1 << layout.n_ancilla)
    reduced = block[:, 0].copy()
    kept = float(np.sum(np.abs(reduced) ** 2))
    leakage = float(np.sum(np.abs(block[:, 1:]) ** 2))
    if kept > 0:
        reduced /= math.sqrt(kept)
    return reduced, leakage
