"""Gate-level circuit IR: gates, register layouts, metrics and ASAP depth."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence


class GateKind(Enum):
    CNOT = "cnot"
    RY = "ry"
    RZ = "rz"
    H = "h"
    S = "s"
    SDG = "sdg"
    PHASE = "phase"
    GLOBAL_PHASE = "global_phase"


_ARITY = {
    GateKind.CNOT: 2,
    GateKind.RY: 1,
    GateKind.RZ: 1,
    GateKind.H: 1,
    GateKind.S: 1,
    GateKind.SDG: 1,
    GateKind.PHASE: 1,
    GateKind.GLOBAL_PHASE: 0,
}
PARAMETRIC = frozenset({GateKind.RY, GateKind.RZ, GateKind.PHASE, GateKind.GLOBAL_PHASE})
_DAGGER = {GateKind.S: GateKind.SDG, GateKind.SDG: GateKind.S}


class CircuitError(ValueError):
    pass


@dataclass(frozen=True)
class Gate:
    """One gate. For CNOT, ``wires`` is ``(control, target)``."""

    kind: GateKind
    wires: tuple[int, ...] = ()
    angle: float | None = None

    def __post_init__(self) -> None:
        if len(self.wires) != _ARITY[self.kind]:
            raise CircuitError(f"{self.kind.value} takes {_ARITY[self.kind]} wires, got {self.wires}")
        if any(w < 0 for w in self.wires):
            raise CircuitError(f"negative wire index in {self.wires}")
        if self.kind is GateKind.CNOT and self.wires[0] == self.wires[1]:
            raise CircuitError(f"CNOT control equals target ({self.wires[0]})")
        if self.kind in PARAMETRIC:
            if self.angle is None or not math.isfinite(self.angle):
                raise CircuitError(f"{self.kind.value} needs a finite angle, got {self.angle}")
        elif self.angle is not None:
            raise CircuitError(f"{self.kind.value} takes no angle")

    def dagger(self) -> Gate:
        if self.kind in PARAMETRIC:
            return Gate(self.kind, self.wires, -self.angle)
        return Gate(_DAGGER.get(self.kind, self.kind), self.wires)


def cnot(control: int, target: int) -> Gate:
    return Gate(GateKind.CNOT, (control, target))


def ry(wire: int, angle: float) -> Gate:
    return Gate(GateKind.RY, (wire,), float(angle))


def rz(wire: int, angle: float) -> Gate:
    return Gate(GateKind.RZ, (wire,), float(angle))


def h(wire: int) -> Gate:
    return Gate(GateKind.H, (wire,))


def s(wire: int) -> Gate:
    return Gate(GateKind.S, (wire,))


def sdg(wire: int) -> Gate:
    return Gate(GateKind.SDG, (wire,))


def phase(wire: int, angle: float) -> Gate:
    return Gate(GateKind.PHASE, (wire,), float(angle))


def global_phase(angle: float) -> Gate:
    return Gate(GateKind.GLOBAL_PHASE, (), float(angle))


@dataclass(frozen=True)
class RegisterLayout:
    """Wire partition: input wires first, then the copy register, then the phase register.

    Wire 0 is the most significant bit of the basis index.
    """

    n_input: int
    n_copy: int = 0
    n_phase: int = 0

    def __post_init__(self) -> None:
        if self.n_input < 1 or self.n_copy < 0 or self.n_phase < 0:
            raise CircuitError(f"invalid register sizes {self}")

    @classmethod
    def with_ancillae(cls, n: int) -> RegisterLayout:
        """Layout with ``n`` copy and ``n`` phase wires (``m = 2n`` ancillae)."""
        return cls(n, n, n)

    @property
    def total(self) -> int:
        return self.n_input + self.n_copy + self.n_phase

    @property
    def input_wires(self) -> range:
        return range(self.n_input)

    @property
    def copy_wires(self) -> range:
        return range(self.n_input, self.n_input + self.n_copy)

    @property
    def phase_wires(self) -> range:
        return range(self.n_input + self.n_copy, self.total)

    @property
    def n_ancilla(self) -> int:
        return self.n_copy + self.n_phase


@dataclass(frozen=True)
class Circuit:
    layout: RegisterLayout
    gates: tuple[Gate, ...] = ()

    def __post_init__(self) -> None:
        gates = tuple(self.gates)
        object.__setattr__(self, "gates", gates)
        width = self.layout.total
        for g in gates:
            for w in g.wires:
                if w >= width:
                    raise CircuitError(f"wire {w} out of range for width {width} in {g}")

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    @property
    def width(self) -> int:
        return self.layout.total


def append(circuit: Circuit, gate: Gate) -> Circuit:
    return Circuit(circuit.layout, circuit.gates + (gate,))


def extend(circuit: Circuit, gates: Iterable[Gate]) -> Circuit:
    return Circuit(circuit.layout, circuit.gates + tuple(gates))


def compose(a: Circuit, b: Circuit) -> Circuit:
    if a.layout != b.layout:
        raise CircuitError(f"layout mismatch: {a.layout} vs {b.layout}")
    return Circuit(a.layout, a.gates + b.gates)


def inverse(circuit: Circuit) -> Circuit:
    return Circuit(circuit.layout, tuple(g.dagger() for g in reversed(circuit.gates)))


def depth(circuit: Circuit | Sequence[Gate]) -> int:
    """ASAP layering: a gate lands one layer after the latest gate on any of its wires."""
    gates = circuit.gates if isinstance(circuit, Circuit) else circuit
    timeline: dict[int, int] = {}
    best = 0
    for g in gates:
        if not g.wires:
            continue
        layer = 1 + max(timeline.get(w, 0) for w in g.wires)
        for w in g.wires:
            timeline[w] = layer
        best = max(best, layer)
    return best


@dataclass(frozen=True)
class MetricsReport:
    depth: int
    total_gates: int
    cnot: int
    by_kind: dict[str, int] = field(default_factory=dict)
    rot_minus_phase: int = 0

    def to_dict(self) -> dict:
        return {
            "depth": self.depth,
            "total_gates": self.total_gates,
            "cnot": self.cnot,
            "by_kind": dict(self.by_kind),
            "rot_minus_phase": self.rot_minus_phase,
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: dict) -> MetricsReport:
        return cls(
            depth=int(data["depth"]),
            total_gates=int(data["total_gates"]),
            cnot=int(data["cnot"]),
            by_kind={k: int(v) for k, v in data["by_kind"].items()},
            rot_minus_phase=int(data["rot_minus_phase"]),
        )


def counts(circuit: Circuit, count_global_phase: bool = False) -> MetricsReport:
    """Per-kind tallies. The global-phase marker has its own bucket and is left
    out of ``total_gates`` unless ``count_global_phase`` is set."""
    by_kind = {k.value: 0 for k in GateKind}
    for g in circuit.gates:
        by_kind[g.kind.value] += 1
    total = sum(by_kind.values())
    if not count_global_phase:
        total -= by_kind[GateKind.GLOBAL_PHASE.value]
    rotations = by_kind[GateKind.RY.value] + by_kind[GateKind.RZ.value]
    return MetricsReport(
        depth=depth(circuit),
        total_gates=total,
        cnot=by_kind[GateKind.CNOT.value],
        by_kind=by_kind,
        rot_minus_phase=rotations - by_kind[GateKind.PHASE.value],
    )
