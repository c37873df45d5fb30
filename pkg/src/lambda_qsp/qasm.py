"""OpenQASM 2.0 export, plus a parser for the subset this package emits."""

from __future__ import annotations

import re

from .circuit import Circuit, CircuitError, Gate, GateKind, RegisterLayout

_NAMES = {
    GateKind.CNOT: "cx",
    GateKind.RY: "ry",
    GateKind.RZ: "rz",
    GateKind.H: "h",
    GateKind.S: "s",
    GateKind.SDG: "sdg",
    GateKind.PHASE: "u1",
}
_KINDS = {v: k for k, v in _NAMES.items()}

_LAYOUT_RE = re.compile(r"//\s*layout\s+(\d+)\s+(\d+)\s+(\d+)")
_GPHASE_RE = re.compile(r"//\s*global_phase\s+(\S+)")
_QREG_RE = re.compile(r"qreg\s+q\[(\d+)\];")
_GATE_RE = re.compile(r"([a-z0-9]+)(?:\(([^)]*)\))?\s+(q\[\d+\](?:\s*,\s*q\[\d+\])*);")


def export_qasm(circuit: Circuit) -> str:
    lay = circuit.layout
    lines = [
        "OPENQASM 2.0;",
        'include "qelib1.inc";',
        f"// layout {lay.n_input} {lay.n_copy} {lay.n_phase}",
        f"qreg q[{lay.total}];",
    ]
    for g in circuit.gates:
        if g.kind is GateKind.GLOBAL_PHASE:
            lines.append(f"// global_phase {g.angle!r}")
            continue
        args = ",".join(f"q[{w}]" for w in g.wires)
        name = _NAMES[g.kind]
        if g.angle is None:
            lines.append(f"{name} {args};")
        else:
            lines.append(f"{name}({g.angle!r}) {args};")
    return "\n".join(lines) + "\n"


def parse_qasm(text: str) -> Circuit:
    """Inverse of :func:`export_qasm`. Without a layout comment, every wire is an input wire."""
    layout = None
    width = None
    gates: list[Gate] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if m := _LAYOUT_RE.fullmatch(line):
            layout = RegisterLayout(*(int(v) for v in m.groups()))
            continue
        if m := _GPHASE_RE.fullmatch(line):
            gates.append(Gate(GateKind.GLOBAL_PHASE, (), float(m.group(1))))
            continue
        if line.startswith("//") or line.startswith("OPENQASM") or line.startswith("include"):
            continue
        if m := _QREG_RE.fullmatch(line):
            width = int(m.group(1))
            continue
        m = _GATE_RE.fullmatch(line)
        if m is None or m.group(1) not in _KINDS:
            raise CircuitError(f"unsupported QASM line: {raw!r}")
        kind = _KINDS[m.group(1)]
        wires = tuple(int(w) for w in re.findall(r"\[(\d+)\]", m.group(3)))
        angle = float(m.group(2)) if m.group(2) is not None else None
        gates.append(Gate(kind, wires, angle))
    if width is None:
        raise CircuitError("missing qreg declaration")
    if layout is None:
        layout = RegisterLayout(width)
    elif layout.total != width:
        raise CircuitError(f"layout comment {layout} disagrees with qreg width {width}")
    return Circuit(layout, tuple(gates))
