"""Published benchmark metrics (m = 2n ancillae) and helpers for comparing against them."""

from __future__ import annotations

from typing import Iterable, Mapping

NS = tuple(range(2, 11))


def _series(values: Iterable[int]) -> dict[int, int]:
    return dict(zip(NS, values))


# method -> state class -> metric -> {n: value}
REFERENCE: dict[str, dict[str, dict[str, dict[int, int]]]] = {
    "osun": {
        "complex": {
            "depth": _series((39, 66, 105, 166, 246, 427, 647, 1046, 1871)),
            "total": _series((47, 104, 213, 380, 713, 1328, 2533, 4910, 9581)),
            "cnot": _series((36, 78, 160, 276, 510, 930, 1748, 3354, 6486)),
            "rot_minus_phase": _series((-5, -16, -39, -86, -181, -372, -755, -1522, -3057)),
        },
        "real": {
            "depth": {2: 20, 3: 43, 4: 74, 5: 120},
            "total": {2: 26, 3: 67, 4: 142},
            "cnot": {2: 18, 3: 48, 4: 104, 5: 190},
        },
    },
    "sun": {
        "complex": {
            "depth": _series((60, 129, 222, 360, 549, 915, 1428, 2283, 3948)),
            "total": _series((70, 185, 402, 757, 1430, 2685, 5116, 9893, 19284)),
            "cnot": _series((54, 144, 312, 570, 1050, 1920, 3582, 6822, 13140)),
            "rot_minus_phase": _series((-6, -27, -72, -165, -354, -735, -1500, -3033, -6102)),
        },
    },
    "mott": {
        "complex": {
            "depth": _series((8, 22, 52, 114, 240, 494, 1004, 2026, 4072)),
            "total": _series((10, 26, 58, 122, 250, 506, 1018, 2042, 4090)),
            "cnot": _series((4, 12, 28, 60, 124, 252, 508, 1020, 2044)),
            "rot_minus_phase": _series((6, 14, 30, 62, 126, 254, 510, 1022, 2046)),
        },
    },
}

METRICS = ("depth", "total", "cnot", "rot_minus_phase")


def reference_value(method: str, state_class: str, metric: str, n: int) -> int | None:
    return REFERENCE.get(method, {}).get(state_class, {}).get(metric, {}).get(n)


def compare(method: str, state_class: str, n: int, measured: Mapping[str, int]) -> dict[str, dict]:
    """Per-metric measured vs reference with absolute and relative deltas."""
    out = {}
    for metric in METRICS:
        ref = reference_value(method, state_class, metric, n)
        if ref is None or metric not in measured:
            continue
        got = int(measured[metric])
        out[metric] = {
            "measured": got,
            "reference": ref,
            "delta": got - ref,
            "relative": (got - ref) / abs(ref) if ref else 0.0,
        }
    return out
