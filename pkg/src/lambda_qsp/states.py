"""Target-state families and the JSON state-file format.

Random families draw from ``numpy.random.default_rng([seed, n])`` (PCG64).
Complex amplitudes use independent standard normals for the real and imaginary
parts; the real families use ``|z|`` or ``-|z|`` of standard normals. Sparse
states keep ``max(2, floor(density * 2**n))`` indices chosen without replacement.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from pathlib import Path

import numpy as np

from .parameters import AmplitudeVector

DEFAULT_DENSITY = 0.25
DEFAULT_DICKE_K = 2


class FamilyKind(Enum):
    BELL_PHI_PLUS = "bell_phi_plus"
    BELL_PHI_MINUS = "bell_phi_minus"
    BELL_PSI_PLUS = "bell_psi_plus"
    BELL_PSI_MINUS = "bell_psi_minus"
    GHZ = "ghz"
    W = "w"
    DICKE = "dicke"
    RANDOM_COMPLEX = "random_complex"
    RANDOM_REAL_POS = "random_real_pos"
    RANDOM_REAL_NEG = "random_real_neg"


BELL = {
    FamilyKind.BELL_PHI_PLUS: (1, 0, 0, 1),
    FamilyKind.BELL_PHI_MINUS: (1, 0, 0, -1),
    FamilyKind.BELL_PSI_PLUS: (0, 1, 1, 0),
    FamilyKind.BELL_PSI_MINUS: (0, 1, -1, 0),
}
RANDOM = (FamilyKind.RANDOM_COMPLEX, FamilyKind.RANDOM_REAL_POS, FamilyKind.RANDOM_REAL_NEG)
NAMED = tuple(k for k in FamilyKind if k not in RANDOM)


class FamilyError(ValueError):
    pass


@dataclass(frozen=True)
class StateFamily:
    kind: FamilyKind
    n: int
    seed: int = 0
    density: float | None = None  # None = dense; only used by the random kinds
    k: int = DEFAULT_DICKE_K  # Dicke excitation number

    @property
    def label(self) -> str:
        if self.kind in RANDOM:
            return f"{self.kind.value}_{'dense' if self.density is None else 'sparse'}"
        if self.kind is FamilyKind.DICKE:
            return f"dicke{self.k}"
        return self.kind.value

    def compatible(self) -> bool:
        if self.kind in BELL:
            return self.n == 2
        if self.kind is FamilyKind.DICKE:
            return self.n >= 2 and 1 <= self.k <= self.n
        if self.kind in (FamilyKind.GHZ, FamilyKind.W):
            return self.n >= 2
        return self.n >= 1


def parse_family(
    name: str,
    n: int,
    seed: int = 0,
    density: float = DEFAULT_DENSITY,
    dicke_k: int = DEFAULT_DICKE_K,
) -> StateFamily:
    """Family from a name such as ``ghz``, ``dicke``, ``random_complex_sparse``."""
    base, sparse = name, False
    for suffix in ("_dense", "_sparse"):
        if name.endswith(suffix):
            base, sparse = name[: -len(suffix)], suffix == "_sparse"
    if base.startswith("dicke") and base[5:].isdigit():
        base, dicke_k = "dicke", int(base[5:])
    try:
        kind = FamilyKind(base)
    except ValueError:
        raise FamilyError(f"unknown state family {name!r}") from None
    if sparse and kind not in RANDOM:
        raise FamilyError(f"{name!r}: only random families have a sparse variant")
    return StateFamily(kind, n, seed, density if sparse else None, dicke_k)


def _weight_states(n: int, k: int) -> np.ndarray:
    c = np.zeros(1 << n)
    for ones in combinations(range(n), k):
        c[sum(1 << (n - 1 - w) for w in ones)] = 1.0
    return c / math.sqrt(np.count_nonzero(c))


def gen_state(family: StateFamily) -> AmplitudeVector:
    n, kind = family.n, family.kind
    if not family.compatible():
        raise FamilyError(f"{family.label} is not defined for n={n}")
    if kind in BELL:
        return AmplitudeVector(2, np.array(BELL[kind], dtype=complex) / math.sqrt(2))
    if kind is FamilyKind.GHZ:
        c = np.zeros(1 << n, dtype=complex)
        c[0] = c[-1] = 1 / math.sqrt(2)
        return AmplitudeVector(n, c)
    if kind is FamilyKind.W:
        return AmplitudeVector(n, _weight_states(n, 1).astype(complex))
    if kind is FamilyKind.DICKE:
        return AmplitudeVector(n, _weight_states(n, family.k).astype(complex))

    rng = np.random.default_rng([family.seed, n])
    size = 1 << n
    if family.density is None:
        support = np.arange(size)
    else:
        m = min(size, max(2, math.floor(family.density * size)))
        support = np.sort(rng.choice(size, size=m, replace=False))
    re = rng.standard_normal(support.size)
    if kind is FamilyKind.RANDOM_COMPLEX:
        values = re + 1j * rng.standard_normal(support.size)
    elif kind is FamilyKind.RANDOM_REAL_POS:
        values = np.abs(re).astype(complex)
    else:
        values = -np.abs(re).astype(complex)
    c = np.zeros(size, dtype=complex)
    c[support] = values
    return AmplitudeVector.from_array(c, normalize=True)


def state_to_json(state: AmplitudeVector) -> str:
    amps = [[float(z.real), float(z.imag)] for z in state.c]
    return json.dumps({"n": state.n, "amplitudes": amps})


def state_from_json(text: str, normalize: bool = False) -> AmplitudeVector:
    data = json.loads(text)
    amps = np.array([complex(re, im) for re, im in data["amplitudes"]])
    state = AmplitudeVector.from_array(amps, normalize=normalize)
    if state.n != int(data["n"]):
        raise FamilyError(f"state file declares n={data['n']} but holds {amps.size} amplitudes")
    return state


def save_state(path: str | Path, state: AmplitudeVector) -> None:
    Path(path).write_text(state_to_json(state) + "\n")


def load_state(path: str | Path, normalize: bool = False) -> AmplitudeVector:
    return state_from_json(Path(path).read_text(), normalize)
