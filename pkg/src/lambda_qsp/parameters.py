"""Angle extraction: tree R_y angles, relative phases, R_z-block conversion, Walsh spectra."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

NORM_TOL = 1e-12
REAL_TOL = 1e-12
TWO_PI = 2 * math.pi


class ParameterError(ValueError):
    pass


def _qubits(size: int) -> int:
    n = size.bit_length() - 1
    if size < 2 or (1 << n) != size:
        raise ParameterError(f"length {size} is not a power of two >= 2")
    return n


@dataclass(frozen=True)
class AmplitudeVector:
    n: int
    c: np.ndarray

    def __post_init__(self) -> None:
        c = np.asarray(self.c, dtype=complex)
        if c.shape != (1 << self.n,):
            raise ParameterError(f"expected {1 << self.n} amplitudes for n={self.n}, got {c.shape}")
        norm = float(np.sum(np.abs(c) ** 2))
        if abs(norm - 1.0) > NORM_TOL:
            raise ParameterError(f"state is not normalised (squared norm {norm!r})")
        c.setflags(write=False)
        object.__setattr__(self, "c", c)

    @classmethod
    def from_array(cls, values: Sequence[complex] | np.ndarray, normalize: bool = False) -> AmplitudeVector:
        c = np.asarray(values, dtype=complex)
        n = _qubits(c.size)
        if normalize:
            norm = np.sqrt(np.sum(np.abs(c) ** 2))
            if norm == 0:
                raise ParameterError("cannot normalise the zero vector")
            c = c / norm
        return cls(n, c)

    @property
    def moduli(self) -> np.ndarray:
        return np.abs(self.c)

    def is_real_nonnegative(self) -> bool:
        return bool(np.max(np.abs(self.c.imag)) < REAL_TOL and np.min(self.c.real) >= -REAL_TOL)


@dataclass(frozen=True)
class AngleLadder:
    """``levels[j-1]`` holds the 2**(j-1) R_y angles of level ``j``, indexed by control value."""

    levels: tuple[np.ndarray, ...]

    @property
    def n(self) -> int:
        return len(self.levels)


@dataclass(frozen=True)
class PhaseVector:
    n: int
    theta: np.ndarray
    global_phase: float = 0.0

    def __post_init__(self) -> None:
        theta = np.asarray(self.theta, dtype=float)
        if theta.shape != (1 << self.n,):
            raise ParameterError(f"expected {1 << self.n} phases for n={self.n}, got {theta.shape}")
        if theta[0] != 0.0:
            raise ParameterError(f"theta_0 must be exactly 0, got {theta[0]!r}")
        if not np.all(np.isfinite(theta)):
            raise ParameterError("phases must be finite")
        theta.setflags(write=False)
        object.__setattr__(self, "theta", theta)

    @classmethod
    def from_nonzero(cls, values: Sequence[float], global_phase: float = 0.0) -> PhaseVector:
        """Build from the 2**n - 1 entries after the fixed ``theta_0 = 0``."""
        theta = np.concatenate([[0.0], np.asarray(values, dtype=float)])
        return cls(_qubits(theta.size), theta, global_phase)


def subtree_norms(moduli: np.ndarray) -> list[np.ndarray]:
    """``norms[l][p]`` is the l2 norm of all amplitudes whose first ``l`` bits equal ``p``."""
    weights = np.asarray(moduli, dtype=float) ** 2
    n = _qubits(weights.size)
    return [np.sqrt(weights.reshape(1 << l, -1).sum(axis=1)) for l in range(n + 1)]


def ry_angles(moduli: Sequence[float] | np.ndarray) -> AngleLadder:
    m = np.asarray(moduli, dtype=float)
    if np.any(m < 0):
        raise ParameterError("moduli must be nonnegative")
    if abs(float(np.sum(m**2)) - 1.0) > NORM_TOL:
        raise ParameterError("moduli are not normalised")
    norms = subtree_norms(m)
    levels = []
    for j in range(1, len(norms)):
        child = norms[j].reshape(-1, 2)
        # atan2(0, 0) = 0, so empty subtrees get no rotation.
        levels.append(2.0 * np.arctan2(child[:, 1], child[:, 0]))
    return AngleLadder(tuple(levels))


def phase_reference(c: np.ndarray) -> float:
    """Phase of ``c_0``, or of the first nonzero amplitude when ``c_0`` vanishes."""
    for value in c:
        if abs(value) > NORM_TOL:
            return float(np.angle(value))
    raise ParameterError("all-zero state")


def phase_angles(state: AmplitudeVector) -> PhaseVector:
    c = state.c
    ref = phase_reference(c)
    nonzero = np.abs(c) > NORM_TOL
    theta = np.where(nonzero, np.mod(np.angle(c) - ref, TWO_PI), 0.0)
    theta[0] = 0.0
    return PhaseVector(state.n, theta, ref)


def rz_block_phases(gammas: Sequence[float] | np.ndarray) -> np.ndarray:
    """Diagonal phases of the multiplexed R_z block, target on the least significant bit."""
    g = np.asarray(gammas, dtype=float)
    return np.stack([-g / 2, g / 2], axis=1).reshape(-1)


def diagonal_to_lambda(phases: Sequence[float] | np.ndarray) -> tuple[PhaseVector, float]:
    """Split ``diag(exp(i phases))`` into ``exp(i offset) * Lambda(theta)`` with ``theta_0 = 0``."""
    p = np.asarray(phases, dtype=float)
    offset = float(p[0])
    theta = p - offset
    theta[0] = 0.0
    return PhaseVector(_qubits(p.size), theta, offset), offset


def rz_block_to_lambda(gammas: Sequence[float] | np.ndarray) -> tuple[np.ndarray, float]:
    pv, offset = diagonal_to_lambda(rz_block_phases(gammas))
    return np.array(pv.theta[1:]), offset


def zyz_angles(u: np.ndarray) -> tuple[float, float, float, float]:
    """Euler angles with ``u = exp(i a) Rz(b) Ry(c) Rz(d)`` and ``c`` in [0, pi]."""
    u = np.asarray(u, dtype=complex)
    det = u[0, 0] * u[1, 1] - u[0, 1] * u[1, 0]
    alpha = float(np.angle(det)) / 2
    v = u * np.exp(-1j * alpha)
    a, b = v[0, 0], v[1, 0]
    gamma = 2.0 * math.atan2(abs(b), abs(a))
    if abs(b) < 1e-14:
        plus, minus = -2.0 * float(np.angle(a)), 0.0
    elif abs(a) < 1e-14:
        plus, minus = 0.0, 2.0 * float(np.angle(b))
    else:
        plus, minus = -2.0 * float(np.angle(a)), 2.0 * float(np.angle(b))
    beta = (plus + minus) / 2
    delta = (plus - minus) / 2
    return alpha, beta, gamma, delta


def fwht(values: np.ndarray) -> np.ndarray:
    """Unnormalised Walsh-Hadamard transform: ``out[s] = sum_x (-1)^popcount(s & x) values[x]``."""
    out = np.array(values, dtype=float)
    size = out.size
    span = 1
    while span < size:
        v = out.reshape(-1, 2, span)
        a = v[:, 0, :].copy()
        v[:, 0, :] += v[:, 1, :]
        v[:, 1, :] = a - v[:, 1, :]
        span *= 2
    return out


def parity(s: int, x: int) -> int:
    return (s & x).bit_count() & 1


def bits_to_int(bits: str | Sequence[int], n: int) -> int:
    if isinstance(bits, str):
        if len(bits) != n or set(bits) - {"0", "1"}:
            raise ParameterError(f"expected a {n}-bit string, got {bits!r}")
        return int(bits, 2)
    bits = list(bits)
    if len(bits) != n or any(b not in (0, 1) for b in bits):
        raise ParameterError(f"expected {n} bits, got {bits!r}")
    return int("".join(map(str, bits)), 2)


@dataclass(frozen=True)
class WalshSpectrum:
    """Coefficients of the parity expansion ``theta_x = sum_s alpha_s <s, x>``.

    ``alpha[s]`` is indexed by the integer value of the bitstring ``s`` (first
    character = wire 0); ``alpha[0]`` is always 0 and unused.
    """

    n: int
    alpha: np.ndarray

    def __getitem__(self, s: int | str) -> float:
        idx = bits_to_int(s, self.n) if isinstance(s, str) else int(s)
        if not 0 < idx < (1 << self.n):
            raise KeyError(s)
        return float(self.alpha[idx])

    def items(self):
        width = self.n
        return [(format(s, f"0{width}b"), float(self.alpha[s])) for s in range(1, 1 << width)]


def walsh_spectrum(theta: PhaseVector | Sequence[float] | np.ndarray) -> WalshSpectrum:
    t = np.asarray(getattr(theta, "theta", theta), dtype=float)
    n = t.size.bit_length() - 1
    if (1 << n) != t.size:
        raise ParameterError(f"length {t.size} is not a power of two")
    if t[0] != 0.0:
        raise ParameterError(f"theta_0 must be 0, got {t[0]!r}")
    alpha = -2.0 * fwht(t) / t.size
    alpha[0] = 0.0
    return WalshSpectrum(n, alpha)


def eval_parity_form(spectrum: WalshSpectrum, x: int | str | Sequence[int]) -> float:
    n = spectrum.n
    if isinstance(x, (int, np.integer)):
        if not 0 <= x < (1 << n):
            raise ParameterError(f"basis index {x} out of range for n={n}")
        xi = int(x)
    else:
        xi = bits_to_int(x, n)
    return float(sum(spectrum.alpha[s] for s in range(1, 1 << n) if parity(s, xi)))
