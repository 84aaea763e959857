"""The CHSH game: classical strategies, measurement-angle strategies,
Bell operators and Tsirelson's bound."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .states import PAULI_X, PAULI_Z, PureState, phi_plus
from .tensor import tensor

CLASSICAL_OPTIMUM = 0.75
QUANTUM_OPTIMUM = math.cos(math.pi / 8) ** 2  # 1/2 + 1/(2 sqrt 2)
TSIRELSON = 2 * math.sqrt(2)

#: the textbook measurement angles (Alice r=0,1; Bob s=0,1)
OPTIMAL_ANGLES = (0.0, math.pi / 4, math.pi / 8, -math.pi / 8)


def measurement_basis(theta: float) -> tuple[np.ndarray, np.ndarray]:
    """Rotated qubit basis: phi_0 = cos t |0> + sin t |1>, phi_1 orthogonal."""
    c, s = math.cos(theta), math.sin(theta)
    return (np.array([c, s], dtype=complex), np.array([-s, c], dtype=complex))


@dataclass(frozen=True)
class DeterministicStrategy:
    """Fixed answers a_r, b_s for each question pair."""

    a: tuple[int, int]
    b: tuple[int, int]

    def win_probability(self) -> float:
        wins = sum(
            1 for r, s in itertools.product((0, 1), repeat=2)
            if (self.a[r] ^ self.b[s]) == (r & s)
        )
        return wins / 4


@dataclass(frozen=True)
class QuantumStrategy:
    """A shared two-qubit state plus four measurement angles."""

    state: PureState
    angles: tuple[float, float, float, float]  # (alice0, alice1, bob0, bob1)

    def win_probability(self) -> float:
        if self.state.dims != (2, 2):
            raise ValueError("shared state must be two qubits")
        a_bases = [measurement_basis(self.angles[0]), measurement_basis(self.angles[1])]
        b_bases = [measurement_basis(self.angles[2]), measurement_basis(self.angles[3])]
        psi = self.state.amps.reshape(2, 2)
        total = 0.0
        for r, s in itertools.product((0, 1), repeat=2):
            for a, b in itertools.product((0, 1), repeat=2):
                if (a ^ b) != (r & s):
                    continue
                amp = a_bases[r][a].conj() @ psi @ b_bases[s][b].conj()
                total += abs(amp) ** 2
        return total / 4


def chsh_value(strategy: DeterministicStrategy | QuantumStrategy) -> float:
    return strategy.win_probability()


def chsh_classical_optimum() -> tuple[float, list[DeterministicStrategy]]:
    """Exhaust the 16 deterministic strategies; 8 of them reach 3/4."""
    best = 0.0
    achievers = []
    for bits in itertools.product((0, 1), repeat=4):
        s = DeterministicStrategy((bits[0], bits[1]), (bits[2], bits[3]))
        v = s.win_probability()
        if v > best + 1e-15:
            best, achievers = v, [s]
        elif abs(v - best) <= 1e-15:
            achievers.append(s)
    return best, achievers


def optimal_strategy() -> QuantumStrategy:
    """|Phi+> with the textbook angles; wins with probability cos^2(pi/8)."""
    return QuantumStrategy(phi_plus(), OPTIMAL_ANGLES)


def optimal_observables() -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """A0 = Z, A1 = X; B0, B1 the +-pi/8 rotated observables."""
    r = 1 / math.sqrt(2)
    b0 = r * np.array([[1, 1], [1, -1]], dtype=complex)
    b1 = r * np.array([[1, -1], [-1, -1]], dtype=complex)
    return PAULI_Z.copy(), PAULI_X.copy(), b0, b1


def bell_operator(a0: np.ndarray, a1: np.ndarray,
                  b0: np.ndarray, b1: np.ndarray) -> np.ndarray:
    """A0 B0 + A0 B1 + A1 B0 - A1 B1 for +-1-valued observables.

    Every such operator has norm at most 2 sqrt(2) (Tsirelson).
    """
    for o in (a0, a1, b0, b1):
        o = np.asarray(o)
        if np.max(np.abs(o @ o - np.eye(o.shape[0]))) > 1e-9:
            raise ValueError("observables must square to the identity")
        if np.max(np.abs(o - o.conj().T)) > 1e-9:
            raise ValueError("observables must be Hermitian")
    return (tensor(a0, b0) + tensor(a0, b1) + tensor(a1, b0) - tensor(a1, b1))


def bias(strategy: DeterministicStrategy | QuantumStrategy) -> float:
    """2 P[win] - 1."""
    return 2 * chsh_value(strategy) - 1


@dataclass(frozen=True)
class OptimizationResult:
    value: float
    angles: tuple[float, float, float, float]
    schmidt_angle: float
    starts: int


def _win_probability(params: np.ndarray) -> float:
    chi = params[4]
    state = PureState(
        np.array([math.cos(chi), 0, 0, math.sin(chi)], dtype=complex), (2, 2))
    return QuantumStrategy(state, tuple(params[:4])).win_probability()


def chsh_optimize(starts: int = 32, seed: int = 0,
                  product_state: bool = False,
                  sweep_tol: float = 1e-12, max_sweeps: int = 200) -> OptimizationResult:
    """Coordinate-ascent search over four angles and a Schmidt angle.

    In each coordinate the objective is exactly a + b cos 2t + c sin 2t, so
    the per-coordinate maximizer is computed in closed form from three
    probes.  With ``product_state`` the shared state is pinned to |00>,
    recovering the classical optimum 3/4.
    """
    rng = np.random.default_rng(seed)
    best = OptimizationResult(-1.0, (0, 0, 0, 0), 0.0, starts)
    free = 4 if product_state else 5
    for _ in range(starts):
        params = rng.uniform(0, math.pi, size=5)
        if product_state:
            params[4] = 0.0
        val = _win_probability(params)
        for _ in range(max_sweeps):
            prev = val
            for i in range(free):
                probes = []
                for t in (0.0, math.pi / 4, math.pi / 2):
                    q = params.copy()
                    q[i] = t
                    probes.append(_win_probability(q))
                f0, f45, f90 = probes
                a = (f0 + f90) / 2
                b_c = (f0 - f90) / 2
                c_c = f45 - a
                params[i] = 0.5 * math.atan2(c_c, b_c)
                val = a + math.hypot(b_c, c_c)
            if val - prev < sweep_tol:
                break
        if val > best.value:
            best = OptimizationResult(val, tuple(params[:4]), float(params[4]), starts)
    return best
