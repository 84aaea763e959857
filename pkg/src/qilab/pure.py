"""Pure-state entanglement: Schmidt form, teleportation, distillation,
three-qubit SLOCC classes and the one-body marginal problem."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .entropy import _log2_bigint, shannon_entropy
from .states import I2, PAULI_X, PAULI_Z, PureState, bell_basis, phi_plus
from .tensor import tensor

RANK_TOL = 1e-7
HYPERDET_TOL = 1e-9
_BAND = (0.1, 10.0)  # undetermined band multipliers around a threshold


@dataclass(frozen=True)
class SchmidtDecomposition:
    coefficients: np.ndarray        # descending, nonnegative
    left_basis: np.ndarray          # columns, orthonormal on side A
    right_basis: np.ndarray         # columns, orthonormal on side B
    cut: tuple[int, ...]            # subsystem indices of side A
    dims: tuple[int, ...]
    _perm: tuple[int, ...]

    def reconstruct(self) -> np.ndarray:
        """Amplitudes in the original subsystem ordering."""
        da = self.left_basis.shape[0]
        db = self.right_basis.shape[0]
        mat = (self.left_basis * self.coefficients) @ self.right_basis.T
        shaped = mat.reshape([self.dims[i] for i in self._perm])
        inv = np.argsort(self._perm)
        return shaped.transpose(inv).reshape(da * db)

    def rank(self, tol: float = 1e-12) -> int:
        return int(np.sum(self.coefficients > tol))


def schmidt(psi: PureState, cut: Sequence[int] | int) -> SchmidtDecomposition:
    """Schmidt decomposition across the bipartition (cut | rest)."""
    if isinstance(cut, (int, np.integer)):
        cut = tuple(range(int(cut)))
    cut = tuple(sorted(set(int(c) for c in cut)))
    n = len(psi.dims)
    if not cut or len(cut) == n or any(c < 0 or c >= n for c in cut):
        raise ValueError(f"cut {cut} is not a proper bipartition of {n} subsystems")
    rest = tuple(i for i in range(n) if i not in cut)
    perm = cut + rest
    da = int(np.prod([psi.dims[i] for i in cut]))
    db = int(np.prod([psi.dims[i] for i in rest]))
    mat = psi.amps.reshape(psi.dims).transpose(perm).reshape(da, db)
    u, s, vh = np.linalg.svd(mat, full_matrices=False)
    return SchmidtDecomposition(s, u, vh.T, cut, psi.dims, perm)


def entanglement_entropy(psi: PureState, cut: Sequence[int] | int) -> float:
    """Entropy of the reduced state across the cut, in bits."""
    s = schmidt(psi, cut).coefficients
    probs = s * s
    probs = probs / probs.sum()
    return shannon_entropy(probs)


# ---------------------------------------------------------------------------
# teleportation
# ---------------------------------------------------------------------------

_CORRECTIONS = (I2, PAULI_Z, PAULI_X, PAULI_Z @ PAULI_X)


@dataclass(frozen=True)
class TeleportTranscript:
    outcome: int                 # Bell-basis outcome index (Phi+, Phi-, Psi+, Psi-)
    probability: float
    correction: np.ndarray
    output: PureState            # bystanders + Bob's qubit, in that order


def teleport(psi: PureState, seed: int | None = None,
             force_outcome: int | None = None) -> TeleportTranscript:
    """Teleport the last qubit of ``psi`` through a shared |Phi+> pair.

    Any leading subsystems of ``psi`` ride along as untouched bystanders,
    so teleporting half of an entangled state is the same call.  The
    returned output state carries the bystanders followed by Bob's qubit.
    """
    if psi.dims[-1] != 2:
        raise ValueError("the teleported subsystem (last) must be a qubit")
    bys = psi.dims[:-1]
    d_r = int(np.prod(bys)) if bys else 1
    full = np.kron(psi.amps, phi_plus().amps)  # R, A', A, B
    t = full.reshape(d_r, 2, 2, 2)
    probs = np.empty(4)
    residues = []
    for i, eta in enumerate(bell_basis()):
        e = eta.amps.reshape(2, 2).conj()
        v = np.einsum("rabB,ab->rB", t, e)
        p = float(np.vdot(v, v).real)
        probs[i] = p
        residues.append(v)
    if force_outcome is not None:
        outcome = int(force_outcome)
        if outcome not in range(4):
            raise ValueError("outcome must be in 0..3")
    else:
        rng = np.random.default_rng(seed)
        outcome = int(rng.choice(4, p=probs / probs.sum()))
    p = probs[outcome]
    if p < 1e-12:
        raise ValueError(f"outcome {outcome} has probability ~0")
    v = residues[outcome] / math.sqrt(p)
    fixed = np.einsum("rB,bB->rb", v, _CORRECTIONS[outcome]).reshape(-1)
    out_dims = bys + (2,) if bys else (2,)
    return TeleportTranscript(outcome, p, _CORRECTIONS[outcome],
                              PureState(fixed, out_dims))


def unconditioned_bob_state(psi: PureState) -> np.ndarray:
    """Bob's state averaged over unknown outcomes: the maximally mixed qubit."""
    if psi.dims != (2,):
        raise ValueError("expects a single-qubit message")
    rho = np.outer(psi.amps, psi.amps.conj())
    out = np.zeros((2, 2), dtype=complex)
    for s in (I2, PAULI_X, PAULI_Z @ PAULI_X, PAULI_Z):
        out += s @ rho @ s.conj().T
    return out / 4


# ---------------------------------------------------------------------------
# distillation / dilution bookkeeping
# ---------------------------------------------------------------------------

def distillation_yield(spectrum: Sequence[float], n: int, seed: int = 0) -> float:
    """log2 of the type-class size drawn from n iid copies of the spectrum.

    Samples a type t ~ Multinomial(n, spectrum) and returns the exact
    log2 binomial weight of its class; divided by n this concentrates at
    the Shannon entropy of the spectrum.
    """
    p = np.asarray(spectrum, dtype=float)
    if np.any(p < 0) or abs(p.sum() - 1.0) > 1e-9:
        raise ValueError("spectrum must be a probability distribution")
    rng = np.random.default_rng(seed)
    counts = rng.multinomial(n, p)
    size = 1
    rem = n
    for c in counts:
        size *= math.comb(rem, int(c))
        rem -= int(c)
    return _log2_bigint(size) if size > 1 else 0.0


def dilution_rank_bound(psi: PureState, cut: Sequence[int] | int,
                        n: int, delta: float) -> int:
    """ceil(n (S + delta)) qubits suffice per the typical-subspace argument."""
    if delta < 0 or n < 1:
        raise ValueError("need delta >= 0 and n >= 1")
    s = entanglement_entropy(psi, cut)
    return math.ceil(n * (s + delta) - 1e-12)


# ---------------------------------------------------------------------------
# three qubits: SLOCC classes and the hyperdeterminant
# ---------------------------------------------------------------------------

class SloccClass(enum.Enum):
    PRODUCT = "Product"
    BIPARTITE_AB = "BipartiteAB"
    BIPARTITE_AC = "BipartiteAC"
    BIPARTITE_BC = "BipartiteBC"
    W = "W"
    GHZ = "GHZ"
    UNDETERMINED = "Undetermined"


def slocc_apply(ops: Sequence[np.ndarray], psi: PureState) -> PureState:
    """Apply local invertible operators and renormalize."""
    if len(ops) != len(psi.dims):
        raise ValueError("one operator per subsystem is required")
    big = tensor(*ops)
    v = big @ psi.amps
    nrm = np.linalg.norm(v)
    if nrm < 1e-12:
        raise ValueError("operators annihilate the state")
    return PureState(v / nrm, psi.dims)


def hyperdeterminant(psi: PureState) -> complex:
    """Cayley hyperdeterminant of a three-qubit amplitude tensor."""
    if psi.dims != (2, 2, 2):
        raise ValueError("hyperdeterminant is defined for three qubits")
    t = psi.amps.reshape(2, 2, 2)

    def a(i, j, k):
        return t[i, j, k]

    d1 = (a(0, 0, 0) ** 2 * a(1, 1, 1) ** 2 + a(0, 0, 1) ** 2 * a(1, 1, 0) ** 2
          + a(0, 1, 0) ** 2 * a(1, 0, 1) ** 2 + a(1, 0, 0) ** 2 * a(0, 1, 1) ** 2)
    d2 = (a(0, 0, 0) * a(1, 1, 1) * a(0, 1, 1) * a(1, 0, 0)
          + a(0, 0, 0) * a(1, 1, 1) * a(1, 0, 1) * a(0, 1, 0)
          + a(0, 0, 0) * a(1, 1, 1) * a(1, 1, 0) * a(0, 0, 1)
          + a(0, 1, 1) * a(1, 0, 0) * a(1, 0, 1) * a(0, 1, 0)
          + a(0, 1, 1) * a(1, 0, 0) * a(1, 1, 0) * a(0, 0, 1)
          + a(1, 0, 1) * a(0, 1, 0) * a(1, 1, 0) * a(0, 0, 1))
    d3 = (a(0, 0, 0) * a(1, 1, 0) * a(1, 0, 1) * a(0, 1, 1)
          + a(1, 1, 1) * a(0, 0, 1) * a(0, 1, 0) * a(1, 0, 0))
    return d1 - 2 * d2 + 4 * d3


def _marginal_second_eigenvalue(psi: PureState, party: int) -> float:
    rho = psi.marginal([party]).mat
    vals = np.linalg.eigvalsh(rho)
    return float(vals[0])


def classify_three_qubit(psi: PureState,
                         rank_tol: float = RANK_TOL,
                         hyperdet_tol: float = HYPERDET_TOL) -> SloccClass:
    """SLOCC class from marginal ranks plus the hyperdeterminant.

    Returns UNDETERMINED (never a silent guess) when a marginal eigenvalue
    or the hyperdeterminant magnitude falls inside the tolerance band
    around its decision threshold.
    """
    if psi.dims != (2, 2, 2):
        raise ValueError("classification is defined for three qubits")
    lo_r, hi_r = _BAND[0] * rank_tol, _BAND[1] * rank_tol
    seconds = [_marginal_second_eigenvalue(psi, k) for k in range(3)]
    if any(lo_r <= s <= hi_r for s in seconds):
        return SloccClass.UNDETERMINED
    pure_marginals = [s < rank_tol for s in seconds]
    n_pure = sum(pure_marginals)
    if n_pure >= 2:
        return SloccClass.PRODUCT
    if n_pure == 1:
        idx = pure_marginals.index(True)
        return (SloccClass.BIPARTITE_BC, SloccClass.BIPARTITE_AC,
                SloccClass.BIPARTITE_AB)[idx]
    hd = abs(hyperdeterminant(psi))
    if _BAND[0] * hyperdet_tol <= hd <= _BAND[1] * hyperdet_tol:
        return SloccClass.UNDETERMINED
    return SloccClass.GHZ if hd > hyperdet_tol else SloccClass.W


# ---------------------------------------------------------------------------
# one-body marginal problem for three qubits
# ---------------------------------------------------------------------------

def three_qubit_spectra_compatible(lmax: Sequence[float], tol: float = 1e-12) -> bool:
    """Can (lmax_A, lmax_B, lmax_C) arise as largest marginal eigenvalues?

    Each lambda must lie in [1/2, 1] and satisfy the three polygon-type
    inequalities lambda_i + lambda_j <= 1 + lambda_k.
    """
    l = [float(x) for x in lmax]
    if len(l) != 3 or any(x < 0.5 - tol or x > 1 + tol for x in l):
        raise ValueError("largest eigenvalues must lie in [1/2, 1]")
    for k in range(3):
        i, j = [x for x in range(3) if x != k]
        if l[i] + l[j] > 1 + l[k] + tol:
            return False
    return True


def three_qubit_state_from_spectra(lmax: Sequence[float]) -> PureState:
    """A pure state a|000> + b|011> + c|101> + d|110> with given marginals.

    Solves a^2 = (l1 + l2 + l3 - 1)/2, b^2 = l1 - a^2, c^2 = l2 - a^2,
    d^2 = l3 - a^2; raises for incompatible spectra.
    """
    l1, l2, l3 = (float(x) for x in lmax)
    if not three_qubit_spectra_compatible((l1, l2, l3)):
        raise ValueError("spectra violate a compatibility inequality")
    a2 = (l1 + l2 + l3 - 1) / 2
    coeffs = [a2, l1 - a2, l2 - a2, l3 - a2]
    coeffs = [max(x, 0.0) for x in coeffs]
    amps = np.zeros(8, dtype=complex)
    amps[0b000] = math.sqrt(coeffs[0])
    amps[0b011] = math.sqrt(coeffs[1])
    amps[0b101] = math.sqrt(coeffs[2])
    amps[0b110] = math.sqrt(coeffs[3])
    amps /= np.linalg.norm(amps)
    return PureState(amps, (2, 2, 2))


def w_polytope_check(lmax: Sequence[float], tol: float = 1e-9) -> bool:
    """lambda_A + lambda_B + lambda_C >= 2 characterizes W-class marginals."""
    l = [float(x) for x in lmax]
    if len(l) != 3:
        raise ValueError("need three largest eigenvalues")
    return sum(l) >= 2 - tol


def largest_marginal_eigenvalues(psi: PureState) -> tuple[float, float, float]:
    out = []
    for k in range(len(psi.dims)):
        vals = np.linalg.eigvalsh(psi.marginal([k]).mat)
        out.append(float(vals[-1]))
    return tuple(out)  # type: ignore[return-value]
