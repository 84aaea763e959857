"""Entanglement detection: PPT, witnesses, k-extendibility by alternating
projections, data hiding, and symmetric-extension support functions."""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .states import DensityMatrix, PureState, phi_plus, random_pure_state
from .tensor import (
    hermitian_eig,
    partial_trace,
    partial_transpose,
    permutation_operator,
    tensor,
    trace_norm,
)


@dataclass(frozen=True)
class PptVerdict:
    is_ppt: bool
    min_eigenvalue: float
    spectrum: np.ndarray


def ppt_check(rho: DensityMatrix, transpose_on: Sequence[int] | int = 0,
              tol: float = 1e-10) -> PptVerdict:
    """Partial-transpose spectrum test; a negative eigenvalue certifies
    entanglement."""
    pt = partial_transpose(rho.mat, rho.dims, transpose_on)
    spec = hermitian_eig(pt).eigenvalues
    lo = float(spec[-1])
    return PptVerdict(lo >= -tol, lo, spec)


def witness_value(w: np.ndarray, rho: DensityMatrix) -> float:
    return float(np.trace(np.asarray(w) @ rho.mat).real)


def flip_witness() -> np.ndarray:
    """W = I - 2 |Phi+><Phi+| on two qubits: -1 on Phi+, >= 0 on separables."""
    return np.eye(4) - 2 * phi_plus().density().mat


def chsh_witness() -> np.ndarray:
    """Witness from the CHSH observables: W = I/sqrt(2) - B/2.

    B is the Bell operator for A0 = Z, A1 = X and the rotated Hadamard-type
    Bob observables.  Product states satisfy tr(B sigma) <= sqrt(2) (Bloch
    Cauchy-Schwarz for these fixed observables), so tr(W sigma) >= 0 on the
    separable set, while tr(W Phi+) = -1/sqrt(2).
    """
    from .chsh import optimal_observables, bell_operator

    a0, a1, b0, b1 = optimal_observables()
    b = bell_operator(a0, a1, b0, b1)
    return np.eye(4) / math.sqrt(2) - b / 2


def eigen_witness(rho: DensityMatrix, transpose_on: Sequence[int] | int = 0) -> np.ndarray:
    """Witness (|v><v|)^T_A from the most negative eigenvector of rho^T_A."""
    pt = partial_transpose(rho.mat, rho.dims, transpose_on)
    eig = hermitian_eig(pt)
    if eig.eigenvalues[-1] >= 0:
        raise ValueError("state is PPT; no negative eigenvector to build from")
    v = eig.eigenvectors[:, -1]
    return partial_transpose(np.outer(v, v.conj()), rho.dims, transpose_on)


# ---------------------------------------------------------------------------
# k-extendibility via Dykstra-style alternating projections
# ---------------------------------------------------------------------------

class FeasStatus(enum.Enum):
    FEASIBLE = "Feasible"
    INFEASIBLE_EVIDENCE = "InfeasibleEvidence"
    UNDETERMINED = "Undetermined"


@dataclass(frozen=True)
class FeasibilityReport:
    status: FeasStatus
    residual: float
    iterations: int
    extension: np.ndarray | None


def _b_permutations(d_a: int, d_b: int, k: int) -> list[np.ndarray]:
    """Operators permuting the k B factors (identity on A)."""
    ops = []
    for perm in itertools.permutations(range(k)):
        p = permutation_operator(d_b, list(perm), size_cap=2**20)
        ops.append(tensor(np.eye(d_a), p))
    return ops


def k_extendibility(rho: DensityMatrix, k: int,
                    eps_feasible: float = 1e-7,
                    eps_gap: float = 1e-4,
                    max_iterations: int = 5000,
                    plateau_window: int = 100,
                    plateau_rel: float = 1e-10) -> FeasibilityReport:
    """Search for a permutation-invariant k-extension of a bipartite state.

    Dykstra's alternating projections between the PSD cone (eigenvalue
    clipping, with correction term) and the affine set of operators that
    are invariant under permuting the B factors and whose A B_1 marginal
    equals rho.  The affine projection is exact: group-average first, then
    solve for the marginal correction inside the invariant subspace.

    A residual below ``eps_feasible`` yields Feasible with the extension
    attached; a residual plateau above ``eps_gap`` is reported as
    InfeasibleEvidence (the gap lower-bounds the distance between the two
    sets); everything else is Undetermined.
    """
    if len(rho.dims) != 2:
        raise ValueError("state must be explicitly bipartite")
    if k < 2:
        raise ValueError("k must be at least 2")
    d_a, d_b = rho.dims
    dim = d_a * d_b**k
    if dim > 4096:
        raise ValueError(f"extension dimension {dim} exceeds cap")
    perms = _b_permutations(d_a, d_b, k)
    dims_ext = (d_a,) + (d_b,) * k
    d_ab = d_a * d_b
    eye_rest = np.eye(d_b ** (k - 1)) / d_b ** (k - 1)

    def perm_avg(x: np.ndarray) -> np.ndarray:
        return sum(p @ x @ p.conj().T for p in perms) / len(perms)

    # Linear map L(Delta) = tr_{B2..Bk} perm_avg(Delta x I/d^{k-1}); the
    # exact projection onto {perm-invariant, marginal = rho} corrects the
    # group-averaged iterate by perm_avg(L^{-1}(rho - marginal) x I/d^{k-1}).
    basis_images = np.empty((d_ab * d_ab, d_ab * d_ab), dtype=complex)
    for i in range(d_ab):
        for j in range(d_ab):
            e = np.zeros((d_ab, d_ab), dtype=complex)
            e[i, j] = 1.0
            img = partial_trace(perm_avg(tensor(e, eye_rest)), dims_ext, [0, 1])
            basis_images[:, i * d_ab + j] = img.reshape(-1)
    l_inv = np.linalg.pinv(basis_images)

    def _affine_slow(x: np.ndarray) -> np.ndarray:
        y = perm_avg(x)
        need = rho.mat - partial_trace(y, dims_ext, [0, 1])
        delta = (l_inv @ need.reshape(-1)).reshape(d_ab, d_ab)
        return y + perm_avg(tensor(delta, eye_rest))

    if dim <= 32:
        # the projection is affine: flatten it into one matrix-vector product
        offset = _affine_slow(np.zeros((dim, dim), dtype=complex))
        proj_mat = np.empty((dim * dim, dim * dim), dtype=complex)
        probe = np.zeros((dim, dim), dtype=complex)
        for col in range(dim * dim):
            probe.reshape(-1)[col] = 1.0
            proj_mat[:, col] = (_affine_slow(probe) - offset).reshape(-1)
            probe.reshape(-1)[col] = 0.0
        offset_vec = offset.reshape(-1)

        def project_affine(x: np.ndarray) -> np.ndarray:
            return (proj_mat @ x.reshape(-1) + offset_vec).reshape(dim, dim)
    else:
        project_affine = _affine_slow

    def project_psd(x: np.ndarray) -> np.ndarray:
        vals, vecs = np.linalg.eigh((x + x.conj().T) / 2)
        vals = np.clip(vals, 0.0, None)
        return (vecs * vals) @ vecs.conj().T

    x = project_affine(tensor(rho.mat, np.eye(d_b ** (k - 1)) / d_b ** (k - 1)))
    p_corr = np.zeros_like(x)
    history: list[float] = []
    residual = math.inf
    for it in range(1, max_iterations + 1):
        y = project_psd(x + p_corr)
        p_corr = x + p_corr - y
        x = project_affine(y)
        residual = float(np.linalg.norm(y - x))
        history.append(residual)
        if residual <= eps_feasible:
            ext = x  # satisfies the affine constraints by construction
            lo = float(np.min(np.linalg.eigvalsh((ext + ext.conj().T) / 2)))
            if lo >= -1e-6:
                return FeasibilityReport(FeasStatus.FEASIBLE, residual, it, ext)
        if it > plateau_window:
            old = history[-plateau_window - 1]
            if old > 0 and abs(old - residual) / old < plateau_rel:
                if residual > eps_gap:
                    return FeasibilityReport(
                        FeasStatus.INFEASIBLE_EVIDENCE, residual, it, None)
                break  # flat but small: numerically stuck, report Undetermined
    return FeasibilityReport(FeasStatus.UNDETERMINED, residual, it, None)


def slater_state(d: int) -> PureState:
    """The d-party Slater determinant state (1/sqrt(d!)) sum sgn(pi) |pi>."""
    amps = np.zeros(d**d, dtype=complex)
    for perm in itertools.permutations(range(d)):
        idx = 0
        for p in perm:
            idx = idx * d + p
        sgn = 1
        pl = list(perm)
        for i in range(d):
            for j in range(i + 1, d):
                if pl[i] > pl[j]:
                    sgn = -sgn
        amps[idx] = sgn
    amps /= math.sqrt(math.factorial(d))
    return PureState(amps, (d,) * d)


# ---------------------------------------------------------------------------
# data hiding with Werner states
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DataHidingReport:
    d: int
    global_distance: float
    ppt_bias_bound: float


def data_hiding_bias(d: int) -> DataHidingReport:
    """Werner-state hiding pair: globally orthogonal, nearly invisible to
    one-sided (PPT-constrained) measurements.

    The PPT bound evaluates (1/2)|| I/(d(d^2-1)) - Phi+/(d^2-1) ||_1 in
    closed form from its two eigenvalues -1/(d(d+1)) (once) and
    1/(d(d^2-1)) (d^2 - 1 times), giving (d+2)/(2d(d+1)) <= 1/d.
    """
    if d < 2:
        raise ValueError("need d >= 2")
    ppt_bias = 0.5 * (1 / (d * (d + 1)) + 1 / d)
    # the symmetric and antisymmetric Werner states have orthogonal supports
    return DataHidingReport(d, 1.0, ppt_bias)


def data_hiding_bound_matrix(d: int) -> np.ndarray:
    """The bound operator I/(d(d^2-1)) - Phi+/(d^2-1), materialized."""
    phi = phi_plus(d).density().mat
    return np.eye(d * d) / (d * (d * d - 1)) - phi / (d * d - 1)


def bcy_inequality_check(rho: DensityMatrix, measurement: np.ndarray, k: int,
                         samples: int = 200, seed: int = 0) -> dict[str, float | bool]:
    """One-sided sanity check of the k-extendibility distance bound.

    For a 1-LOCC style effect M (0 <= M <= I), the bias |tr M (rho - sigma)|
    minimized over sampled separable sigma must not exceed
    sqrt(2 ln2 * log2(d_A) / k).
    """
    if len(rho.dims) != 2:
        raise ValueError("state must be bipartite")
    d_a, d_b = rho.dims
    m = np.asarray(measurement, dtype=complex)
    rhs = math.sqrt(2 * math.log(2) * math.log2(d_a) / k)
    rng = np.random.default_rng(seed)
    best = math.inf
    for _ in range(samples):
        a = random_pure_state(d_a, rng).amps
        b = random_pure_state(d_b, rng).amps
        v = np.kron(a, b)
        sigma = np.outer(v, v.conj())
        bias = abs(float(np.trace(m @ (rho.mat - sigma)).real))
        best = min(best, bias)
    return {"lhs": best, "rhs": rhs, "holds": best <= rhs + 1e-12}


# ---------------------------------------------------------------------------
# support functions h_Sep and h_{n-ext}
# ---------------------------------------------------------------------------

def h_n_ext(m: np.ndarray, dims: tuple[int, int], n: int,
            size_cap: int = 4096) -> float:
    """Largest eigenvalue of (I x Pi_sym) (M x I^{n-1}) (I x Pi_sym).

    Upper-bounds h_Sep(M) and converges to it at rate d_B/n.
    """
    from .schur import symmetric_projector

    d_a, d_b = dims
    dim = d_a * d_b**n
    if dim > size_cap:
        raise ValueError(f"operator size {dim} exceeds cap {size_cap}")
    pi = symmetric_projector(d_b, n)
    big = tensor(np.asarray(m, dtype=complex), np.eye(d_b ** (n - 1)))
    sand = tensor(np.eye(d_a), pi)
    op = sand @ big @ sand
    return float(np.max(np.linalg.eigvalsh((op + op.conj().T) / 2)))


def h_sep_sampled(m: np.ndarray, dims: tuple[int, int],
                  starts: int = 32, sweeps: int = 200,
                  tol: float = 1e-12, seed: int = 0) -> float:
    """Lower bound on h_Sep(M) by alternating top-eigenvector ascent.

    Fixing one side of a product state, the optimal other side is the top
    eigenvector of the conditioned operator; alternating is monotone, so the
    best value over random restarts is a certified lower bound.
    """
    d_a, d_b = dims
    m = np.asarray(m, dtype=complex).reshape(d_a, d_b, d_a, d_b)
    rng = np.random.default_rng(seed)
    best = -math.inf
    for _ in range(starts):
        b = random_pure_state(d_b, rng).amps
        val = -math.inf
        for _ in range(sweeps):
            ma = np.einsum("aBAb,B,b->aA", m, b.conj(), b)
            vals, vecs = np.linalg.eigh((ma + ma.conj().T) / 2)
            a = vecs[:, -1]
            mb = np.einsum("aBAb,a,A->Bb", m, a.conj(), a)
            vals, vecs = np.linalg.eigh((mb + mb.conj().T) / 2)
            b = vecs[:, -1]
            new = float(vals[-1])
            if new - val < tol:
                val = new
                break
            val = new
        best = max(best, val)
    return best


# ---------------------------------------------------------------------------
# Motzkin-Straus clique correspondence
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MotzkinStrausReport:
    clique_number: int
    optimization_value: float

    @property
    def predicted_value(self) -> float:
        return 1.0 - 1.0 / self.clique_number


def _max_clique(n: int, edges: set[tuple[int, int]]) -> tuple[int, set[int]]:
    adj = [set() for _ in range(n)]
    for i, j in edges:
        adj[i].add(j)
        adj[j].add(i)
    best: set[int] = {0} if n else set()

    def grow(r: set, p: set, x: set):
        nonlocal best
        if not p and not x:
            if len(r) > len(best):
                best = set(r)
            return
        if len(r) + len(p) <= len(best):
            return
        pivot = max(p | x, key=lambda v: len(adj[v] & p))
        for v in list(p - adj[pivot]):
            grow(r | {v}, p & adj[v], x & adj[v])
            p.remove(v)
            x.add(v)

    grow(set(), set(range(n)), set())
    return len(best), best


def motzkin_straus(n: int, edges: Sequence[tuple[int, int]],
                   starts: int = 50, iterations: int = 2000,
                   seed: int = 0) -> MotzkinStrausReport:
    """Clique number vs the quadratic program 2 max sum_{(ij) in E} p_i p_j.

    The optimum equals 1 - 1/w(G); the quadratic side is maximized by
    replicator-dynamics ascent from random simplex starts plus the uniform
    distribution on every maximum clique candidate.
    """
    if n < 1 or n > 20:
        raise ValueError("vertex count must be in 1..20")
    eset = set()
    for i, j in edges:
        if i == j or not (0 <= i < n and 0 <= j < n):
            raise ValueError(f"bad edge ({i}, {j})")
        eset.add((min(i, j), max(i, j)))
    w, clique = _max_clique(n, eset)
    adj = np.zeros((n, n))
    for i, j in eset:
        adj[i, j] = adj[j, i] = 1.0
    rng = np.random.default_rng(seed)
    best = 0.0
    inits = [rng.dirichlet(np.ones(n)) for _ in range(starts)]
    inits.append(np.ones(n) / n)
    uniform_clique = np.zeros(n)
    for v in clique:
        uniform_clique[v] = 1.0 / len(clique)
    inits.append(uniform_clique)
    for p in inits:
        p = p.copy()
        for _ in range(iterations):
            ap = adj @ p
            q = p * ap
            tot = q.sum()
            if tot < 1e-15:
                break
            p = q / tot
        val = float(p @ adj @ p)
        best = max(best, val)
    return MotzkinStrausReport(w, best)


def sep_distance_witnessed(rho: DensityMatrix, w: np.ndarray) -> float:
    """|tr W rho| when negative: how strongly the witness flags the state."""
    return witness_value(w, rho)
