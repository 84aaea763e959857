"""Symmetric subspaces, Schur-Weyl multiplicities, spectrum estimation,
and finite de Finetti bounds."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .entropy import binary_relative_entropy
from .states import DensityMatrix, PAULI_X, PAULI_Y, PAULI_Z, PureState
from .tensor import hermitian_eig, permutation_operator, tensor

SIZE_CAP = 4096


def symmetric_dimension(d: int, n: int) -> int:
    """dim Sym^n(C^d) = C(n + d - 1, n)."""
    return math.comb(n + d - 1, n)


def symmetric_projector(d: int, n: int, size_cap: int = SIZE_CAP) -> np.ndarray:
    """Projector onto Sym^n(C^d), assembled from normalized type vectors.

    For each occupation type t the vector is the uniform superposition of
    the C(n; t) computational strings with that type; these are orthonormal
    and span the symmetric subspace.
    """
    dim = d**n
    if dim > size_cap:
        raise ValueError(f"operator size {dim} exceeds cap {size_cap}")
    buckets: dict[tuple[int, ...], list[int]] = {}
    for xs in itertools.product(range(d), repeat=n):
        t = tuple(xs.count(a) for a in range(d))
        idx = 0
        for x in xs:
            idx = idx * d + x
        buckets.setdefault(t, []).append(idx)
    proj = np.zeros((dim, dim), dtype=complex)
    for idxs in buckets.values():
        v = np.zeros(dim, dtype=complex)
        v[idxs] = 1.0 / math.sqrt(len(idxs))
        proj += np.outer(v, v)
    return proj


def symmetric_projector_from_permutations(d: int, n: int,
                                          size_cap: int = SIZE_CAP) -> np.ndarray:
    """(1/n!) sum_pi P_pi; cross-check route, feasible for small n."""
    dim = d**n
    if dim > size_cap:
        raise ValueError(f"operator size {dim} exceeds cap {size_cap}")
    acc = np.zeros((dim, dim), dtype=complex)
    count = 0
    for perm in itertools.permutations(range(n)):
        acc += permutation_operator(d, list(perm), size_cap=size_cap)
        count += 1
    return acc / count


def haar_moment_deviation(d: int, n: int, samples: int, seed: int = 0) -> dict[str, float]:
    """Monte Carlo check of E[phi^(x n)] = Pi_sym / dim Sym^n.

    Returns the operator-norm deviation of the sample mean together with a
    crude scale for the expected statistical fluctuation.
    """
    rng = np.random.default_rng(seed)
    dim = d**n
    acc = np.zeros((dim, dim), dtype=complex)
    for _ in range(samples):
        v = rng.normal(size=d) + 1j * rng.normal(size=d)
        v /= np.linalg.norm(v)
        w = v
        for _ in range(n - 1):
            w = np.kron(w, v)
        acc += np.outer(w, w.conj())
    mean = acc / samples
    target = symmetric_projector(d, n) / symmetric_dimension(d, n)
    dev = float(np.linalg.norm(mean - target, ord=2))
    return {"deviation": dev, "fluctuation_scale": 1.0 / math.sqrt(samples)}


def estimation_overlap_exact(d: int, n: int, k: int) -> Fraction:
    """Exact overlap ratio dim Sym^n / dim Sym^{n+k} >= 1 - d k / n."""
    if d < 1 or n < 1 or k < 0:
        raise ValueError("need d >= 1, n >= 1, k >= 0")
    return Fraction(symmetric_dimension(d, n), symmetric_dimension(d, n + k))


def estimation_overlap(d: int, n: int, k: int) -> float:
    return float(estimation_overlap_exact(d, n, k))


def definetti_error_bound(d: int, n: int, k: int) -> float:
    """2 sqrt(1 - dim Sym^n / dim Sym^{n+k}) <= 2 sqrt(d k / n)."""
    return 2 * math.sqrt(max(0.0, 1.0 - estimation_overlap(d, n, k)))


def symmetric_purification(rho: DensityMatrix, tol: float = 1e-8) -> PureState:
    """Permutation-invariant purification of a permutation-invariant state.

    Uses |psi> = (sqrt(rho) x I) |Gamma> with |Gamma> = sum_x |x>|x>
    unnormalized; the copy system inherits the symmetry because
    (A^T x I)|Gamma> = (I x A)|Gamma>.
    """
    dims = rho.dims
    if len(set(dims)) != 1 or len(dims) < 2:
        raise ValueError("state must live on n >= 2 equal subsystems")
    d, n = dims[0], len(dims)
    dim = rho.dim
    # invariance check on adjacent transpositions (they generate S_n)
    for i in range(n - 1):
        perm = list(range(n))
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
        p = permutation_operator(d, perm, size_cap=SIZE_CAP)
        if np.max(np.abs(p @ rho.mat @ p.conj().T - rho.mat)) > tol:
            raise ValueError("state is not permutation invariant")
    eig = hermitian_eig(rho.mat)
    vals = np.clip(eig.eigenvalues, 0.0, None)
    root = (eig.eigenvectors * np.sqrt(vals)) @ eig.eigenvectors.conj().T
    amps = root.reshape(-1)  # (sqrt(rho) x I)|Gamma> in row-major layout
    return PureState(amps / np.linalg.norm(amps), dims + dims)


# ---------------------------------------------------------------------------
# qubit Schur-Weyl: multiplicities, spin blocks, spectrum estimation
# ---------------------------------------------------------------------------

def _j_values(n: int) -> list[float]:
    return [n / 2 - m for m in range(n // 2 + 1)]


def spin_multiplicity(n: int, j: float) -> int:
    """m_j^(n) = C(n, n/2 - j) - C(n, n/2 - j - 1), exact integers."""
    two_j = round(2 * j)
    if two_j < 0 or (n - two_j) % 2 != 0:
        return 0
    k = (n - two_j) // 2
    if k < 0 or k > n:
        return 0
    return math.comb(n, k) - (math.comb(n, k - 1) if k >= 1 else 0)


def spin_multiplicity_recursive(n: int, j: float) -> int:
    """Pascal-style recursion m_j^(n+1) = m_{j+1/2}^(n) + m_{j-1/2}^(n)."""
    table = {0.0: 1}  # n = 0: single trivial block
    for m in range(1, n + 1):
        new: dict[float, int] = {}
        for jv in _j_values(m):
            new[jv] = table.get(jv + 0.5, 0) + (table.get(jv - 0.5, 0) if jv > 0 else 0)
        table = new
    return table.get(float(j), 0)


def spin_multiplicity_bound(n: int, j: float) -> float:
    """m_j^(n) <= 2^{n h(1/2 + j/n)} via the binomial entropy bound."""
    x = 0.5 + j / n
    if not 0.0 <= x <= 1.0:
        raise ValueError("j/n out of range")
    from .entropy import binary_entropy

    return 2.0 ** (n * binary_entropy(min(x, 1.0)))


@dataclass(frozen=True)
class SpinBlock:
    j: float
    multiplicity: int
    projector: np.ndarray


def spin_projectors(n: int, tol: float = 1e-7, size_cap: int = SIZE_CAP) -> list[SpinBlock]:
    """Total-spin projectors on n qubits from the spectrum of J^2.

    Eigenvalues are clustered to j(j+1) within ``tol``; each block has
    dimension (2j + 1) m_j.
    """
    dim = 2**n
    if dim > size_cap:
        raise ValueError(f"operator size {dim} exceeds cap {size_cap}")
    js = [np.zeros((dim, dim), dtype=complex) for _ in range(3)]
    paulis = (PAULI_X, PAULI_Y, PAULI_Z)
    for i in range(n):
        for a, s in enumerate(paulis):
            ops = [np.eye(2, dtype=complex)] * n
            ops[i] = s / 2
            js[a] += tensor(*ops)
    j2 = sum(j @ j for j in js)
    vals, vecs = np.linalg.eigh(j2)
    blocks = []
    for j in _j_values(n):
        target = j * (j + 1)
        sel = np.abs(vals - target) < tol
        if not np.any(sel):
            continue
        v = vecs[:, sel]
        blocks.append(SpinBlock(j, spin_multiplicity(n, j), v @ v.conj().T))
    return blocks


def spectrum_estimation_distribution(r: float, n: int) -> dict[float, float]:
    """Pr[j] for measuring total spin on n copies of a qubit with spectrum
    (1/2 + r, 1/2 - r).

    Pr[j] = m_j q^{n/2-j} p^{n/2-j} sum_{m=-j}^{j} p^{j+m} q^{j-m}
    with p = 1/2 + r, q = 1/2 - r.
    """
    if not 0.0 <= r <= 0.5:
        raise ValueError("r must lie in [0, 1/2]")
    p, q = 0.5 + r, 0.5 - r
    out: dict[float, float] = {}
    for j in _j_values(n):
        half = n / 2 - j  # integer by construction
        inner = sum(p ** (j + m) * q ** (j - m) for m in
                    [j - t for t in range(int(2 * j) + 1)])
        out[j] = spin_multiplicity(n, j) * (p * q) ** half * inner
    return out


def spectrum_tail_bound(r: float, n: int, j: float) -> float:
    """Keyl-Werner exponential bound on Pr[j], vacuous (inf) at r = 0.

    Pr[j] <= c * 2^{-n delta(1/2 + j/n || 1/2 + r)} with c = (1/2 + r)/(2r).
    """
    if r <= 0:
        return math.inf
    x = 0.5 + j / n
    dl = binary_relative_entropy(min(x, 1.0), 0.5 + r)
    if math.isinf(dl):
        return 0.0
    return (0.5 + r) / (2 * r) * 2.0 ** (-n * dl)


def sample_spin_outcomes(r: float, n: int, size: int, seed: int = 0) -> np.ndarray:
    """Draw total-spin outcomes j from the exact distribution."""
    dist = spectrum_estimation_distribution(r, n)
    js = np.array(sorted(dist))
    ps = np.array([dist[j] for j in js])
    ps = np.clip(ps, 0, None)
    ps /= ps.sum()
    rng = np.random.default_rng(seed)
    return rng.choice(js, size=size, p=ps)


@dataclass(frozen=True)
class SpectrumEstimate:
    r_hat: float
    n: int
    samples: int
    deviation: float | None
    tail_bound: float | None


def keyl_werner_estimate(outcomes: Sequence[float], n: int,
                         r_true: float | None = None) -> SpectrumEstimate:
    """Point estimate r_hat = mean(j)/n; with the true r supplied, also the
    exponential bound on seeing the observed deviation in a single shot."""
    js = np.asarray(outcomes, dtype=float)
    if js.size == 0:
        raise ValueError("need at least one outcome")
    r_hat = float(js.mean() / n)
    dev = bound = None
    if r_true is not None:
        dev = abs(r_hat - r_true)
        bound = 0.0
        for j in _j_values(n):
            if abs(j / n - r_true) >= dev and dev > 0:
                bound += min(1.0, spectrum_tail_bound(r_true, n, j))
        bound = min(1.0, bound) if dev > 0 else 1.0
    return SpectrumEstimate(r_hat, n, int(js.size), dev, bound)
