"""Dense complex tensor calculus on composite Hilbert spaces.

Composite indices are big-endian: the leftmost subsystem is the most
significant digit, matching the ordering produced by ``numpy.kron``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

#: Refuse to materialize operators larger than this (rows) unless overridden.
DEFAULT_SIZE_CAP = 4096

HERMITICITY_TOL = 1e-9


def _as_matrix(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m


def _check_dims(m: np.ndarray, dims: Sequence[int]) -> tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    if any(d < 1 for d in dims):
        raise ValueError(f"subsystem dimensions must be positive, got {dims}")
    total = int(np.prod(dims))
    if m.shape[0] != total:
        raise ValueError(
            f"dims {dims} imply size {total}, but matrix has size {m.shape[0]}"
        )
    return dims


def tensor(*ops: np.ndarray) -> np.ndarray:
    """Kronecker product of one or more matrices (or vectors)."""
    if not ops:
        raise ValueError("tensor() needs at least one operand")
    out = np.asarray(ops[0], dtype=complex)
    for op in ops[1:]:
        out = np.kron(out, np.asarray(op, dtype=complex))
    return out


def partial_trace(m: np.ndarray, dims: Sequence[int], keep: Iterable[int]) -> np.ndarray:
    """Trace out every subsystem not listed in ``keep``.

    ``keep`` is a collection of subsystem indices into ``dims``; the result
    carries the kept subsystems in their original relative order.
    """
    m = _as_matrix(m)
    dims = _check_dims(m, dims)
    n = len(dims)
    keep = sorted(set(int(k) for k in keep))
    if any(k < 0 or k >= n for k in keep):
        raise IndexError(f"keep indices {keep} out of range for {n} subsystems")
    t = m.reshape(dims + dims)
    # Contract traced-out pairs one at a time, from the right.
    traced = [i for i in range(n) if i not in keep]
    for i in sorted(traced, reverse=True):
        t = np.trace(t, axis1=i, axis2=i + (t.ndim // 2))
    dkeep = int(np.prod([dims[k] for k in keep])) if keep else 1
    return t.reshape(dkeep, dkeep)


def partial_transpose(m: np.ndarray, dims: Sequence[int], subsystems: Iterable[int] | int) -> np.ndarray:
    """Transpose the given subsystem(s) only."""
    m = _as_matrix(m)
    dims = _check_dims(m, dims)
    n = len(dims)
    if isinstance(subsystems, (int, np.integer)):
        subsystems = [int(subsystems)]
    subs = sorted(set(int(s) for s in subsystems))
    if any(s < 0 or s >= n for s in subs):
        raise IndexError(f"subsystem indices {subs} out of range for {n} subsystems")
    t = m.reshape(dims + dims)
    axes = list(range(2 * n))
    for s in subs:
        axes[s], axes[n + s] = axes[n + s], axes[s]
    return t.transpose(axes).reshape(m.shape)


def is_hermitian(m: np.ndarray, tol: float = HERMITICITY_TOL) -> bool:
    m = np.asarray(m, dtype=complex)
    return m.ndim == 2 and m.shape[0] == m.shape[1] and np.max(np.abs(m - m.conj().T)) <= tol


@dataclass(frozen=True)
class EigDecomposition:
    """Eigenvalues in descending order with matching eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def hermitian_eig(m: np.ndarray, tol: float = HERMITICITY_TOL) -> EigDecomposition:
    """Spectral decomposition of a Hermitian matrix.

    Rejects inputs with Hermiticity defect above ``tol``; below that the
    input is symmetrized before factorization, so the returned eigenvalues
    are exactly real.
    """
    m = _as_matrix(m)
    defect = np.max(np.abs(m - m.conj().T)) if m.size else 0.0
    if defect > tol:
        raise ValueError(f"matrix is not Hermitian (defect {defect:.3e} > {tol:.1e})")
    h = (m + m.conj().T) / 2
    vals, vecs = np.linalg.eigh(h)
    order = np.argsort(vals)[::-1]
    return EigDecomposition(vals[order], vecs[:, order])


def trace_norm(m: np.ndarray) -> float:
    """Sum of singular values."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2:
        raise ValueError(f"expected a matrix, got ndim {m.ndim}")
    return float(np.sum(np.linalg.svd(m, compute_uv=False)))


def trace_distance(a: np.ndarray, b: np.ndarray, tol: float = HERMITICITY_TOL) -> float:
    """D(a, b) = (1/2)||a - b||_1 for Hermitian a, b of equal size."""
    a = _as_matrix(a)
    b = _as_matrix(b)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    if not is_hermitian(a, tol) or not is_hermitian(b, tol):
        raise ValueError("trace_distance expects Hermitian operands")
    return 0.5 * trace_norm(a - b)


def permutation_operator(d: int, perm: Sequence[int], size_cap: int = DEFAULT_SIZE_CAP) -> np.ndarray:
    """Unitary permuting n subsystems of equal dimension d.

    ``perm`` lists images: position i is sent to position perm[i], i.e.
    P|i_1 ... i_n> = |j_1 ... j_n> with j_{perm[k]} = i_k.  Composition
    satisfies P(pi) @ P(sigma) = P(pi o sigma).
    """
    n = len(perm)
    if sorted(perm) != list(range(n)):
        raise ValueError(f"{perm} is not a permutation of 0..{n - 1}")
    dim = d**n
    if dim > size_cap:
        raise ValueError(f"operator size {dim} exceeds cap {size_cap}")
    t = np.eye(dim).reshape((d,) * (2 * n))
    # Axis k of the "row" block corresponds to output slot k; pull input
    # slot inv[k] into it.
    inv = [0] * n
    for i, p in enumerate(perm):
        inv[p] = i
    axes = inv + list(range(n, 2 * n))
    return t.transpose(axes).reshape(dim, dim).astype(complex)


def swap_operator(d: int, size_cap: int = DEFAULT_SIZE_CAP) -> np.ndarray:
    """Flip operator F on C^d x C^d: F|a,b> = |b,a>."""
    return permutation_operator(d, [1, 0], size_cap=size_cap)
