import itertools

import numpy as np
import pytest

from qilab.tensor import (
    EigDecomposition,
    hermitian_eig,
    partial_trace,
    partial_transpose,
    permutation_operator,
    swap_operator,
    tensor,
    trace_distance,
    trace_norm,
)

RNG = np.random.default_rng(42)


def random_hermitian(d, rng=RNG):
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return (g + g.conj().T) / 2


def test_tensor_matches_kron_chain():
    a, b, c = (RNG.normal(size=(2, 2)) for _ in range(3))
    assert np.allclose(tensor(a, b, c), np.kron(np.kron(a, b), c))


def test_partial_trace_of_product_factors():
    a = random_hermitian(2)
    b = random_hermitian(3)
    m = tensor(a, b)
    assert np.allclose(partial_trace(m, (2, 3), [0]), a * np.trace(b))
    assert np.allclose(partial_trace(m, (2, 3), [1]), b * np.trace(a))


def test_partial_trace_preserves_trace_and_einsum_oracle():
    dims = (2, 3, 2)
    m = random_hermitian(12)
    for keep in ([0], [1], [2], [0, 2], [1, 2]):
        sub = partial_trace(m, dims, keep)
        assert abs(np.trace(sub) - np.trace(m)) < 1e-12
    # independent einsum oracle for keep = [0, 2]
    t = m.reshape(2, 3, 2, 2, 3, 2)
    oracle = np.einsum("ajbAjB->abAB", t).reshape(4, 4)
    assert np.allclose(partial_trace(m, dims, [0, 2]), oracle)


def test_partial_transpose_involution_and_product():
    dims = (2, 3)
    m = random_hermitian(6)
    pt = partial_transpose(m, dims, 0)
    assert np.allclose(partial_transpose(pt, dims, 0), m)
    assert abs(np.trace(pt) - np.trace(m)) < 1e-12
    a, b = random_hermitian(2), random_hermitian(3)
    assert np.allclose(partial_transpose(tensor(a, b), dims, 0), tensor(a.T, b))
    # transposing every subsystem is the full transpose
    assert np.allclose(partial_transpose(m, dims, [0, 1]), m.T)


def test_hermitian_eig_reconstruction_and_order():
    m = random_hermitian(7)
    eig = hermitian_eig(m)
    assert isinstance(eig, EigDecomposition)
    assert np.allclose(eig.reconstruct(), m, atol=1e-12)
    assert np.all(np.diff(eig.eigenvalues) <= 1e-14)
    v = eig.eigenvectors
    assert np.allclose(v.conj().T @ v, np.eye(7), atol=1e-12)


def test_hermitian_eig_rejects_nonhermitian():
    m = np.array([[0.0, 1.0], [0.0, 0.0]])
    with pytest.raises(ValueError):
        hermitian_eig(m)


def test_trace_norm_is_sum_of_abs_eigenvalues():
    m = random_hermitian(5)
    vals = np.linalg.eigvalsh(m)
    assert abs(trace_norm(m) - np.sum(np.abs(vals))) < 1e-10


def test_trace_distance_basic_properties():
    a = np.diag([1.0, 0.0]).astype(complex)
    b = np.diag([0.0, 1.0]).astype(complex)
    assert abs(trace_distance(a, b) - 1.0) < 1e-12
    assert trace_distance(a, a) < 1e-12
    with pytest.raises(ValueError):
        trace_distance(a, np.array([[0, 1], [0, 0]], dtype=complex))


def test_permutation_operator_action_and_composition():
    d, n = 2, 3
    for pi in itertools.permutations(range(n)):
        p = permutation_operator(d, pi)
        # action on a basis ket
        bits = (1, 0, 1)
        v = np.zeros(d**n)
        v[int("".join(map(str, bits)), 2)] = 1.0
        out = [0] * n
        for k in range(n):
            out[pi[k]] = bits[k]
        w = np.zeros(d**n)
        w[int("".join(map(str, out)), 2)] = 1.0
        assert np.allclose(p @ v, w)
    for pi in itertools.permutations(range(n)):
        for sg in itertools.permutations(range(n)):
            comp = tuple(pi[sg[i]] for i in range(n))
            lhs = permutation_operator(d, pi) @ permutation_operator(d, sg)
            assert np.allclose(lhs, permutation_operator(d, comp))


def test_swap_operator_and_size_cap():
    f = swap_operator(3)
    a = RNG.normal(size=3)
    b = RNG.normal(size=3)
    assert np.allclose(f @ np.kron(a, b), np.kron(b, a))
    assert np.allclose(f @ f, np.eye(9))
    with pytest.raises(ValueError):
        permutation_operator(2, list(range(13)))  # 8192 > 4096


def test_bad_inputs():
    with pytest.raises(ValueError):
        partial_trace(np.eye(6), (2, 2), [0])
    with pytest.raises(IndexError):
        partial_trace(np.eye(6), (2, 3), [5])
    with pytest.raises(IndexError):
        partial_transpose(np.eye(6), (2, 3), 2)
    with pytest.raises(ValueError):
        permutation_operator(2, [0, 0, 1])
