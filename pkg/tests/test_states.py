import math

import numpy as np
import pytest
import scipy.linalg

import qilab as q
from qilab.tensor import swap_operator, tensor

RNG = np.random.default_rng(7)


def test_density_matrix_validation():
    with pytest.raises(ValueError):
        q.DensityMatrix(np.array([[0, 1], [0, 1]], dtype=complex))
    with pytest.raises(ValueError):
        q.DensityMatrix(np.eye(2))  # trace 2
    with pytest.raises(ValueError):
        q.DensityMatrix(np.diag([1.5, -0.5]).astype(complex))
    with pytest.raises(ValueError):
        q.DensityMatrix(np.eye(4) / 4, dims=(2, 3))


def test_pure_state_validation():
    with pytest.raises(ValueError):
        q.PureState(np.array([1.0, 1.0]))
    psi = q.PureState(np.array([1.0, 0.0]))
    assert psi.dims == (2,)


def test_from_ensemble_and_born():
    psis = [q.random_pure_state(2, RNG) for _ in range(3)]
    rho = q.from_ensemble([0.5, 0.3, 0.2], psis)
    povm = q.tetrahedron_povm()
    p = q.born_probabilities(rho, povm)
    assert abs(p.sum() - 1) < 1e-12
    manual = [np.trace(e @ rho.mat).real for e in povm.elements]
    assert np.allclose(p, manual)


def test_post_measurement_and_zero_probability():
    rho = q.maximally_mixed(2)
    proj = np.diag([1.0, 0.0]).astype(complex)
    p, out = q.post_measurement(rho, proj)
    assert abs(p - 0.5) < 1e-12
    assert np.allclose(out.mat, proj)
    zero = q.PureState([0.0, 1.0]).density()
    with pytest.raises(q.ZeroProbabilityError):
        q.post_measurement(zero, proj)
    with pytest.raises(ValueError):
        q.post_measurement(rho, np.array([[0.5, 0], [0, 0.5]], dtype=complex))


def test_naimark_dilation_reproduces_statistics():
    povm = q.tetrahedron_povm()
    dil = q.naimark_dilate(povm)
    u = dil.unitary
    assert np.max(np.abs(u.conj().T @ u - np.eye(8))) < 1e-9
    for p in dil.projectors:
        assert np.max(np.abs(p @ p - p)) < 1e-9
    for _ in range(10):
        rho = q.random_density_matrix(2, RNG)
        want = q.born_probabilities(rho, povm)
        got = dil.probabilities(rho)
        assert np.allclose(want, got, atol=1e-9)


@pytest.mark.parametrize("d", [2, 3])
def test_depolarizing_channel_action(d):
    ch = q.depolarizing_channel(0.37, d)
    rho = q.random_density_matrix(d, RNG)
    out = q.apply_channel(ch, rho)
    want = 0.63 * rho.mat + 0.37 * np.eye(d) / d
    assert np.allclose(out.mat, want, atol=1e-10)


def test_quantum_instrument_averages_to_channel():
    ch = q.depolarizing_channel(0.5, 2)
    rho = q.random_density_matrix(2, RNG)
    branches = q.quantum_instrument(ch, rho)
    avg = sum(p * s.mat for p, s in branches)
    assert np.allclose(avg, q.apply_channel(ch, rho).mat, atol=1e-10)
    assert abs(sum(p for p, _ in branches) - 1) < 1e-10


def test_bloch_roundtrip_and_purity():
    for _ in range(10):
        v = RNG.normal(size=3)
        v = v / np.linalg.norm(v) * RNG.uniform(0, 1)
        rho = q.bloch_state(v)
        assert np.allclose(q.bloch_vector(rho), v, atol=1e-12)
    psi = q.random_pure_state(2, RNG)
    assert abs(np.linalg.norm(q.bloch_vector(psi.density())) - 1) < 1e-10
    with pytest.raises(ValueError):
        q.bloch_state([1.0, 1.0, 1.0])


def test_state_zoo():
    d = 3
    f = swap_operator(d)
    assert np.allclose(q.werner_symmetric(d).mat, (np.eye(9) + f) / (d * (d + 1)))
    assert np.allclose(q.werner_antisymmetric(d).mat, (np.eye(9) - f) / (d * (d - 1)))
    rho = q.noisy_epr(0.25)
    phi = q.phi_plus().density().mat
    assert np.allclose(rho.mat, 0.25 * phi + 0.75 * np.eye(4) / 4)
    basis = q.bell_basis()
    gram = np.array([[abs(np.vdot(a.amps, b.amps)) for a in basis] for b in basis])
    assert np.allclose(gram, np.eye(4), atol=1e-12)
    # GHZ and W single-party marginals
    ghz_m = q.ghz_state().marginal([0]).mat
    assert np.allclose(ghz_m, np.eye(2) / 2)
    w_m = q.w_state().marginal([0]).mat
    assert np.allclose(w_m, np.diag([2 / 3, 1 / 3]))
    assert q.standard_state("noisy_epr", p=0.1).dims == (2, 2)
    with pytest.raises(KeyError):
        q.standard_state("nope")


def test_tetrahedron_povm_is_valid():
    povm = q.tetrahedron_povm()
    total = sum(povm.elements)
    assert np.allclose(total, np.eye(2), atol=1e-12)
    for e in povm.elements:
        assert np.min(np.linalg.eigvalsh(e)) > -1e-12


def test_pauli_rotation_matches_expm():
    axis = RNG.normal(size=3)
    angle = 1.234
    u = q.pauli_rotation(axis, angle)
    n = axis / np.linalg.norm(axis)
    h = n[0] * q.states.PAULI_X + n[1] * q.states.PAULI_Y + n[2] * q.states.PAULI_Z
    assert np.allclose(u, scipy.linalg.expm(1j * angle / 2 * h), atol=1e-12)
    assert np.allclose(u @ u.conj().T, np.eye(2), atol=1e-12)


def test_random_unitary_and_separable_sampler():
    u = q.random_unitary(4, RNG)
    assert np.max(np.abs(u.conj().T @ u - np.eye(4))) < 1e-10
    s = q.random_separable_state(2, 3, RNG)
    assert s.dims == (2, 3)
    assert abs(np.trace(s.mat) - 1) < 1e-10


def test_kraus_channel_validation():
    with pytest.raises(ValueError):
        q.KrausChannel((np.eye(2) * 0.5,))
    with pytest.raises(ValueError):
        q.Povm((np.eye(2) * 0.5,))
