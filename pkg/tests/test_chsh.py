import itertools
import math

import numpy as np
import pytest

import qilab as q
from qilab.chsh import DeterministicStrategy, QuantumStrategy

RNG = np.random.default_rng(17)


def test_classical_enumeration():
    best, achievers = q.chsh_classical_optimum()
    assert best == 0.75
    assert len(achievers) == 8
    # brute-force oracle
    values = []
    for bits in itertools.product((0, 1), repeat=4):
        wins = sum((bits[r] ^ bits[2 + s]) == (r & s)
                   for r in (0, 1) for s in (0, 1))
        values.append(wins / 4)
    assert max(values) == 0.75
    assert sum(v == 0.75 for v in values) == 8


def test_deterministic_strategy_value():
    assert DeterministicStrategy((0, 0), (0, 0)).win_probability() == 0.75
    assert DeterministicStrategy((0, 1), (0, 1)).win_probability() == 0.25


def test_optimal_strategy_hits_quantum_optimum():
    v = q.optimal_strategy().win_probability()
    assert v == pytest.approx(math.cos(math.pi / 8) ** 2, abs=1e-12)
    assert q.bias(q.optimal_strategy()) == pytest.approx(1 / math.sqrt(2), abs=1e-12)


def test_bell_operator_phi_plus_expectation():
    b = q.bell_operator(*q.optimal_observables())
    phi = q.phi_plus().density().mat
    assert np.trace(b @ phi).real == pytest.approx(2 * math.sqrt(2), abs=1e-12)
    assert np.linalg.norm(b, ord=2) <= q.TSIRELSON + 1e-12


def test_bell_operator_validation():
    with pytest.raises(ValueError):
        q.bell_operator(np.eye(2) * 2, *q.optimal_observables()[1:])


def random_observable(d=2):
    u = q.random_unitary(d, RNG)
    signs = np.diag(RNG.choice([-1.0, 1.0], size=d))
    return u @ signs @ u.conj().T


def test_tsirelson_bound_random_operators():
    for _ in range(50):
        b = q.bell_operator(random_observable(), random_observable(),
                            random_observable(), random_observable())
        assert np.linalg.norm(b, ord=2) <= q.TSIRELSON + 1e-9


def test_optimizer_reaches_and_never_exceeds():
    res = q.chsh_optimize(starts=8, seed=3)
    assert res.value == pytest.approx(q.QUANTUM_OPTIMUM, abs=1e-9)
    assert res.value <= q.QUANTUM_OPTIMUM + 1e-6


def test_optimizer_product_state_recovers_classical():
    res = q.chsh_optimize(starts=8, seed=5, product_state=True)
    assert res.value == pytest.approx(0.75, abs=1e-9)
    assert res.value <= 0.75 + 1e-6


def test_quantum_strategy_requires_two_qubits():
    with pytest.raises(ValueError):
        QuantumStrategy(q.random_pure_state((2, 2, 2), RNG), (0, 0, 0, 0)).win_probability()
