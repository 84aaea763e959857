"""Canonical three-qubit representatives, shared across test modules."""
import numpy as np

import qilab as q
from qilab.pure import SloccClass


def _embed_pair(pair_amps, lone, arrangement):
    """Three-qubit state with an entangled pair at the given two slots."""
    t = np.zeros((2, 2, 2), dtype=complex)
    pm = pair_amps.reshape(2, 2)
    for i in range(2):
        for j in range(2):
            for k in range(2):
                idx = [0, 0, 0]
                idx[arrangement[0]], idx[arrangement[1]] = i, j
                idx[arrangement[2]] = k
                t[tuple(idx)] += pm[i, j] * lone[k]
    return q.PureState(t.reshape(8), (2, 2, 2))


def representatives():
    phi = q.phi_plus().amps
    lone = np.array([1, 0], dtype=complex)
    return {
        SloccClass.PRODUCT: q.PureState(np.kron(np.kron(lone, lone), lone), (2, 2, 2)),
        SloccClass.BIPARTITE_AB: _embed_pair(phi, lone, (0, 1, 2)),
        SloccClass.BIPARTITE_AC: _embed_pair(phi, lone, (0, 2, 1)),
        SloccClass.BIPARTITE_BC: _embed_pair(phi, lone, (1, 2, 0)),
        SloccClass.W: q.w_state(),
        SloccClass.GHZ: q.ghz_state(),
    }
