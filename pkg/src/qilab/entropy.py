"""Shannon/von Neumann entropies, typical sets, and block compression.

All logarithms are base 2.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .states import DensityMatrix
from .tensor import hermitian_eig

LN2 = math.log(2.0)
ENUMERATION_CAP = 2**22


def _checked_distribution(p: Sequence[float], tol: float = 1e-9) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if np.any(p < -tol) or abs(p.sum() - 1.0) > tol:
        raise ValueError("not a probability distribution")
    return np.clip(p, 0.0, None)


def shannon_entropy(p: Sequence[float]) -> float:
    """H(p) = -sum p_i log2 p_i, with 0 log 0 = 0."""
    p = _checked_distribution(p)
    nz = p[p > 0]
    return float(-np.sum(nz * np.log2(nz)))


def binary_entropy(x: float) -> float:
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"{x} outside [0, 1]")
    return shannon_entropy([x, 1.0 - x])


def binary_relative_entropy(x: float, y: float) -> float:
    """delta(x || y) = x log(x/y) + (1-x) log((1-x)/(1-y)); may be +inf."""
    if not (0.0 <= x <= 1.0 and 0.0 <= y <= 1.0):
        raise ValueError("arguments must lie in [0, 1]")
    total = 0.0
    for a, b in ((x, y), (1.0 - x, 1.0 - y)):
        if a == 0.0:
            continue
        if b == 0.0:
            return math.inf
        total += a * math.log2(a / b)
    return total


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """S(rho) = -tr rho log2 rho via the eigenvalue spectrum."""
    vals = np.clip(rho.eigenvalues(), 0.0, None)
    nz = vals[vals > 1e-15]
    return float(-np.sum(nz * np.log2(nz)))


def classical_mutual_information(pxy: np.ndarray) -> float:
    """I(X:Y) = H(X) + H(Y) - H(XY) for a joint distribution matrix."""
    pxy = np.asarray(pxy, dtype=float)
    _checked_distribution(pxy.reshape(-1))
    hx = shannon_entropy(pxy.sum(axis=1))
    hy = shannon_entropy(pxy.sum(axis=0))
    return hx + hy - shannon_entropy(pxy.reshape(-1))


def classical_pinsker_bound(pxy: np.ndarray) -> float:
    """(1/(2 ln 2)) * (l1 distance from the product of marginals)^2."""
    pxy = np.asarray(pxy, dtype=float)
    prod = np.outer(pxy.sum(axis=1), pxy.sum(axis=0))
    l1 = float(np.sum(np.abs(pxy - prod)))
    return l1 * l1 / (2 * LN2)


def information_measures(rho: DensityMatrix, parties: Sequence[Sequence[int]]) -> dict[str, float]:
    """Entropic quantities for a bi- or tripartite split of the subsystems.

    ``parties`` lists the subsystem indices of A, B (and optionally C).
    Returns conditional entropies and mutual informations alongside the
    marginal entropies; conditional quantities may be negative.
    """
    parts = [tuple(g) for g in parties]
    if len(parts) not in (2, 3):
        raise ValueError("need two or three parties")
    seen = [i for g in parts for i in g]
    if len(set(seen)) != len(seen):
        raise ValueError("parties overlap")

    def s(*groups) -> float:
        keep = sorted(i for g in groups for i in g)
        if len(keep) == len(rho.dims):
            return von_neumann_entropy(rho)
        return von_neumann_entropy(rho.marginal(keep))

    a, b = parts[0], parts[1]
    out = {
        "S_A": s(a),
        "S_B": s(b),
        "S_AB": s(a, b),
    }
    out["S_A_given_B"] = out["S_AB"] - out["S_B"]
    out["I_AB"] = out["S_A"] + out["S_B"] - out["S_AB"]
    if len(parts) == 3:
        c = parts[2]
        out.update(
            S_C=s(c),
            S_AC=s(a, c),
            S_BC=s(b, c),
            S_ABC=s(a, b, c),
        )
        out["I_A_C"] = out["S_A"] + out["S_C"] - out["S_AC"]
        out["I_A_BC"] = out["S_A"] + out["S_BC"] - out["S_ABC"]
        # I(A:B|C) = S(A|C) + S(B|C) - S(AB|C)
        out["I_AB_given_C"] = (
            (out["S_AC"] - out["S_C"])
            + (out["S_BC"] - out["S_C"])
            - (out["S_ABC"] - out["S_C"])
        )
    return out


def quantum_pinsker_bound(rho: DensityMatrix, parties: Sequence[Sequence[int]]) -> float:
    """(1/(2 ln 2)) ||rho_AB - rho_A x rho_B||_1^2 for a bipartite split."""
    a, b = (tuple(g) for g in parties)
    ra = rho.marginal(a).mat
    rb = rho.marginal(b).mat
    keep = sorted(a + b)
    rab = rho.mat if len(keep) == len(rho.dims) else rho.marginal(keep).mat
    # order A before B to match the product
    if tuple(sorted(a + b)) != tuple(a) + tuple(b):
        raise ValueError("parties must be sorted with A before B")
    diff = rab - np.kron(ra, rb)
    l1 = float(np.sum(np.abs(np.linalg.svd(diff, compute_uv=False))))
    return l1 * l1 / (2 * LN2)


# ---------------------------------------------------------------------------
# typicality
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TypicalSetReport:
    n: int
    delta: float
    entropy: float
    log_size_bound: float
    mass: float
    mass_stderr: float | None
    log_size: float | None
    is_typical: Callable[[Sequence[int]], bool]


def _iter_types(n: int, d: int):
    """All count vectors (t_0 .. t_{d-1}) with sum n."""
    if d == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in _iter_types(n - first, d - 1):
            yield (first,) + rest


def _multinomial(n: int, counts: Sequence[int]) -> int:
    out = 1
    rem = n
    for c in counts:
        out *= math.comb(rem, c)
        rem -= c
    return out


def _log2_bigint(x: int) -> float:
    if x <= 0:
        raise ValueError("log2 of nonpositive integer")
    b = x.bit_length()
    if b <= 900:
        return math.log2(x)
    return (b - 900) + math.log2(x >> (b - 900))


def typical_set(p: Sequence[float], n: int, delta: float,
                mc_samples: int = 20000, seed: int = 0) -> TypicalSetReport:
    """The set of n-strings with empirical log-likelihood within delta of H(p).

    A string x^n is typical when |-(1/n) log2 p(x^n) - H(p)| <= delta.  For
    alphabets with d^n below the enumeration cap the mass and size are exact
    (computed per type class); otherwise the mass is Monte Carlo estimated.
    """
    p = _checked_distribution(p)
    if delta <= 0 or n < 1:
        raise ValueError("need delta > 0 and n >= 1")
    d = len(p)
    h = shannon_entropy(p)
    logs = np.array([-math.log2(x) if x > 0 else math.inf for x in p])

    def is_typical(xs: Sequence[int]) -> bool:
        if len(xs) != n:
            raise ValueError(f"string length {len(xs)} != {n}")
        ll = sum(logs[x] for x in xs)
        return abs(ll / n - h) <= delta

    def type_typical(counts) -> bool:
        ll = sum(c * logs[i] for i, c in enumerate(counts) if c)
        return abs(ll / n - h) <= delta

    if d**n <= ENUMERATION_CAP:
        size = 0
        mass = 0.0
        for t in _iter_types(n, d):
            if any(t[i] > 0 and p[i] == 0 for i in range(d)):
                continue
            if type_typical(t):
                cnt = _multinomial(n, t)
                size += cnt
                mass += cnt * math.prod(p[i] ** t[i] for i in range(d) if t[i])
        log_size = _log2_bigint(size) if size else -math.inf
        return TypicalSetReport(n, delta, h, n * (h + delta), mass, None, log_size, is_typical)

    rng = np.random.default_rng(seed)
    hits = 0
    for _ in range(mc_samples):
        counts = rng.multinomial(n, p)
        if type_typical(counts):
            hits += 1
    mass = hits / mc_samples
    stderr = math.sqrt(max(mass * (1 - mass), 1e-12) / mc_samples)
    return TypicalSetReport(n, delta, h, n * (h + delta), mass, stderr, None, is_typical)


def typical_mass_lower_bound(p: Sequence[float], n: int, delta: float) -> float:
    """Chebyshev guarantee: mass >= 1 - Var[log2 p(X)] / (n delta^2)."""
    p = _checked_distribution(p)
    nz = p[p > 0]
    logs = -np.log2(nz)
    mean = float(np.sum(nz * logs))
    var = float(np.sum(nz * logs**2) - mean**2)
    return 1.0 - var / (n * delta * delta)


def typical_subspace_projector(rho: DensityMatrix, n: int, delta: float) -> np.ndarray:
    """Projector onto eigenstrings of rho^(x n) with typical log-eigenvalue.

    Rank is bounded by 2^{n (S + delta)}.  Only feasible for d^n within the
    enumeration cap.
    """
    d = rho.dim
    if d**n > ENUMERATION_CAP // 4:
        raise ValueError("typical subspace too large to materialize")
    eig = hermitian_eig(rho.mat)
    vals = np.clip(eig.eigenvalues, 0.0, None)
    s = float(-np.sum(vals[vals > 1e-15] * np.log2(vals[vals > 1e-15])))
    logs = np.array([-math.log2(v) if v > 1e-15 else math.inf for v in vals])
    proj = np.zeros((d**n, d**n), dtype=complex)
    for xs in itertools.product(range(d), repeat=n):
        ll = sum(logs[x] for x in xs)
        if abs(ll / n - s) <= delta:
            vec = eig.eigenvectors[:, xs[0]]
            for x in xs[1:]:
                vec = np.kron(vec, eig.eigenvectors[:, x])
            proj += np.outer(vec, vec.conj())
    return proj


# ---------------------------------------------------------------------------
# fixed-rate compression simulation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CompressionReport:
    n: int
    rate: float
    trials: int
    successes: int

    @property
    def success_rate(self) -> float:
        return self.successes / self.trials


def compression_trial(p: Sequence[float], n: int, rate: float,
                      trials: int, seed: int = 0) -> CompressionReport:
    """Simulate a fixed-rate codebook of the 2^{nR} most probable strings.

    Strings are ranked by probability (per type class, lexicographic within a
    class); a sampled string succeeds when its rank falls below the capacity
    2^{nR}, decided by exact big-integer comparison.
    """
    p = _checked_distribution(p)
    d = len(p)
    if d > 4:
        raise ValueError("compression simulation supports small alphabets (d <= 4)")
    if rate < 0:
        raise ValueError("rate must be nonnegative")
    types = [t for t in _iter_types(n, d)
             if not any(t[i] > 0 and p[i] == 0 for i in range(d))]
    logp = {t: sum(t[i] * math.log(p[i]) for i in range(d) if t[i]) for t in types}
    types.sort(key=lambda t: -logp[t])
    sizes = [_multinomial(n, t) for t in types]
    below = {}
    acc = 0
    for t, sz in zip(types, sizes):
        below[t] = acc
        acc += sz
    size_of = dict(zip(types, sizes))

    n_rate = n * rate
    rng = np.random.default_rng(seed)
    successes = 0
    for _ in range(trials):
        t = tuple(int(c) for c in rng.multinomial(n, p))
        # uniform rank within the type class (strings of one type are
        # exchangeable), drawn with 63 bits of resolution
        r = int(rng.integers(0, 2**63))
        rank = below[t] + (size_of[t] * r >> 63)
        if rank == 0 or _log2_bigint(rank) < n_rate:
            successes += 1
    return CompressionReport(n, rate, trials, successes)
