"""Estimating a qubit spectrum from collective spin measurements.

A total-spin measurement on n copies of a mixed qubit state concentrates
on the block whose normalized spin matches the state's eigenvalue gap.
Compares the exact outcome distribution against projector traces, samples
estimates, and checks the exponential tail bound.
"""
import numpy as np

import qilab as q


def main():
    r = 0.3          # half the eigenvalue gap: spectrum (0.8, 0.2)
    n = 10
    rho = np.diag([0.5 + r, 0.5 - r]).astype(complex)

    dist = q.spectrum_estimation_distribution(r, n)
    blocks = q.spin_projectors(n)
    big = rho
    for _ in range(n - 1):
        big = np.kron(big, rho)

    print(f"state spectrum (0.5+r, 0.5-r) with r = {r}, n = {n} copies")
    print(f"{'j':>5} {'mult':>6} {'Pr[j] exact':>12} {'trace check':>12} {'tail bound':>12}")
    for b in blocks:
        tr = float(np.trace(b.projector @ big).real)
        bound = q.spectrum_tail_bound(r, n, b.j)
        print(f"{b.j:5.1f} {b.multiplicity:6d} {dist[b.j]:12.8f} {tr:12.8f} {bound:12.6g}")

    outcomes = q.sample_spin_outcomes(r, n, size=20000, seed=1)
    est = q.keyl_werner_estimate(outcomes, n, r_true=r)
    print(f"\nsampled estimate of r from {est.samples} shots: "
          f"r_hat = {est.r_hat:.4f} (true {r}, deviation {est.deviation:.4f})")

    for m in (8, 16, 32, 64):
        d = q.spectrum_estimation_distribution(r, m)
        mode = max(d, key=d.get)
        print(f"n = {m:3d}: most likely j/n = {mode / m:.4f} (r = {r})")


if __name__ == "__main__":
    main()
