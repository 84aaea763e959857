"""Playing the CHSH nonlocal game.

Enumerates all deterministic strategies, runs the entangled strategy with
the standard measurement angles, and lets a coordinate-ascent optimizer
rediscover the quantum optimum from random starting angles.
"""
import itertools

import numpy as np

import qilab as q


def main():
    values = {}
    for a in itertools.product((0, 1), repeat=2):
        for b in itertools.product((0, 1), repeat=2):
            values[(a, b)] = q.DeterministicStrategy(a, b).win_probability()
    best = max(values.values())
    winners = [k for k, v in values.items() if v == best]
    print(f"deterministic strategies: best win probability {best} "
          f"achieved by {len(winners)} of {len(values)}")

    strat = q.optimal_strategy()
    print(f"entangled strategy ({', '.join(f'{a:+.4f}' for a in q.OPTIMAL_ANGLES)} rad): "
          f"win probability {strat.win_probability():.10f}")
    print(f"cos^2(pi/8) = {q.QUANTUM_OPTIMUM:.10f}")

    res = q.chsh_optimize(starts=16, seed=7)
    print(f"\noptimizer over angles + Schmidt coefficient: {res.value:.10f} "
          f"({res.starts} random starts)")
    res_prod = q.chsh_optimize(starts=16, seed=7, product_state=True)
    print(f"same optimizer restricted to product states: {res_prod.value:.10f} "
          "(classical bound again)")

    # Tsirelson: no choice of +/-1 observables beats 2*sqrt(2) in operator norm
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(1000):
        obs = []
        for _ in range(4):
            u = q.random_unitary(2, rng)
            obs.append(u @ np.diag(rng.choice([-1.0, 1.0], size=2)) @ u.conj().T)
        worst = max(worst, float(np.linalg.norm(q.bell_operator(*obs), ord=2)))
    print(f"\nmax Bell-operator norm over 1000 random observable choices: "
          f"{worst:.6f} <= 2*sqrt(2) = {q.TSIRELSON:.6f}")


if __name__ == "__main__":
    main()
