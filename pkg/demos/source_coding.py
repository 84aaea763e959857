"""Typical sets and the compression phase transition.

For a biased coin, the typical set captures almost all probability while
containing a vanishing fraction of strings. A fixed-rate codebook built
from the most likely strings succeeds almost always above the entropy
rate and almost never below it.
"""
import qilab as q

P = [0.11, 0.89]


def main():
    h = q.shannon_entropy(P)
    print(f"source probabilities {P}, entropy H = {h:.6f} bits/symbol\n")

    print(f"{'n':>6} {'delta':>6} {'mass':>10} {'log2|T|/n':>10}")
    for n in (50, 200, 1000):
        rep = q.typical_set(P, n, delta=0.05)
        size = rep.log_size if rep.log_size is not None else rep.log_size_bound
        print(f"{n:6d} {0.05:6.2f} {rep.mass:10.6f} {size / n:10.6f}")
    print("(mass -> 1, normalized set size -> H as n grows)\n")

    n, trials = 1000, 200
    print(f"{'rate':>6} {'success rate':>14}   ({trials} trials, n = {n})")
    for rate in (0.40, 0.50, 0.60, 0.70, 0.81, 0.85):
        rep = q.compression_trial(P, n, rate, trials=trials, seed=42)
        print(f"{rate:6.2f} {rep.success_rate:14.3f}")
    print(f"\nthe transition sits at the entropy rate H = {h:.4f}")


if __name__ == "__main__":
    main()
