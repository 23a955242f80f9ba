"""How often does a random SIC probability vector fail to be a quantum state?

Samples q uniformly on {sum q = d, 0 <= q_k <= 1} and reports the fraction whose
reconstruction has a negative eigenvalue, plus the fraction admitting a PBPT frame.
"""

import argparse
import math

import numpy as np

from paraprob import quantum


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--samples", type=int, default=20000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    for d in (2, 3):
        sic = quantum.builtin_sic(d)
        rng = np.random.default_rng(args.seed)
        drawn = unphysical = framed = 0
        while drawn < args.samples:
            q = d * rng.dirichlet(np.ones(d * d))
            if np.any(q > 1):
                continue
            q[np.argmax(q)] += d - math.fsum(q)
            drawn += 1
            lam = quantum.physicality(quantum.reconstruct(quantum.SicProbVec(d, q), sic))
            unphysical += lam < -1e-10
            framed += q.min() >= 1 / (d + 1)
        print(f"d={d}: unphysical {unphysical / drawn:.3f}, admits PBPT frame {framed / drawn:.4f}")


if __name__ == "__main__":
    main()
