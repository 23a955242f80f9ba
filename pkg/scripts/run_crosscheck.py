"""Cross-check PBPT, the SIC quantum rule and the direct trace for several dimensions.

    python scripts/run_crosscheck.py --dims 2 3 4 5 --trials 2000
"""

import argparse
import json

from paraprob import harness, quantum
from paraprob.fiducial import SearchConfig, optimize


def sic_for(d: int, seed: int):
    if d in (2, 3):
        return quantum.builtin_sic(d)
    res = optimize(SearchConfig(d=d, seed=seed))
    return quantum.sic_from_fiducial(res.fiducial, d, quantum.SEARCHED_SIC_TOL)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--dims", type=int, nargs="+", default=[2, 3, 4, 5])
    ap.add_argument("--trials", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rows = []
    for d in args.dims:
        sic = sic_for(d, args.seed)
        for states in harness.STATE_FAMILIES:
            rep = harness.crosscheck(d, args.trials, args.seed, sic=sic, states=states)
            rows.append(rep.to_json())
            print(f"d={d} {states:8s} quantum={rep.max_abs_discrepancy_direct_vs_quantum_rule:.2e} "
                  f"pbpt={rep.max_abs_discrepancy_direct_vs_pbpt_rule:.2e} "
                  f"skipped={rep.skipped}/{rep.trials} c={rep.contradiction_mass:.6f} "
                  f"{'PASS' if rep.passed else 'FAIL'}")
    with open("crosscheck_results.json", "w") as fh:
        json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
