"""Search SIC fiducials for d = 2..8 and write one SIC file per dimension.

    python scripts/find_sics.py --out sics/
"""

import argparse
import json
import pathlib
import time

from paraprob.fiducial import SearchConfig, frame_potential_bound, optimize


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="sics")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--restarts", type=int, default=8)
    args = ap.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for d in range(2, 9):
        t0 = time.perf_counter()
        res = optimize(SearchConfig(d=d, seed=args.seed, restarts=args.restarts),
                       raise_on_failure=False)
        dt = time.perf_counter() - t0
        print(f"d={d} residual={res.sic_residual:.2e} "
              f"potential-excess={res.frame_potential - frame_potential_bound(d):.2e} "
              f"restart={res.restart_index} iters={res.iterations} {dt:.2f}s "
              f"{'ok' if res.converged else 'NOT CONVERGED'}")
        (out / f"sic_d{d}.json").write_text(json.dumps(res.to_json()["sic"], indent=2))


if __name__ == "__main__":
    main()
