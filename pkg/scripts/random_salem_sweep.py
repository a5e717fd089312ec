#!/usr/bin/env python3
"""Sweep beta for the Bernoulli refinement: dimension statistics and the
equidistribution order of surviving final-stage cells, one JSON per run.

Example:
    python scripts/random_salem_sweep.py --betas 0.25,0.5,0.75 \
        --levels 64,64,64 --trials 50 --seed 20260810 --output sweep.json
"""

import argparse
import statistics
import sys

import salemkit as sk
from salemkit.formats import canonical_json, write_report


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--betas", default="0.25,0.5,0.75")
    ap.add_argument("--levels", default="64,64,64")
    ap.add_argument("--trials", type=int, default=50)
    ap.add_argument("--seed", type=int, required=True)
    ap.add_argument("--output")
    args = ap.parse_args()

    levels = tuple(int(n) for n in args.levels.split(","))
    rows = []
    for beta in (float(b) for b in args.betas.split(",")):
        config = sk.RandomFractalConfig(beta, levels, len(levels), args.trials, args.seed)
        stats = sk.dimension_experiment(config)
        alphas = []
        for t in range(config.trials):
            trial = sk.generate_trial(config, t)
            if not trial.extinct:
                alphas.append(sk.corollary64_check(trial).alpha)
        rows.append({
            "beta": beta,
            "target_dim": 1 - beta,
            "mean_dim": stats.mean_dim,
            "std_dim": stats.std_dim,
            "extinct": stats.extinction_rate,
            "median_alpha": statistics.median(alphas) if alphas else None,
        })
        print(f"beta={beta}: mean_dim={stats.mean_dim:.3f} "
              f"median_alpha={rows[-1]['median_alpha']}")
    payload = {"levels": list(levels), "trials": args.trials, "seed": args.seed, "rows": rows}
    if args.output:
        write_report(payload, args.output)
    else:
        print(canonical_json(payload))
    return 0


if __name__ == "__main__":
    sys.exit(main())
