"""Run the brute-force oracle against the pipeline on a range of demo seeds.

    python scripts/oracle_battery.py --seeds 20 --base 1000
"""
import argparse
import time

from collabprop.pipeline import analyze
from collabprop.synth import compare_with_pipeline, demo_config, generate, oracle_recount


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seeds", type=int, default=20)
    ap.add_argument("--base", type=int, default=1000)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    failures = 0
    start = time.perf_counter()
    print("seed   academics  pubs   productive  mismatches  seconds")
    for seed in range(args.base, args.base + args.seeds):
        t0 = time.perf_counter()
        ds = generate(demo_config(seed))
        an = analyze(ds.corpus, ds.roster, ds.attributions, workers=args.workers)
        oracle = oracle_recount(ds.roster, an.corpus, an.attributions)
        problems = compare_with_pipeline(oracle, an.profiles,
                                         {a.academic_id for a in an.included()})
        failures += bool(problems)
        print(f"{seed:<6d} {len(ds.roster):9d} {len(an.corpus):6d} {len(an.profiles):11d} "
              f"{len(problems):11d} {time.perf_counter() - t0:8.2f}")
    print(f"total {time.perf_counter() - start:.1f} s, {failures} seed(s) with mismatches")
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
