"""Scan productivity-law parameters for the top-23% output share of the demo population.

    python scripts/calibrate_skew.py --sigmas 1.3 1.6 1.9 --medians 2 3 4 --seeds 3
"""
import argparse
import dataclasses

from collabprop.pipeline import analyze
from collabprop.synth import demo_config, generate, skew_report


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sigmas", type=float, nargs="+", default=[1.3, 1.5, 1.7, 1.9, 2.1])
    ap.add_argument("--medians", type=float, nargs="+", default=[2.0, 3.0, 4.0])
    ap.add_argument("--seeds", type=int, default=3)
    args = ap.parse_args()

    base = demo_config()
    print("median  sigma  pubs   top23%(per seed)")
    for median in args.medians:
        for sigma in args.sigmas:
            shares, sizes = [], []
            for s in range(args.seeds):
                cfg = dataclasses.replace(
                    base, seed=base.seed + s,
                    groups=[dataclasses.replace(g, median_pubs=median, sigma=sigma)
                            for g in base.groups])
                ds = generate(cfg)
                an = analyze(ds.corpus, ds.roster, ds.attributions)
                shares.append(float(skew_report(ds.roster, an.profiles).share_at("23/100")))
                sizes.append(len(ds.corpus))
            print(f"{median:6.1f} {sigma:6.2f} {min(sizes):6d}  "
                  + " ".join(f"{x:.3f}" for x in shares))


if __name__ == "__main__":
    main()
