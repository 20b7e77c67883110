"""Compare far-field imaging maps with their Bessel-series prediction.

Runs the check for every split of a single-anomaly config, once with the
configured background and once with the conductivity set to zero, to show
how much of the mismatch comes from a lossy medium.

    python3 scripts/theory_check.py --config example3
"""

import argparse
import dataclasses

from switchless_music.cli import theory_check
from switchless_music.config import load_config


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--config", default="example3")
    ap.add_argument("--step", type=float, default=0.002)
    args = ap.parse_args()
    cfg = load_config(args.config)
    cfg = dataclasses.replace(cfg, grid=dataclasses.replace(cfg.grid, step=args.step))
    lossless = dataclasses.replace(cfg, medium=dataclasses.replace(cfg.medium, sigma_b=0.0))
    print(f"{'split':8s} {'medium':9s} {'|dP_rx|':>10s} {'|dP_tx|':>10s} {'rel F':>10s}")
    for split in sorted(cfg.splits):
        for label, c in (("lossy", cfg), ("lossless", lossless)):
            r = theory_check(c, split)
            print(
                f"{split:8s} {label:9s} {r['max_abs_dev_projection_rx']:10.2e} "
                f"{r['max_abs_dev_projection_tx']:10.2e} {r['max_rel_dev_F']:10.2e}"
            )


if __name__ == "__main__":
    main()
