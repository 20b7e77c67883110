"""Arrangement score of each split as the operating frequency changes.

The score weights each uncancelled harmonic sum by the largest Bessel
coefficient it can meet inside the region of interest, so it shows how the
ranking of arrangements moves with frequency.

    python3 scripts/frequency_sweep.py --config example3 --fmin 0.2e9 --fmax 1.5e9
"""

import argparse
import dataclasses

import numpy as np

from switchless_music.config import load_config
from switchless_music.forward import MediumSpec, wavenumber
from switchless_music.special import bessel_j_orders
from switchless_music.theory import arrangement_score


def sweep(cfg, freqs):
    reach = 2 * cfg.grid.radius
    names = sorted(cfg.splits)
    table = []
    for f in freqs:
        med = dataclasses.replace(cfg.medium, frequency=float(f))
        k = wavenumber(med)
        if abs(k) * reach > 50:
            break
        row = [arrangement_score(cfg.split(n).rx.angles, k, reach) for n in names]
        table.append((f, abs(k) * reach, row))
    return names, table


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--config", default="example3")
    ap.add_argument("--fmin", type=float, default=0.2e9)
    ap.add_argument("--fmax", type=float, default=1.5e9)
    ap.add_argument("--points", type=int, default=14)
    args = ap.parse_args()
    cfg = load_config(args.config)
    names, table = sweep(cfg, np.linspace(args.fmin, args.fmax, args.points))
    print(f"{'f [GHz]':>8s} {'|k|D':>6s} " + " ".join(f"{n:>8s}" for n in names))
    for f, x, row in table:
        print(f"{f / 1e9:8.3f} {x:6.2f} " + " ".join(f"{v:8.4f}" for v in row))

    # fixed-order view: largest |J_p| over the outer half of the reach
    d = np.linspace(cfg.grid.radius, 2 * cfg.grid.radius, 2001)
    print("\nmax |J_p(k d)| for d in [R_roi, 2 R_roi]")
    for f, _, _ in table[:: max(1, len(table) // 5)]:
        k = wavenumber(dataclasses.replace(cfg.medium, frequency=float(f)))
        env = np.abs(bessel_j_orders(5, abs(k) * d)).max(axis=1)
        print(f"{f / 1e9:8.3f} " + " ".join(f"{v:.3f}" for v in env[1:]))


if __name__ == "__main__":
    main()
