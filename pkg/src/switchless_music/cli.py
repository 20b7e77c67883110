"""Command-line front end.

Exit codes: 0 success, 1 validation error, 2 numerical failure (including a
theory check that misses its tolerance).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import fileio
from .config import ConfigError, ExperimentConfig, load_config
from .fileio import FileFormatError
from .forward import ScatteringMatrix, born_scattering_matrix, wavenumber
from .imaging import SubspaceError, imaging_maps, noise_projection_norm, normalize_map, subspace_split, test_vectors
from .metrics import jaccard_curve, truth_support
from .special import ConvergenceError
from .theory import arrangement_score, arrangement_spectrum, series_map

EXIT_OK, EXIT_INVALID, EXIT_NUMERIC = 0, 1, 2


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def simulate(cfg: ExperimentConfig, split_name: str, field_model: str | None = None) -> ScatteringMatrix:
    if not cfg.anomalies:
        raise ConfigError("config defines no anomalies to simulate")
    model = field_model or cfg.imaging.field_model
    return born_scattering_matrix(cfg.split(split_name), cfg.medium, cfg.anomalies, model)


def _split_meta(cfg, split_name):
    sp = cfg.split(split_name)
    return {"split": split_name, "tx": list(sp.tx_indices), "rx": list(sp.rx_indices)}


def cmd_simulate(args) -> int:
    cfg = load_config(args.config)
    K = simulate(cfg, args.split, args.field_model)
    out = _out_dir(args)
    path = out / f"{args.split}.matrix.txt"
    fileio.write_matrix(path, K.entries, cfg.medium.frequency)
    meta = {
        "config": cfg.name,
        "provenance": K.provenance,
        "field_model": K.field_model,
        "frequency": cfg.medium.frequency,
        "anomalies": [
            {"center": list(a.center), "radius": a.radius, "eps": a.eps, "sigma": a.sigma}
            for a in cfg.anomalies
        ],
        **_split_meta(cfg, args.split),
    }
    fileio.write_metadata(out / f"{args.split}.matrix.meta.json", meta)
    print(path)
    return EXIT_OK


def load_matrix(path, cfg: ExperimentConfig, split_name: str) -> ScatteringMatrix:
    entries, freq = fileio.read_matrix(path)
    if freq != cfg.medium.frequency:
        raise ConfigError(f"matrix frequency {freq} differs from config frequency {cfg.medium.frequency}")
    split = cfg.split(split_name)
    if entries.shape != (split.N, split.M):
        raise ConfigError(
            f"matrix is {entries.shape[0]}x{entries.shape[1]} but split {split_name!r} "
            f"needs {split.N}x{split.M}"
        )
    return ScatteringMatrix(entries, split, cfg.medium, "file")


def image(K: ScatteringMatrix, cfg: ExperimentConfig, field_model: str | None = None, workers=None):
    """F_tx, F_rx, F and their normalised versions, in that order."""
    maps = imaging_maps(
        K,
        cfg.roi(),
        cfg.imaging.threshold,
        field_model or cfg.imaging.field_model,
        cfg.imaging.clamp,
        workers,
    )
    return maps + tuple(normalize_map(m) for m in maps)


def cmd_image(args) -> int:
    cfg = load_config(args.config)
    K = load_matrix(args.matrix, cfg, args.split)
    maps = image(K, cfg, args.field_model, args.workers)
    out = _out_dir(args)
    grid = maps[0].grid
    for m in maps:
        stem = out / f"{args.split}.{m.kind}"
        fileio.write_map(f"{stem}.map.txt", grid.points, m.values)
        if args.pgm and m.kind.startswith("N"):
            fileio.write_pgm(f"{stem}.pgm", grid.mask, m.values)
    fileio.write_metadata(
        out / f"{args.split}.maps.meta.json",
        {
            "config": cfg.name,
            "kinds": [m.kind for m in maps],
            "clamp": cfg.imaging.clamp,
            "threshold": cfg.imaging.threshold,
            "field_model": args.field_model or cfg.imaging.field_model,
            "frequency": cfg.medium.frequency,
            "grid_radius": cfg.grid.radius,
            "grid_step": cfg.grid.step,
            "argmax_F": [float(v) for v in maps[2].argmax_point],
            **_split_meta(cfg, args.split),
        },
    )
    print(f"argmax F at ({maps[2].argmax_point[0]:.4f}, {maps[2].argmax_point[1]:.4f})")
    return EXIT_OK


def theory_check(cfg: ExperimentConfig, split_name: str, workers=None) -> dict:
    """Compare far-field imaging maps with the Bessel-series prediction."""
    if len(cfg.anomalies) != 1:
        raise ConfigError("the series representation covers exactly one anomaly")
    split = cfg.split(split_name)
    grid = cfg.roi()
    r_star = cfg.anomalies[0].center
    k = wavenumber(cfg.medium)
    K = born_scattering_matrix(split, cfg.medium, cfg.anomalies, "far-field")
    sub = subspace_split(K, cfg.imaging.threshold)
    f, g = test_vectors(grid.points, split, k, "far-field")
    pf2 = noise_projection_norm(sub, f, "left") ** 2
    pg2 = noise_projection_norm(sub, g, "right") ** 2
    pred = series_map(grid, r_star, split, k, clamp=cfg.imaging.clamp)
    f_tx, f_rx, f_all = imaging_maps(K, grid, cfg.imaging.threshold, "far-field", cfg.imaging.clamp, workers)
    away = np.hypot(*(grid.points - np.asarray(r_star)).T) > grid.step * (1 + 1e-9)

    def rel(a, b):
        return float(np.max(np.abs(a[away] - b[away]) / np.abs(b[away])))

    return {
        "rank": sub.rank,
        "truncation": pred.truncation,
        "wavenumber": k,
        "max_abs_dev_projection_rx": float(np.max(np.abs(pf2 - pred.projection_sq_rx))),
        "max_abs_dev_projection_tx": float(np.max(np.abs(pg2 - pred.projection_sq_tx))),
        "max_rel_dev_F_rx": rel(f_rx.values, pred.predicted_F_rx),
        "max_rel_dev_F_tx": rel(f_tx.values, pred.predicted_F_tx),
        "max_rel_dev_F": rel(f_all.values, pred.predicted_F),
    }


def cmd_theory_check(args) -> int:
    cfg = load_config(args.config)
    res = theory_check(cfg, args.split, args.workers)
    worst = max(res["max_rel_dev_F_rx"], res["max_rel_dev_F_tx"], res["max_rel_dev_F"])
    passed = worst <= args.tolerance
    lines = [f"{key} = {val}" for key, val in res.items()]
    lines.append(f"max_rel_dev = {worst!r}")
    lines.append(f"tolerance = {args.tolerance!r}")
    lines.append(f"result = {'PASS' if passed else 'FAIL'}")
    text = "\n".join(lines) + "\n"
    (_out_dir(args) / f"{args.split}.theory.txt").write_text(text)
    print(text, end="")
    return EXIT_OK if passed else EXIT_NUMERIC


def arrange(cfg: ExperimentConfig, split_names) -> list[tuple[str, float, float]]:
    """(split, rx score, tx score) sorted by total score."""
    k = wavenumber(cfg.medium)
    reach = 2 * cfg.grid.radius
    rows = []
    for name in split_names:
        sp = cfg.split(name)
        rows.append((name, arrangement_score(sp.rx.angles, k, reach), arrangement_score(sp.tx.angles, k, reach)))
    return sorted(rows, key=lambda r: (r[1] + r[2], r[0]))


def cmd_arrange(args) -> int:
    cfg = load_config(args.config)
    names = args.split or sorted(cfg.splits)
    rows = arrange(cfg, names)
    out = _out_dir(args)
    fileio.write_table(out / "arrangement.txt", "split rx_score tx_score", rows)
    for name in names:
        sp = cfg.split(name)
        for side, arr in (("rx", sp.rx), ("tx", sp.tx)):
            spec = arrangement_spectrum(arr.angles, max(len(cfg.array().angles), 1))
            (out / f"{name}.{side}.spectrum.txt").write_text(spec.report())
    for name, rx, tx in rows:
        print(f"{name:12s} rx={rx:.6g} tx={tx:.6g}")
    return EXIT_OK


def evaluate(map_path, cfg: ExperimentConfig):
    points, values = fileio.read_map(map_path)
    grid = cfg.roi()
    if points.shape != grid.points.shape or not np.array_equal(points, grid.points):
        raise ConfigError(f"map {map_path} is not defined on the config grid")
    from .imaging import ImagingMap

    m = ImagingMap(grid, values, "F", cfg.imaging.clamp)
    if values.max() != 1.0:
        m = normalize_map(m)
    return jaccard_curve(m, truth_support(grid, cfg.anomalies), cfg.zetas)


def cmd_evaluate(args) -> int:
    cfg = load_config(args.config)
    curve = evaluate(args.map, cfg)
    out = _out_dir(args)
    name = Path(args.map).name.removesuffix(".map.txt")
    fileio.write_table(out / f"{name}.jaccard.txt", "zeta jaccard_percent", curve)
    for z, j in curve:
        print(f"{z:.3f} {j:.2f}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="switchless-music", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, split_required=True, multi=False):
        sp.add_argument("--config", required=True, help="config file or bundled config name")
        if multi:
            sp.add_argument("--split", action="append", help="split name (repeatable; default all)")
        else:
            sp.add_argument("--split", required=split_required)
        sp.add_argument("--out", default="out")
        sp.add_argument("--workers", type=int, default=None)

    s = sub.add_parser("simulate", help="write a Born scattering matrix")
    common(s)
    s.add_argument("--field-model", choices=["exact-hankel", "far-field"])
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("image", help="MUSIC maps from a matrix file")
    common(s)
    s.add_argument("--matrix", required=True)
    s.add_argument("--field-model", choices=["exact-hankel", "far-field"])
    s.add_argument("--pgm", action="store_true", help="also write graymaps of normalised maps")
    s.set_defaults(func=cmd_image)

    s = sub.add_parser("theory-check", help="compare maps with the Bessel-series form")
    common(s)
    s.add_argument("--tolerance", type=float, default=0.05)
    s.set_defaults(func=cmd_theory_check)

    s = sub.add_parser("arrange", help="score antenna arrangements")
    common(s, multi=True)
    s.set_defaults(func=cmd_arrange)

    s = sub.add_parser("evaluate", help="Jaccard curve of a map against the true support")
    common(s, split_required=False)
    s.add_argument("--map", required=True)
    s.set_defaults(func=cmd_evaluate)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SubspaceError, ConvergenceError, OverflowError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ConfigError, FileFormatError, ValueError, IndexError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
