"""Plain-text interchange formats.

Matrix file::

    N M frequency
    n m re im        (N*M lines, row-major, 1-based n and m)

Map file::

    x y value        (one row per grid point, grid order)

Floats are written with ``repr`` so reading a file back gives the exact
values that were written.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np


class FileFormatError(ValueError):
    pass


def write_matrix(path, entries: np.ndarray, frequency: float) -> None:
    K = np.asarray(entries, dtype=complex)
    N, M = K.shape
    lines = [f"{N} {M} {float(frequency)!r}"]
    for n in range(N):
        for m in range(M):
            z = K[n, m]
            lines.append(f"{n + 1} {m + 1} {float(z.real)!r} {float(z.imag)!r}")
    Path(path).write_text("\n".join(lines) + "\n")


def read_matrix(path):
    """Returns ``(entries, frequency)``."""
    try:
        rows = Path(path).read_text().split("\n")
    except OSError as exc:
        raise FileFormatError(f"cannot read matrix file {path}: {exc}") from exc
    rows = [r for r in rows if r.strip()]
    try:
        n_s, m_s, f_s = rows[0].split()
        N, M, freq = int(n_s), int(m_s), float(f_s)
        K = np.full((N, M), np.nan + 0j)
        if len(rows) - 1 != N * M:
            raise FileFormatError(f"expected {N * M} entries, found {len(rows) - 1}")
        for row in rows[1:]:
            n, m, re, im = row.split()
            K[int(n) - 1, int(m) - 1] = complex(float(re), float(im))
    except FileFormatError:
        raise
    except (ValueError, IndexError) as exc:
        raise FileFormatError(f"malformed matrix file {path}: {exc}") from exc
    if np.isnan(K.real).any():
        raise FileFormatError(f"matrix file {path} is missing entries")
    return K, freq


def write_map(path, points: np.ndarray, values: np.ndarray) -> None:
    lines = ["x y value"]
    lines += [f"{float(x)!r} {float(y)!r} {float(v)!r}" for (x, y), v in zip(points, values)]
    Path(path).write_text("\n".join(lines) + "\n")


def read_map(path):
    """Returns ``(points, values)``."""
    try:
        rows = [r for r in Path(path).read_text().split("\n") if r.strip()]
    except OSError as exc:
        raise FileFormatError(f"cannot read map file {path}: {exc}") from exc
    if not rows or rows[0].split() != ["x", "y", "value"]:
        raise FileFormatError(f"{path} lacks the 'x y value' header")
    try:
        data = np.array([[float(t) for t in r.split()] for r in rows[1:]], dtype=float)
    except ValueError as exc:
        raise FileFormatError(f"malformed map file {path}: {exc}") from exc
    if data.ndim != 2 or data.shape[1] != 3:
        raise FileFormatError(f"malformed map file {path}")
    return data[:, :2], data[:, 2]


def write_metadata(path, meta: dict) -> None:
    Path(path).write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")


def read_metadata(path) -> dict:
    return json.loads(Path(path).read_text())


def write_table(path, header: str, rows) -> None:
    lines = [header] + [" ".join(repr(float(v)) if not isinstance(v, str) else v for v in r) for r in rows]
    Path(path).write_text("\n".join(lines) + "\n")


def write_pgm(path, mask: np.ndarray, values: np.ndarray) -> None:
    """8-bit ASCII graymap of a map in [0, 1]; pixels outside the disk are 0."""
    img = np.zeros(mask.shape)
    img[mask] = np.clip(values, 0, 1)
    pix = np.rint(img[::-1] * 255).astype(int)
    h, w = pix.shape
    body = "\n".join(" ".join(str(v) for v in row) for row in pix)
    Path(path).write_text(f"P2\n{w} {h}\n255\n{body}\n")
