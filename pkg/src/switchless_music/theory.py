"""Bessel-series form of the single-anomaly imaging maps.

For far-field data generated by one anomaly at r_* the receiver-side
projection obeys

    |F_noise f(r)|^2 = 1 - |J_0(k d) + E_rx(r) / N|^2,   d = |r - r_*|,

with E_rx(r) = sum_n sum_{p != 0} i^p J_p(k d) e^{ip(theta_n - phi)} and phi
the polar angle of r - r_*.  The identity is exact for a real wavenumber;
with a lossy background the plane-wave factors are no longer unimodular and
it only holds approximately.  The harmonic sums sum_n e^{ip theta_n} decide
how much of the artifact term survives, which is what the arrangement
helpers below measure.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .geometry import ArraySplit, RoiGrid
from .imaging import DEFAULT_CLAMP
from .special import bessel_j_orders, bessel_j_signed, truncation_order

SERIES_TOL = 1e-12


def harmonic_sums(angles, orders) -> np.ndarray:
    """sum_n exp(i p theta_n) for each order p."""
    t = np.asarray(angles, dtype=float)
    p = np.asarray(orders)
    return np.exp(1j * np.multiply.outer(p, t)).sum(axis=-1)


def _offsets(points, r_star):
    rel = np.atleast_2d(np.asarray(points, dtype=float)) - np.asarray(r_star, dtype=float)
    return np.hypot(rel[:, 0], rel[:, 1]), np.arctan2(rel[:, 1], rel[:, 0])


def artifact_term(points, r_star, angles, k, P: int, conjugate: bool = False):
    """sum_n sum_{0<|p|<=P} i^p J_p(k d) e^{ip(theta_n - phi)}, undivided.

    With ``conjugate`` the transmitter form (-i)^q J_q e^{-iq(theta - phi)}
    is used instead.  Returns one value per point.
    """
    if P < 1:
        raise ValueError("truncation order must be at least 1")
    d, phi = _offsets(points, r_star)
    orders = np.arange(-P, P + 1)
    J = bessel_j_signed(P, complex(k) * d)
    sign = -1 if conjugate else 1
    h = harmonic_sums(angles, sign * orders)
    phase = np.exp(-1j * sign * np.multiply.outer(orders, phi))
    coeff = ((sign * 1j) ** orders * h)[:, None]
    terms = coeff * J * phase
    terms[P] = 0  # p = 0 belongs to the J_0 part
    out = terms.sum(axis=0)
    return out[0] if np.ndim(points) == 1 else out


@dataclass(frozen=True, eq=False)
class SeriesMapPrediction:
    grid: RoiGrid
    predicted_F_rx: np.ndarray = field(repr=False)
    predicted_F_tx: np.ndarray = field(repr=False)
    inner_rx: np.ndarray = field(repr=False)
    inner_tx: np.ndarray = field(repr=False)
    truncation: int
    anomaly_center: tuple[float, float]

    @property
    def projection_sq_rx(self) -> np.ndarray:
        """Predicted |F_noise f|^2 = 1 - |J_0 + E_rx/N|^2."""
        return 1.0 - np.abs(self.inner_rx) ** 2

    @property
    def projection_sq_tx(self) -> np.ndarray:
        return 1.0 - np.abs(self.inner_tx) ** 2

    @property
    def predicted_F(self) -> np.ndarray:
        return 0.5 * (self.predicted_F_rx + self.predicted_F_tx)

    def inner_excess(self, eps: float = 1e-9) -> np.ndarray:
        """Mask of points where |J_0 + E/N| exceeds 1 + eps on either side."""
        return (np.abs(self.inner_rx) > 1 + eps) | (np.abs(self.inner_tx) > 1 + eps)


def _series_value(q: np.ndarray, clamp: float) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(q > 0, 1.0 / np.sqrt(np.where(q > 0, q, 1.0)), np.inf)
    return np.minimum(out, clamp)


def series_map(
    grid: RoiGrid,
    r_star,
    split: ArraySplit,
    k,
    tol: float = SERIES_TOL,
    clamp: float = DEFAULT_CLAMP,
) -> SeriesMapPrediction:
    """Predicted F_rx and F_tx maps for a single anomaly at ``r_star``."""
    d, _ = _offsets(grid.points, r_star)
    P = truncation_order(k, float(d.max()), tol)
    J0 = bessel_j_orders(0, complex(k) * d)[0]
    inner_rx = J0 + artifact_term(grid.points, r_star, split.rx.angles, k, P) / split.N
    inner_tx = J0 + artifact_term(grid.points, r_star, split.tx.angles, k, P, conjugate=True) / split.M
    return SeriesMapPrediction(
        grid,
        _series_value(1.0 - np.abs(inner_rx) ** 2, clamp),
        _series_value(1.0 - np.abs(inner_tx) ** 2, clamp),
        inner_rx,
        inner_tx,
        P,
        tuple(float(v) for v in r_star),
    )


@dataclass(frozen=True, eq=False)
class ArrangementSpectrum:
    angles: tuple[float, ...]
    orders: np.ndarray = field(repr=False)
    magnitudes: np.ndarray = field(repr=False)
    P: int

    def magnitude(self, p: int) -> float:
        return float(self.magnitudes[p + self.P])

    def report(self) -> str:
        lines = ["p |sum|"]
        lines += [f"{p} {m!r}" for p, m in zip(self.orders, self.magnitudes)]
        return "\n".join(lines) + "\n"


def arrangement_spectrum(angles, P: int) -> ArrangementSpectrum:
    """Magnitudes |sum_n e^{ip theta_n}| for p = -P..P."""
    angles = tuple(float(a) for a in angles)
    if not angles:
        raise ValueError("need at least one angle")
    if P < 1:
        raise ValueError("P must be at least 1")
    orders = np.arange(-P, P + 1)
    mags = np.abs(harmonic_sums(angles, orders))
    mags[P] = len(angles)
    return ArrangementSpectrum(angles, orders, mags, P)


def bessel_envelope(k, max_distance: float, P: int, samples: int = 4001) -> np.ndarray:
    """max over 0 <= d <= max_distance of |J_p(k d)| for p = 0..P (sampled)."""
    d = np.linspace(0.0, max_distance, samples)
    return np.abs(bessel_j_orders(P, complex(k) * d)).max(axis=1)


def arrangement_score(angles, k, max_distance: float, tol: float = SERIES_TOL) -> float:
    """Bessel-weighted size of the uncancelled harmonics, divided by N.

    Zero when every harmonic sum with 0 < |p| <= P vanishes; larger values
    mean stronger artifact terms.
    """
    angles = tuple(float(a) for a in angles)
    if not angles:
        raise ValueError("need at least one angle")
    P = truncation_order(k, max_distance, tol)
    weights = bessel_envelope(k, max_distance, P)[1:]
    spec = arrangement_spectrum(angles, P)
    mags = spec.magnitudes[P + 1 :]
    # |h_-p| = |h_p| and |J_-p| = |J_p|, so both signs contribute equally
    return float(2 * np.sum(weights * mags) / len(angles))
