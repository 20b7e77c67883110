"""Background medium, anomalies and Born-approximate scattering matrices."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .geometry import ArraySplit
from .special import hankel0_2

EPS0 = 8.854e-12
MU0 = 4e-7 * math.pi

FIELD_MODELS = ("exact-hankel", "far-field")
PROVENANCES = ("born-synthetic", "far-field-synthetic", "file")


class CoincidenceError(ValueError):
    """A field point coincides with a source, where the kernel is singular."""


class AnomalyOverlapError(ValueError):
    pass


@dataclass(frozen=True)
class MediumSpec:
    """Homogeneous background. ``eps_b`` in F/m, ``sigma_b`` in S/m."""

    eps_b: float
    sigma_b: float
    frequency: float
    mu_b: float = MU0

    def __post_init__(self):
        if not self.eps_b > 0:
            raise ValueError("eps_b must be positive")
        if not self.sigma_b >= 0:
            raise ValueError("sigma_b must be non-negative")
        if not self.mu_b > 0:
            raise ValueError("mu_b must be positive")
        if not self.frequency > 0:
            raise ValueError("frequency must be positive")

    @classmethod
    def relative(cls, eps_r, sigma_b, frequency, mu_r=1.0):
        return cls(eps_r * EPS0, sigma_b, frequency, mu_r * MU0)

    @property
    def omega(self) -> float:
        return 2 * math.pi * self.frequency


@dataclass(frozen=True)
class AnomalySpec:
    """Small disk anomaly. ``eps`` in F/m, ``sigma`` in S/m."""

    center: tuple[float, float]
    radius: float
    eps: float
    sigma: float

    def __post_init__(self):
        c = tuple(float(v) for v in self.center)
        if len(c) != 2:
            raise ValueError("anomaly center must be a 2-D point")
        object.__setattr__(self, "center", c)
        if not self.radius > 0:
            raise ValueError("anomaly radius must be positive")
        if not self.eps > 0:
            raise ValueError("anomaly permittivity must be positive")
        if not self.sigma >= 0:
            raise ValueError("anomaly conductivity must be non-negative")

    @classmethod
    def relative(cls, center, radius, eps_r, sigma):
        return cls(tuple(center), radius, eps_r * EPS0, sigma)


@dataclass(frozen=True, eq=False)
class ScatteringMatrix:
    """N x M matrix of scattered-field S-parameters (rows: receivers)."""

    entries: np.ndarray = field(repr=False)
    split: ArraySplit
    medium: MediumSpec
    provenance: str = "born-synthetic"

    def __post_init__(self):
        K = np.asarray(self.entries, dtype=complex)
        if K.shape != (self.split.N, self.split.M):
            raise ValueError(
                f"matrix shape {K.shape} does not match split "
                f"({self.split.N} receivers x {self.split.M} transmitters)"
            )
        if not np.all(np.isfinite(K)):
            raise ValueError("scattering matrix has non-finite entries")
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")
        object.__setattr__(self, "entries", K)

    @property
    def field_model(self) -> str:
        return "far-field" if self.provenance == "far-field-synthetic" else "exact-hankel"


def wavenumber(medium: MediumSpec) -> complex:
    """Background wavenumber with Re k > 0 and Im k <= 0.

    The principal root of omega^2 mu (eps + i sigma/omega) has Im k >= 0;
    its conjugate is returned so that H_0^(2)(k r) ~ e^{-ikr} decays with r.
    """
    w = medium.omega
    k = w * np.sqrt(medium.mu_b * (medium.eps_b + 1j * medium.sigma_b / w) + 0j)
    return complex(np.conj(k))


def wavelength(medium: MediumSpec) -> float:
    return 2 * math.pi / wavenumber(medium).real


def contrast(medium: MediumSpec, anomaly: AnomalySpec) -> complex:
    w = medium.omega
    return complex(
        (anomaly.eps - medium.eps_b) / medium.eps_b,
        (anomaly.sigma - medium.sigma_b) / (w * medium.eps_b),
    )


@dataclass(frozen=True)
class SmallAnomalyCheck:
    passed: bool
    size_term: float
    wavelength: float

    @property
    def ratio(self) -> float:
        return self.size_term / self.wavelength

    @property
    def margin(self) -> float:
        """Wavelength over the size term (infinite for zero contrast)."""
        return math.inf if self.size_term <= 0 else self.wavelength / self.size_term


def small_anomaly_check(medium: MediumSpec, anomaly: AnomalySpec) -> SmallAnomalyCheck:
    """Born validity test 4*alpha*(sqrt(eps/eps_b) - 1) < lambda."""
    lhs = 4 * anomaly.radius * (math.sqrt(anomaly.eps / medium.eps_b) - 1)
    lam = wavelength(medium)
    return SmallAnomalyCheck(lhs < lam, lhs, lam)


def incident_field(source, points, k) -> np.ndarray:
    """(i/4) H_0^(2)(k |source - point|), broadcasting over leading axes."""
    source = np.asarray(source, dtype=float)
    points = np.asarray(points, dtype=float)
    d = np.sqrt(np.sum((source - points) ** 2, axis=-1))
    if np.any(d == 0):
        raise CoincidenceError("field point coincides with an antenna")
    return 0.25j * hankel0_2(complex(k) * d)


def far_field_incident(angle, points, k, radius: float) -> np.ndarray:
    """Far-field form (-1+i) e^{-ikR} / (4 sqrt(k pi R)) e^{ik theta.r}.

    ``angle`` is the polar angle of an antenna on the circle of radius R.
    """
    if not radius > 0:
        raise ValueError("radius must be positive")
    k = complex(k)
    angle = np.asarray(angle, dtype=float)
    points = np.asarray(points, dtype=float)
    proj = np.cos(angle) * points[..., 0] + np.sin(angle) * points[..., 1]
    pref = (-1 + 1j) * np.exp(-1j * k * radius) / (4 * np.sqrt(k * np.pi * radius))
    return pref * np.exp(1j * k * proj)


def antenna_fields(positions, angles, radius, points, k, field_model) -> np.ndarray:
    """Fields from each antenna at each point, shape ``(n_antennas, n_points)``."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    if field_model == "exact-hankel":
        return incident_field(positions[:, None, :], points[None, :, :], k)
    if field_model == "far-field":
        return far_field_incident(np.asarray(angles)[:, None], points[None, :, :], k, radius)
    raise ValueError(f"unknown field model {field_model!r}")


def check_disjoint(anomalies) -> None:
    for i, a in enumerate(anomalies):
        for b in anomalies[i + 1 :]:
            gap = math.dist(a.center, b.center)
            if gap <= a.radius + b.radius:
                raise AnomalyOverlapError(
                    f"anomalies at {a.center} and {b.center} overlap "
                    f"(distance {gap:.4g} <= {a.radius + b.radius:.4g})"
                )


def born_scattering_matrix(
    split: ArraySplit,
    medium: MediumSpec,
    anomalies,
    field_model: str = "exact-hankel",
) -> ScatteringMatrix:
    """Sum over anomalies of i k^2 alpha^2 pi O / (4 omega mu_b) E(a_n, r) E(b_m, r)."""
    anomalies = list(anomalies)
    if not anomalies:
        raise ValueError("need at least one anomaly")
    if field_model not in FIELD_MODELS:
        raise ValueError(f"unknown field model {field_model!r}")
    check_disjoint(anomalies)
    k = wavenumber(medium)
    arr = split.full
    rx_pos, tx_pos = split.rx_positions, split.tx_positions
    rx_ang, tx_ang = split.rx.angle_array, split.tx.angle_array
    K = np.zeros((split.N, split.M), dtype=complex)
    for an in anomalies:
        chk = small_anomaly_check(medium, an)
        if not chk.passed:
            warnings.warn(
                f"anomaly at {an.center} violates the small-anomaly condition "
                f"({chk.size_term:.4g} m >= wavelength {chk.wavelength:.4g} m)",
                stacklevel=2,
            )
        c = np.array([an.center])
        e_rx = antenna_fields(rx_pos, rx_ang, arr.radius, c, k, field_model)[:, 0]
        e_tx = antenna_fields(tx_pos, tx_ang, arr.radius, c, k, field_model)[:, 0]
        coef = 1j * k**2 * an.radius**2 * np.pi / (4 * medium.omega * medium.mu_b)
        K += (coef * contrast(medium, an)) * np.outer(e_rx, e_tx)
    provenance = "born-synthetic" if field_model == "exact-hankel" else "far-field-synthetic"
    return ScatteringMatrix(K, split, medium, provenance)
