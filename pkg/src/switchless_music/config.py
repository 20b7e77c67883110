"""Experiment configuration files.

INI layout (relative permittivities are multiples of EPS0)::

    [medium]        eps_r, sigma, frequency, mu_r (optional)
    [array]         count, radius
    [grid]          radius, step
    [imaging]       threshold, clamp, field_model
    [metric]        zeta = comma-separated thresholds
    [anomaly.<id>]  center = x, y; radius; eps_r; sigma
    [split.<name>]  tx = 1-based indices; rx = 1-based indices
"""

from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .forward import FIELD_MODELS, AnomalySpec, MediumSpec, check_disjoint
from .geometry import ArraySplit, RoiGrid, roi_grid, split_array, uniform_circle_array
from .imaging import DEFAULT_CLAMP, DEFAULT_THRESHOLD


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class GridSettings:
    radius: float = 0.08
    step: float = 0.001


@dataclass(frozen=True)
class ImagingSettings:
    threshold: float = DEFAULT_THRESHOLD
    clamp: float = DEFAULT_CLAMP
    field_model: str = "exact-hankel"


DEFAULT_ZETAS = tuple(round(0.5 + 0.05 * i, 2) for i in range(10))


@dataclass(frozen=True)
class ExperimentConfig:
    medium: MediumSpec
    array_count: int
    array_radius: float
    anomalies: tuple[AnomalySpec, ...]
    splits: dict = field(default_factory=dict)
    grid: GridSettings = GridSettings()
    imaging: ImagingSettings = ImagingSettings()
    zetas: tuple[float, ...] = DEFAULT_ZETAS
    name: str = "experiment"

    def __post_init__(self):
        for i, an in enumerate(self.anomalies, 1):
            if math.hypot(*an.center) >= self.grid.radius:
                raise ConfigError(f"[anomaly {i}] center {an.center} is not inside the region of interest")
        try:
            check_disjoint(self.anomalies)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        for name in self.splits:
            self.split(name)

    def array(self):
        return uniform_circle_array(self.array_count, self.array_radius)

    def split(self, name: str) -> ArraySplit:
        if name not in self.splits:
            known = ", ".join(sorted(self.splits)) or "none"
            raise ConfigError(f"unknown split {name!r} (known: {known})")
        tx, rx = self.splits[name]
        try:
            return split_array(self.array(), tx, rx)
        except (ValueError, IndexError) as exc:
            raise ConfigError(f"[split.{name}] {exc}") from exc

    def roi(self) -> RoiGrid:
        return roi_grid(self.grid.radius, self.grid.step)


def _floats(text: str) -> list[float]:
    return [float(t) for t in text.replace(",", " ").split()]


def _ints(text: str) -> list[int]:
    return [int(t) for t in text.replace(",", " ").split()]


def _get(cp, section, key, conv, default=None):
    if not cp.has_option(section, key):
        if default is None:
            raise ConfigError(f"[{section}] missing required key '{key}'")
        return default
    raw = cp.get(section, key)
    try:
        return conv(raw)
    except ValueError as exc:
        raise ConfigError(f"[{section}] {key} = {raw!r}: {exc}") from exc


def parse_config(text: str, name: str = "experiment") -> ExperimentConfig:
    cp = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"unparsable config: {exc}") from exc
    for sec in ("medium", "array"):
        if not cp.has_section(sec):
            raise ConfigError(f"missing section [{sec}]")
    try:
        medium = MediumSpec.relative(
            _get(cp, "medium", "eps_r", float),
            _get(cp, "medium", "sigma", float),
            _get(cp, "medium", "frequency", float),
            _get(cp, "medium", "mu_r", float, 1.0),
        )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"[medium] {exc}") from exc

    grid = GridSettings(
        _get(cp, "grid", "radius", float, GridSettings.radius) if cp.has_section("grid") else GridSettings.radius,
        _get(cp, "grid", "step", float, GridSettings.step) if cp.has_section("grid") else GridSettings.step,
    )
    if not 0 < grid.step <= grid.radius:
        raise ConfigError(f"[grid] need 0 < step <= radius, got step={grid.step}, radius={grid.radius}")

    imaging = ImagingSettings()
    if cp.has_section("imaging"):
        imaging = ImagingSettings(
            _get(cp, "imaging", "threshold", float, DEFAULT_THRESHOLD),
            _get(cp, "imaging", "clamp", float, DEFAULT_CLAMP),
            _get(cp, "imaging", "field_model", str, "exact-hankel"),
        )
    if imaging.field_model not in FIELD_MODELS:
        raise ConfigError(f"[imaging] field_model must be one of {FIELD_MODELS}")
    if not 0 < imaging.threshold < 1:
        raise ConfigError("[imaging] threshold must lie in (0, 1)")
    if not imaging.clamp > 1:
        raise ConfigError("[imaging] clamp must exceed 1")

    zetas = DEFAULT_ZETAS
    if cp.has_section("metric"):
        zetas = tuple(_get(cp, "metric", "zeta", _floats, list(DEFAULT_ZETAS)))
    if any(not 0 <= z <= 1 for z in zetas) or list(zetas) != sorted(zetas):
        raise ConfigError("[metric] zeta values must be sorted and lie in [0, 1]")

    anomalies = []
    for sec in cp.sections():
        if not sec.startswith("anomaly."):
            continue
        center = _get(cp, sec, "center", _floats)
        if len(center) != 2:
            raise ConfigError(f"[{sec}] center needs two coordinates")
        try:
            anomalies.append(
                AnomalySpec.relative(
                    center,
                    _get(cp, sec, "radius", float),
                    _get(cp, sec, "eps_r", float),
                    _get(cp, sec, "sigma", float),
                )
            )
        except ConfigError:
            raise
        except ValueError as exc:
            raise ConfigError(f"[{sec}] {exc}") from exc

    splits = {}
    for sec in cp.sections():
        if sec.startswith("split."):
            splits[sec[len("split."):]] = (
                tuple(_get(cp, sec, "tx", _ints)),
                tuple(_get(cp, sec, "rx", _ints)),
            )

    count = _get(cp, "array", "count", int)
    radius = _get(cp, "array", "radius", float)
    if count < 1 or not radius > 0:
        raise ConfigError("[array] need count >= 1 and radius > 0")
    return ExperimentConfig(
        medium, count, radius, tuple(anomalies), splits, grid, imaging, zetas, name
    )


def bundled_configs() -> list[str]:
    root = resources.files(__package__) / "configs"
    return sorted(p.name[:-4] for p in root.iterdir() if p.name.endswith(".ini"))


def load_config(spec) -> ExperimentConfig:
    """Load from a file path, or from a bundled config name such as ``example3``."""
    path = Path(spec)
    if path.is_file():
        return parse_config(path.read_text(), path.stem)
    res = resources.files(__package__) / "configs" / f"{spec}.ini"
    if res.is_file():
        return parse_config(res.read_text(), str(spec))
    raise ConfigError(f"no config file or bundled config named {spec!r} (bundled: {', '.join(bundled_configs())})")
