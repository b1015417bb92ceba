"""
Study configuration and its sectioned key-value file format.

A config file is INI-style with sections ``[study]``, ``[site]``,
``[facade]``, ``[bbbc]`` and ``[building]``. Missing keys keep their
defaults, unknown keys are an error. Hours are written ``MM-DD:HH``::

    [study]
    window_start = 08-10:01
    window_end = 08-12:24
    weather = synthetic

    [bbbc]
    population_size = 3
    iterations = 15
    alpha = 0.3
    seed = 0
"""

from __future__ import annotations

import configparser
import dataclasses
import os
import re
from dataclasses import dataclass, field
from typing import Optional

from .bbbc import BbbcConfig
from .energy import BuildingParams
from .facade import DEFAULT_BOUNDS, FOLD_LIMIT, FacadeLayout, ModuleType
from .solar import SHIRAZ, SitePosition

__all__ = [
    "ConfigError",
    "StudyConfig",
    "parse_stamp",
    "format_stamp",
    "config_to_dict",
    "config_from_dict",
    "load_config",
    "dump_config",
]

Stamp = tuple  # (month, day, hour)

DEFAULT_WINDOW = ((8, 10, 1), (8, 12, 24))

_STAMP_RE = re.compile(r"^\s*(\d{1,2})-(\d{1,2})[:T ](\d{1,2})\s*$")


class ConfigError(ValueError):
    """Invalid or inconsistent study configuration."""


def parse_stamp(text) -> Stamp:
    """``"08-10:01"`` (or ``"8-10T1"``) to ``(8, 10, 1)``."""
    if isinstance(text, (tuple, list)):
        m, d, h = (int(v) for v in text)
    else:
        match = _STAMP_RE.match(str(text))
        if not match:
            raise ConfigError(f"cannot read date-hour {text!r}; expected MM-DD:HH")
        m, d, h = (int(g) for g in match.groups())
    if not (1 <= m <= 12 and 1 <= d <= 31 and 1 <= h <= 24):
        raise ConfigError(f"date-hour {text!r} out of range")
    return (m, d, h)


def format_stamp(stamp: Stamp) -> str:
    m, d, h = stamp
    return f"{m:02d}-{d:02d}:{h:02d}"


@dataclass(frozen=True)
class StudyConfig:
    """Everything needed to run the three study stages reproducibly."""

    window: tuple[Stamp, Stamp] = DEFAULT_WINDOW
    weather_source: Optional[str] = None  # EPW path, None for clear-sky synthesis
    site: SitePosition = SHIRAZ
    layout: FacadeLayout = field(default_factory=FacadeLayout)
    bounds: tuple[float, float] = DEFAULT_BOUNDS
    bbbc: BbbcConfig = field(default_factory=BbbcConfig)
    building: BuildingParams = field(default_factory=BuildingParams)
    kinetic_interval: int = 24  # hours
    workers: int = 1  # parallel kinetic intervals

    def __post_init__(self):
        start, end = (parse_stamp(s) for s in self.window)
        object.__setattr__(self, "window", (start, end))
        if start > end:
            raise ConfigError(f"window start {format_stamp(start)} is after end {format_stamp(end)}")
        lo, hi = (float(b) for b in self.bounds)
        object.__setattr__(self, "bounds", (lo, hi))
        if not 0.0 <= lo < hi <= FOLD_LIMIT:
            raise ConfigError(f"fold-angle bounds {self.bounds} must lie within [0, pi/2]")
        if self.kinetic_interval < 1:
            raise ConfigError("kinetic_interval must be at least one hour")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        if self.layout.facade_azimuth != self.building.facade_azimuth:
            raise ConfigError("facade layout and building must face the same azimuth")

    def with_seed(self, seed: int) -> "StudyConfig":
        return dataclasses.replace(self, bbbc=dataclasses.replace(self.bbbc, seed=seed))


def _bool(value) -> bool:
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in ("1", "true", "yes", "on"):
        return True
    if text in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"not a boolean: {value!r}")


def _hours_range(value) -> tuple[int, int]:
    if isinstance(value, (list, tuple)):
        lo, hi = value
    else:
        lo, hi = str(value).split("-")
    return (int(lo), int(hi))


def _module_types(value, n: int) -> tuple[ModuleType, ...]:
    items = value if isinstance(value, (list, tuple)) else str(value).split(",")
    types = tuple(ModuleType.parse(v) for v in items)
    return types * n if len(types) == 1 else types


def config_to_dict(cfg: StudyConfig) -> dict:
    """Nested plain-data form; JSON-serializable and accepted by :func:`config_from_dict`."""
    b = cfg.building
    return {
        "study": {
            "window_start": format_stamp(cfg.window[0]),
            "window_end": format_stamp(cfg.window[1]),
            "weather": cfg.weather_source or "synthetic",
            "kinetic_interval_hours": cfg.kinetic_interval,
            "workers": cfg.workers,
        },
        "site": {
            "latitude": cfg.site.latitude,
            "longitude": cfg.site.longitude,
            "timezone_offset": cfg.site.timezone_offset,
        },
        "facade": {
            "grid_rows": cfg.layout.grid_rows,
            "grid_cols": cfg.layout.grid_cols,
            "module_types": [t.value for t in cfg.layout.module_types],
            "azimuth": cfg.layout.facade_azimuth,
            "r_min": cfg.bounds[0],
            "r_max": cfg.bounds[1],
        },
        "bbbc": dataclasses.asdict(cfg.bbbc),
        "building": {
            "floor_area_per_storey": b.floor_area_per_storey,
            "storeys": b.storeys,
            "facade_width": b.facade_width,
            "facade_height": b.facade_height,
            "window_to_wall": b.window_to_wall,
            "shgc": b.shgc,
            "envelope_ua": b.envelope_ua,
            "internal_gain_density": b.internal_gain_density,
            "cooling_setpoint": b.cooling_setpoint,
            "occupied_hours": list(b.occupied_hours),
        },
    }


_SECTIONS = {
    "study": {"window_start", "window_end", "weather", "kinetic_interval_hours", "workers"},
    "site": {"latitude", "longitude", "timezone_offset"},
    "facade": {"grid_rows", "grid_cols", "module_types", "azimuth", "r_min", "r_max"},
    "bbbc": {f.name for f in dataclasses.fields(BbbcConfig)},
    "building": {f.name for f in dataclasses.fields(BuildingParams)} - {"facade_azimuth"},
}


def config_from_dict(data: dict) -> StudyConfig:
    """Build a :class:`StudyConfig` from nested sections of strings or native values."""
    unknown = set(data) - set(_SECTIONS)
    if unknown:
        raise ConfigError(f"unknown config section(s): {', '.join(sorted(unknown))}")
    for name, section in data.items():
        extra = set(section) - _SECTIONS[name]
        if extra:
            raise ConfigError(f"unknown key(s) in [{name}]: {', '.join(sorted(extra))}")

    s = data.get("study", {})
    site_d = data.get("site", {})
    f = data.get("facade", {})
    bb = data.get("bbbc", {})
    bd = data.get("building", {})
    try:
        default = StudyConfig()
        site = SitePosition(
            float(site_d.get("latitude", default.site.latitude)),
            float(site_d.get("longitude", default.site.longitude)),
            float(site_d.get("timezone_offset", default.site.timezone_offset)),
        )
        dflt_b = default.building
        azimuth = float(f.get("azimuth", dflt_b.facade_azimuth))
        building = BuildingParams(
            floor_area_per_storey=float(bd.get("floor_area_per_storey", dflt_b.floor_area_per_storey)),
            storeys=int(bd.get("storeys", dflt_b.storeys)),
            facade_width=float(bd.get("facade_width", dflt_b.facade_width)),
            facade_height=float(bd.get("facade_height", dflt_b.facade_height)),
            window_to_wall=float(bd.get("window_to_wall", dflt_b.window_to_wall)),
            shgc=float(bd.get("shgc", dflt_b.shgc)),
            envelope_ua=float(bd.get("envelope_ua", dflt_b.envelope_ua)),
            internal_gain_density=float(bd.get("internal_gain_density", dflt_b.internal_gain_density)),
            cooling_setpoint=float(bd.get("cooling_setpoint", dflt_b.cooling_setpoint)),
            occupied_hours=_hours_range(bd.get("occupied_hours", dflt_b.occupied_hours)),
            facade_azimuth=azimuth,
        )
        rows = int(f.get("grid_rows", 4))
        cols = int(f.get("grid_cols", 4))
        layout = FacadeLayout(
            rows, cols, _module_types(f.get("module_types", 3), rows * cols),
            building.facade_width, building.facade_height, azimuth,
        )
        dflt_o = default.bbbc
        bbbc = BbbcConfig(
            population_size=int(bb.get("population_size", dflt_o.population_size)),
            iterations=int(bb.get("iterations", dflt_o.iterations)),
            alpha=float(bb.get("alpha", dflt_o.alpha)),
            seed=int(bb.get("seed", dflt_o.seed)),
            elitism=_bool(bb.get("elitism", dflt_o.elitism)),
            fitness_floor=float(bb.get("fitness_floor", dflt_o.fitness_floor)),
            distribution=str(bb.get("distribution", dflt_o.distribution)),
            workers=int(bb.get("workers", dflt_o.workers)),
        )
        weather = str(s.get("weather", "synthetic")).strip()
        return StudyConfig(
            window=(parse_stamp(s.get("window_start", DEFAULT_WINDOW[0])),
                    parse_stamp(s.get("window_end", DEFAULT_WINDOW[1]))),
            weather_source=None if weather.lower() == "synthetic" else weather,
            site=site,
            layout=layout,
            bounds=(float(f.get("r_min", DEFAULT_BOUNDS[0])), float(f.get("r_max", DEFAULT_BOUNDS[1]))),
            bbbc=bbbc,
            building=building,
            kinetic_interval=int(s.get("kinetic_interval_hours", 24)),
            workers=int(s.get("workers", 1)),
        )
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from None


def load_config(path: str | os.PathLike) -> StudyConfig:
    parser = configparser.ConfigParser(interpolation=None)
    if not parser.read(path):
        raise ConfigError(f"cannot read config file {os.fspath(path)!r}")
    return config_from_dict({name: dict(parser[name]) for name in parser.sections()})


def _ini_value(key: str, value) -> str:
    if key == "occupied_hours":
        return f"{value[0]}-{value[1]}"
    if isinstance(value, (list, tuple)):
        return ",".join(str(v) for v in value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def dump_config(cfg: StudyConfig) -> str:
    """INI text that :func:`load_config` reads back to an equal config."""
    lines = []
    for name, section in config_to_dict(cfg).items():
        lines.append(f"[{name}]")
        for key, value in section.items():
            lines.append(f"{key} = {_ini_value(key, value)}")
        lines.append("")
    return "\n".join(lines)
