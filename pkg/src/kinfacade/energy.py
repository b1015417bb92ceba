"""
Steady-state single-zone cooling surrogate.

Each occupied hour the zone needs

    Q = Q_solar + Q_internal + Q_conduction

watts of cooling, with

    Q_solar = A_glass * SHGC * ((1 - b_dir) * DNI * cos(incidence)
                                + (1 - b_dif) * DHI * 0.5)
    Q_internal = gain_density * floor_area
    Q_conduction = UA * (T_out - T_setpoint)

where ``b_dir``/``b_dif`` are the skin's blocking fractions. Unoccupied
hours carry no load and negative loads are not heating, they are dropped.
OEC is the cooling energy per conditioned floor area in kWh/m2.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from typing import Iterable, Optional

import numpy as np

from . import solar
from .facade import FacadeGenotype
from .solar import SitePosition, SunState
from .weather import HourlyWeather, WeatherSeries

__all__ = [
    "BuildingParams",
    "EnergyReport",
    "WindowModel",
    "solar_gain",
    "hourly_cooling_load",
    "accumulate_oec",
    "evaluate_oec",
    "oec_total",
]

DIFFUSE_VIEW_FACTOR = 0.5  # vertical surface, isotropic sky


@dataclass(frozen=True)
class BuildingParams:
    """
    Surrogate building description.

    Geometry and schedule defaults describe a two-storey office with a
    7 m wide, 80 % glazed south facade, occupied 08:00-16:00. SHGC, UA
    and internal gains are generic office values.
    """

    floor_area_per_storey: float = 39.66
    storeys: int = 2
    facade_width: float = 7.0
    facade_height: float = 8.0
    window_to_wall: float = 0.80
    shgc: float = 0.40
    envelope_ua: float = 80.0
    internal_gain_density: float = 15.0
    cooling_setpoint: float = 24.0
    occupied_hours: tuple[int, int] = (8, 16)
    facade_azimuth: float = 180.0

    def __post_init__(self):
        object.__setattr__(self, "occupied_hours", tuple(int(h) for h in self.occupied_hours))
        positive = ("floor_area_per_storey", "storeys", "facade_width", "facade_height",
                    "envelope_ua")
        for name in positive:
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        if self.internal_gain_density < 0:
            raise ValueError("internal_gain_density must be >= 0")
        if not 0 < self.window_to_wall <= 1:
            raise ValueError(f"window_to_wall must be in (0, 1], got {self.window_to_wall}")
        if not 0 < self.shgc <= 1:
            raise ValueError(f"shgc must be in (0, 1], got {self.shgc}")
        lo, hi = self.occupied_hours
        if not 1 <= lo <= hi <= 24:
            raise ValueError(f"occupied_hours must satisfy 1 <= start <= end <= 24, got {lo, hi}")

    @property
    def total_floor_area(self) -> float:
        return self.floor_area_per_storey * self.storeys

    @property
    def glazing_area(self) -> float:
        return self.facade_width * self.facade_height * self.window_to_wall

    def occupied(self, hour: int) -> bool:
        return self.occupied_hours[0] <= hour <= self.occupied_hours[1]

    def to_dict(self) -> dict:
        d = asdict(self)
        d["occupied_hours"] = list(self.occupied_hours)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "BuildingParams":
        return cls(**{**d, "occupied_hours": tuple(d.get("occupied_hours", (8, 16)))})


def solar_gain(dni: float, dhi: float, incidence_cos: float, blocking: tuple[float, float],
               params: BuildingParams) -> float:
    """Transmitted solar power through the glazing, W."""
    direct, diffuse = blocking
    beam = (1.0 - direct) * dni * max(0.0, incidence_cos)
    sky = (1.0 - diffuse) * dhi * DIFFUSE_VIEW_FACTOR
    return params.glazing_area * params.shgc * (beam + sky)


def hourly_cooling_load(wx: HourlyWeather, sun: SunState, blocking: tuple[float, float],
                        params: BuildingParams) -> float:
    """
    Zone load for one hour in W, before negative values are dropped.

    Returns 0 outside the occupied hours.
    """
    if not params.occupied(wx.hour):
        return 0.0
    if not all(0.0 <= b <= 1.0 for b in blocking):
        raise ValueError(f"blocking fractions must lie in [0, 1], got {blocking}")
    incidence = sun.incidence_cos if sun.is_up else 0.0
    q_solar = solar_gain(wx.dni, wx.dhi, incidence, blocking, params)
    q_int = params.internal_gain_density * params.total_floor_area
    q_cond = params.envelope_ua * (wx.dry_bulb - params.cooling_setpoint)
    # same association as WindowModel.loads so both paths agree bit for bit
    return q_solar + (q_int + q_cond)


def accumulate_oec(hourly_loads: Iterable[tuple[tuple, float]], floor_area: float) -> float:
    """
    Cooling energy in kWh/m2 from ``((month, day, hour), load_w)`` pairs.

    Hours are summed per calendar day first and the day totals combined
    with :func:`oec_total`, so splitting a window at day boundaries and
    adding the parts reproduces the whole-window value exactly.
    """
    days: dict[tuple, list[float]] = {}
    for stamp, load in hourly_loads:
        days.setdefault(tuple(stamp[:2]), []).append(max(0.0, float(load)) / 1000.0 / floor_area)
    return oec_total(math.fsum(v) for v in days.values())


def oec_total(parts: Iterable[float]) -> float:
    """Total consumption over several intervals, each in kWh/m2."""
    parts = [float(p) for p in parts]
    if any(p < 0 for p in parts):
        raise ValueError("interval consumptions must be non-negative")
    return math.fsum(parts)


@dataclass(frozen=True)
class EnergyReport:
    hourly_loads: tuple[tuple[tuple[int, int, int], float], ...]
    oec: float
    window: tuple[tuple[int, int, int], tuple[int, int, int]]
    params: BuildingParams = field(default_factory=BuildingParams)

    def to_dict(self) -> dict:
        return {
            "window": {"start": list(self.window[0]), "end": list(self.window[1])},
            "oec": self.oec,
            "units": "kWh/m2",
            "hours": len(self.hourly_loads),
            "parameters": self.params.to_dict(),
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["month", "day", "hour", "load_w"])
        for (m, d, h), load in self.hourly_loads:
            w.writerow([m, d, h, repr(float(load))])
        return buf.getvalue()


class WindowModel:
    """
    A weather window and building, precomputed for repeated scoring.

    Sun positions and the genotype-independent load terms are computed
    once; :meth:`loads` then only has to work out the blocking fractions.
    """

    def __init__(self, series: WeatherSeries, params: BuildingParams = BuildingParams(),
                 site: Optional[SitePosition] = None):
        if len(series) == 0:
            raise ValueError("weather series is empty")
        self.series = series
        self.params = params
        self.site = series.site if site is None else site
        p = params
        self.stamps = tuple(r.stamp for r in series)
        self.suns = tuple(
            solar.sun_state(self.site, r.day_of_year, solar.solar_hour(self.site, r.hour - 0.5),
                            p.facade_azimuth)
            for r in series
        )
        self.occupied = np.array([p.occupied(r.hour) for r in series])
        self.in_front = np.array([s.in_front for s in self.suns])
        # scalar tan per hour keeps each hour's value independent of the window length
        self._tan_profile = np.array(
            [math.tan(s.profile_angle) for s, front in zip(self.suns, self.in_front) if front]
        )
        self.incidence = np.array([s.incidence_cos if s.is_up else 0.0 for s in self.suns])
        self.dni = series.column("dni")
        self.dhi = series.column("dhi")
        q_int = p.internal_gain_density * p.total_floor_area
        q_cond = p.envelope_ua * (series.column("dry_bulb") - p.cooling_setpoint)
        self._base = q_int + q_cond

    @property
    def window(self):
        return (self.stamps[0], self.stamps[-1])

    def blocking(self, genotype: Optional[FacadeGenotype]) -> tuple[np.ndarray, np.ndarray]:
        """Per-hour (direct, diffuse) blocking fractions."""
        n = len(self.stamps)
        if genotype is None:
            return np.zeros(n), np.zeros(n)
        if genotype.layout.facade_azimuth != self.params.facade_azimuth:
            raise ValueError("genotype layout and building face different azimuths")
        angles = genotype.flat()
        w = genotype.layout.element_weights()
        diffuse = np.full(n, float(np.clip(w @ np.cos(angles), 0.0, 1.0)))
        direct = np.zeros(n)
        if self._tan_profile.size:
            # elementwise form of element_direct_block; row sums reduce each hour alike
            block = np.cos(angles)[None, :] + np.sin(angles)[None, :] * self._tan_profile[:, None]
            block = np.clip(block, 0.0, 1.0)
            direct[self.in_front] = np.clip((block * w).sum(axis=1), 0.0, 1.0)
        return direct, diffuse

    def loads(self, genotype: Optional[FacadeGenotype] = None) -> np.ndarray:
        """Hourly zone loads in W (negative values kept, unoccupied hours 0)."""
        direct, diffuse = self.blocking(genotype)
        p = self.params
        beam = (1.0 - direct) * self.dni * np.maximum(0.0, self.incidence)
        sky = (1.0 - diffuse) * self.dhi * DIFFUSE_VIEW_FACTOR
        q_solar = p.glazing_area * p.shgc * (beam + sky)
        return np.where(self.occupied, q_solar + self._base, 0.0)

    def report(self, genotype: Optional[FacadeGenotype] = None) -> EnergyReport:
        hourly = tuple(zip(self.stamps, (float(v) for v in self.loads(genotype))))
        oec = accumulate_oec(hourly, self.params.total_floor_area)
        return EnergyReport(hourly, oec, self.window, self.params)

    def oec(self, genotype: Optional[FacadeGenotype] = None) -> float:
        return accumulate_oec(zip(self.stamps, self.loads(genotype)), self.params.total_floor_area)


def evaluate_oec(series: WeatherSeries, genotype: Optional[FacadeGenotype] = None,
                 params: BuildingParams = BuildingParams(),
                 site: Optional[SitePosition] = None) -> EnergyReport:
    """
    Cooling energy of ``series`` with an optional second skin.

    ``genotype=None`` is the bare facade (no blocking). ``site`` defaults to
    the series' own site.
    """
    return WindowModel(series, params, site).report(genotype)
