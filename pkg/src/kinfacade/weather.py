"""
Hourly weather: EPW ingestion, a compact CSV subset, and clear-sky synthesis.

Only dry-bulb temperature, direct normal and diffuse horizontal irradiance
are kept from an EPW file. Record ``hour`` follows EPW convention: hour 1
covers 00:00-01:00 local standard time.
"""

from __future__ import annotations

import csv
import io
import math
import os
from dataclasses import dataclass
from datetime import date, timedelta
from typing import Iterable, Optional, Sequence, TextIO

import numpy as np

from . import solar
from .solar import SitePosition

__all__ = [
    "HourlyWeather",
    "WeatherSeries",
    "EpwFormatError",
    "WeatherRangeError",
    "parse_epw",
    "read_epw",
    "write_subset",
    "read_subset",
    "default_dry_bulb_profile",
    "synthesize_clear_sky",
    "synthesize_window",
]

EPW_HEADER_KEYWORDS = (
    "LOCATION",
    "DESIGN CONDITIONS",
    "TYPICAL/EXTREME PERIODS",
    "GROUND TEMPERATURES",
    "HOLIDAYS/DAYLIGHT SAVINGS",
    "COMMENTS 1",
    "COMMENTS 2",
    "DATA PERIODS",
)
N_HEADER = len(EPW_HEADER_KEYWORDS)

# 1-indexed EPW data fields
_F_MONTH, _F_DAY, _F_HOUR = 2, 3, 4
_F_DRY_BULB, _F_DNI, _F_DHI = 7, 15, 16

DRY_BULB_MISSING = 99.9
IRRADIANCE_MISSING = 9999.0

SUBSET_HEADER = ["month", "day", "hour", "dry_bulb", "dni", "dhi"]

Stamp = tuple  # (month, day, hour)


class EpwFormatError(ValueError):
    """Malformed EPW input. ``line`` is 1-indexed when known."""

    def __init__(self, message: str, line: Optional[int] = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


class WeatherRangeError(ValueError):
    """Requested hours are not covered by the series."""


@dataclass(frozen=True)
class HourlyWeather:
    month: int
    day: int
    hour: int
    dry_bulb: float
    dni: float
    dhi: float

    def __post_init__(self):
        if not 1 <= self.month <= 12:
            raise ValueError(f"month out of range: {self.month}")
        if not 1 <= self.day <= 31:
            raise ValueError(f"day out of range: {self.day}")
        if not 1 <= self.hour <= 24:
            raise ValueError(f"hour out of range: {self.hour}")
        if not -90.0 < self.dry_bulb < 60.0:
            raise ValueError(f"dry bulb out of range: {self.dry_bulb}")
        if self.dni < 0 or self.dhi < 0:
            raise ValueError("irradiance must be non-negative")

    @property
    def stamp(self) -> Stamp:
        return (self.month, self.day, self.hour)

    @property
    def day_of_year(self) -> int:
        return solar.day_of_year(self.month, self.day)


@dataclass(frozen=True)
class WeatherSeries:
    """Chronological hourly records at one site."""

    site: SitePosition
    records: tuple[HourlyWeather, ...]

    def __post_init__(self):
        records = tuple(self.records)
        object.__setattr__(self, "records", records)
        for prev, cur in zip(records, records[1:]):
            if not prev.stamp < cur.stamp:
                raise ValueError(f"records out of order or duplicated at {cur.stamp}")

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def __getitem__(self, i):
        return self.records[i]

    @property
    def start(self) -> Stamp:
        return self.records[0].stamp

    @property
    def end(self) -> Stamp:
        return self.records[-1].stamp

    def slice(self, start: Stamp, end: Stamp) -> "WeatherSeries":
        """Records from ``start`` to ``end`` inclusive, both ``(month, day, hour)``."""
        start, end = tuple(start), tuple(end)
        if start > end:
            raise WeatherRangeError(f"start {start} is after end {end}")
        if not self.records or start < self.start or end > self.end:
            raise WeatherRangeError(
                f"window {start}..{end} is not covered by the series "
                f"({self.start if self.records else None}..{self.end if self.records else None})"
            )
        return WeatherSeries(self.site, tuple(r for r in self.records if start <= r.stamp <= end))

    def days(self) -> list[tuple[int, int]]:
        """Distinct (month, day) pairs in order."""
        seen = []
        for r in self.records:
            if not seen or seen[-1] != (r.month, r.day):
                seen.append((r.month, r.day))
        return seen

    def partition(self, hours: int) -> list["WeatherSeries"]:
        """Split into consecutive chunks of ``hours`` records each."""
        if hours < 1:
            raise ValueError("interval must be at least one hour")
        if len(self) % hours:
            raise ValueError(f"{len(self)} records do not divide into {hours}-hour intervals")
        return [WeatherSeries(self.site, self.records[i:i + hours])
                for i in range(0, len(self), hours)]

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(r, name) for r in self.records], dtype=float)


def _num(text: str, line: int, field_no: int, what: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise EpwFormatError(f"field {field_no} ({what}) is not numeric: {text!r}", line) from None
    if not math.isfinite(value):
        raise EpwFormatError(f"field {field_no} ({what}) is not finite: {text!r}", line)
    return value


def _interpolate_missing(values: list[float], missing: list[bool]) -> list[float]:
    idx = np.arange(len(values))
    ok = ~np.asarray(missing)
    if not ok.any():
        raise EpwFormatError("every dry-bulb value is missing")
    # np.interp holds the end values constant past the first/last valid sample
    return list(np.interp(idx, idx[ok], np.asarray(values)[ok]))


def parse_epw(stream: TextIO | Iterable[str] | str) -> WeatherSeries:
    """
    Parse EPW text into a :class:`WeatherSeries`.

    ``stream`` is an open text file, any iterable of lines, or the whole
    file content as one string.

    Irradiance sentinels (9999) become 0. Dry-bulb sentinels (99.9) are
    linearly interpolated from the nearest valid hours.

    Raises
    ------
    EpwFormatError
        Truncated header, non-numeric required field or no data rows.
    """
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    lines = iter(stream)
    header = []
    for line in lines:
        header.append(line.rstrip("\r\n"))
        if len(header) == N_HEADER:
            break
    if len(header) < N_HEADER:
        raise EpwFormatError(
            f"EPW header truncated: found {len(header)} of {N_HEADER} header lines",
            len(header) + 1,
        )
    for i, (text, key) in enumerate(zip(header, EPW_HEADER_KEYWORDS), start=1):
        if not text.upper().startswith(key.split("/")[0]):
            raise EpwFormatError(f"expected header {key!r}, got {text[:30]!r}", i)

    loc = header[0].split(",")
    if len(loc) < 10:
        raise EpwFormatError("LOCATION line needs 9 fields after the keyword", 1)
    site = SitePosition(
        latitude=_num(loc[6], 1, 7, "latitude"),
        longitude=_num(loc[7], 1, 8, "longitude"),
        timezone_offset=_num(loc[8], 1, 9, "timezone"),
    )

    stamps, temps, temp_missing, dnis, dhis = [], [], [], [], []
    for line_no, line in enumerate(lines, start=N_HEADER + 1):
        if not line.strip():
            continue
        fields = line.rstrip("\r\n").split(",")
        if len(fields) < _F_DHI:
            raise EpwFormatError(
                f"data row has {len(fields)} fields, at least {_F_DHI} required", line_no
            )
        month = int(_num(fields[_F_MONTH - 1], line_no, _F_MONTH, "month"))
        day = int(_num(fields[_F_DAY - 1], line_no, _F_DAY, "day"))
        hour = int(_num(fields[_F_HOUR - 1], line_no, _F_HOUR, "hour"))
        t = _num(fields[_F_DRY_BULB - 1], line_no, _F_DRY_BULB, "dry bulb")
        dni = _num(fields[_F_DNI - 1], line_no, _F_DNI, "direct normal radiation")
        dhi = _num(fields[_F_DHI - 1], line_no, _F_DHI, "diffuse horizontal radiation")
        stamps.append((line_no, month, day, hour))
        temps.append(t)
        temp_missing.append(t >= DRY_BULB_MISSING)
        dnis.append(0.0 if dni >= IRRADIANCE_MISSING else dni)
        dhis.append(0.0 if dhi >= IRRADIANCE_MISSING else dhi)

    if not stamps:
        raise EpwFormatError("EPW file has no data rows", N_HEADER + 1)
    if any(temp_missing):
        temps = _interpolate_missing(temps, temp_missing)

    records = []
    for (line_no, month, day, hour), t, dni, dhi in zip(stamps, temps, dnis, dhis):
        try:
            records.append(HourlyWeather(month, day, hour, float(t), max(dni, 0.0), max(dhi, 0.0)))
        except ValueError as exc:
            raise EpwFormatError(str(exc), line_no) from None
    try:
        return WeatherSeries(site, tuple(records))
    except ValueError as exc:
        raise EpwFormatError(str(exc)) from None


def read_epw(path: str | os.PathLike) -> WeatherSeries:
    with open(path, newline="", encoding="latin-1") as fh:
        return parse_epw(fh)


def write_subset(series: WeatherSeries) -> str:
    """Serialize to CSV ``month,day,hour,dry_bulb,dni,dhi`` without loss."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SUBSET_HEADER)
    for r in series:
        w.writerow([r.month, r.day, r.hour, repr(r.dry_bulb), repr(r.dni), repr(r.dhi)])
    return buf.getvalue()


def read_subset(stream: TextIO | str, site: SitePosition) -> WeatherSeries:
    """Inverse of :func:`write_subset`; the CSV carries no site, so pass it."""
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    reader = csv.reader(stream)
    head = next(reader, None)
    if head != SUBSET_HEADER:
        raise ValueError(f"expected header {','.join(SUBSET_HEADER)}, got {head}")
    records = [
        HourlyWeather(int(m), int(d), int(h), float(t), float(dni), float(dhi))
        for m, d, h, t, dni, dhi in reader
    ]
    return WeatherSeries(site, tuple(records))


def default_dry_bulb_profile(t_min: float = 24.0, t_max: float = 38.0,
                             hour_min: int = 5, hour_max: int = 15) -> list[float]:
    """
    24 hourly dry-bulb values (hours 1..24) following a two-piece cosine.

    The curve bottoms out at ``t_min`` at ``hour_min`` and peaks at ``t_max``
    at ``hour_max``, rising and falling along half-cosines.
    """
    rise = (hour_max - hour_min) % 24
    fall = 24 - rise
    mean, amp = (t_max + t_min) / 2.0, (t_max - t_min) / 2.0
    out = []
    for hour in range(1, 25):
        since_min = (hour - hour_min) % 24
        if since_min <= rise:
            phase = math.pi * since_min / rise
        else:
            phase = math.pi * (1.0 + (since_min - rise) / fall)
        out.append(mean - amp * math.cos(phase))
    return out


def synthesize_clear_sky(site: SitePosition = solar.SHIRAZ, month: int = 8,
                         days: tuple[int, int] = (10, 12),
                         dry_bulb_profile: Optional[Sequence[float]] = None,
                         **clear_sky) -> WeatherSeries:
    """
    Clear-sky hourly weather for ``days[0]..days[1]`` (inclusive) of ``month``.

    Irradiance is evaluated at the middle of each clock hour, converted to
    solar time. Extra keyword arguments go to
    :func:`kinfacade.solar.clear_sky_irradiance`.
    """
    profile = default_dry_bulb_profile() if dry_bulb_profile is None else list(dry_bulb_profile)
    if len(profile) != 24:
        raise ValueError(f"dry-bulb profile needs 24 values, got {len(profile)}")
    first, last = days
    if first > last:
        raise ValueError(f"day range {days} is reversed")
    records = []
    for d in range(first, last + 1):
        doy = solar.day_of_year(month, d)
        for hour in range(1, 25):
            sun = solar.sun_state(site, doy, solar.solar_hour(site, hour - 0.5))
            dni, dhi = solar.clear_sky_irradiance(sun, **clear_sky)
            records.append(HourlyWeather(month, d, hour, profile[hour - 1], dni, dhi))
    return WeatherSeries(site, tuple(records))


def synthesize_window(site: SitePosition, start: Stamp, end: Stamp,
                      dry_bulb_profile: Optional[Sequence[float]] = None,
                      **clear_sky) -> WeatherSeries:
    """Clear-sky series covering the whole days of ``start..end``, then sliced to it."""
    d0 = date(2001, start[0], start[1])
    d1 = date(2001, end[0], end[1])
    if d0 > d1:
        raise WeatherRangeError(f"start {start} is after end {end}")
    records = []
    day = d0
    while day <= d1:
        chunk = synthesize_clear_sky(site, day.month, (day.day, day.day), dry_bulb_profile,
                                     **clear_sky)
        records.extend(chunk.records)
        day += timedelta(days=1)
    return WeatherSeries(site, tuple(records)).slice(start, end)
