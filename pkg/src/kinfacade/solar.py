"""
Solar geometry and a clear-sky irradiance fallback.

Angles are radians unless a name says ``_deg``. Azimuths are measured
clockwise from north. Times are apparent solar hours; the equation of time
and refraction are ignored.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from datetime import date

__all__ = [
    "SitePosition",
    "SunState",
    "SHIRAZ",
    "day_of_year",
    "declination",
    "hour_angle",
    "solar_hour",
    "sun_state",
    "clear_sky_irradiance",
]


@dataclass(frozen=True)
class SitePosition:
    latitude: float  # degrees north
    longitude: float  # degrees east
    timezone_offset: float  # hours east of UTC

    def __post_init__(self):
        if not -90.0 <= self.latitude <= 90.0:
            raise ValueError(f"latitude out of range: {self.latitude}")
        if not -180.0 <= self.longitude <= 180.0:
            raise ValueError(f"longitude out of range: {self.longitude}")


# Shiraz, Shahid Dastghib airport (standard geodata)
SHIRAZ = SitePosition(latitude=29.56, longitude=52.59, timezone_offset=3.5)


@dataclass(frozen=True)
class SunState:
    """
    Sun position relative to the horizon and to a vertical facade.

    ``profile_angle`` is the altitude projected onto the vertical plane
    normal to the facade; it lies in ``(-pi/2, pi/2)`` only while the sun
    is in front of the facade. ``incidence_cos`` is the cosine of the angle
    between the beam and the facade normal, negative when the sun is behind.
    """

    altitude: float
    azimuth: float
    profile_angle: float
    incidence_cos: float
    facade_azimuth: float

    @property
    def is_up(self) -> bool:
        return self.altitude > 0.0

    @property
    def in_front(self) -> bool:
        """Sun above the horizon and on the outward side of the facade."""
        return self.is_up and self.incidence_cos > 0.0


def day_of_year(month: int, day: int) -> int:
    """Ordinal day in a non-leap year; Feb 29 maps onto day 60 like Mar 1."""
    if (month, day) == (2, 29):
        return 60
    return date(2001, month, day).timetuple().tm_yday


def declination(day: int) -> float:
    """Cooper's declination for day number ``day``, in radians."""
    return math.radians(23.45 * math.sin(math.radians(360.0 * (284 + day) / 365.0)))


def hour_angle(hour: float) -> float:
    """Hour angle in radians, zero at solar noon and negative in the morning."""
    return math.radians(15.0 * (hour - 12.0))


def solar_hour(site: SitePosition, clock_hour: float) -> float:
    """Local standard time to apparent solar time, longitude term only."""
    return clock_hour + (site.longitude - 15.0 * site.timezone_offset) / 15.0


def sun_state(site: SitePosition, day: int, hour: float, facade_azimuth: float = 180.0) -> SunState:
    """
    Sun position at solar time ``hour`` on day number ``day``.

    Parameters
    ----------
    site : SitePosition
    day : int
        Day of year, 1..366.
    hour : float
        Apparent solar time in hours, 12 being solar noon.
    facade_azimuth : float
        Outward normal of the facade in degrees from north (180 = south).
    """
    phi = math.radians(site.latitude)
    delta = declination(day)
    h = hour_angle(hour)

    sin_alt = math.cos(phi) * math.cos(delta) * math.cos(h) + math.sin(phi) * math.sin(delta)
    altitude = math.asin(max(-1.0, min(1.0, sin_alt)))
    azimuth = math.atan2(
        -math.sin(h) * math.cos(delta),
        math.sin(delta) * math.cos(phi) - math.cos(delta) * math.sin(phi) * math.cos(h),
    ) % (2.0 * math.pi)
    if azimuth >= 2.0 * math.pi:  # -tiny % 2pi rounds up to 2pi
        azimuth = 0.0

    rel = azimuth - math.radians(facade_azimuth)
    # tan(profile) = tan(altitude) / cos(rel), written with atan2 to survive cos(rel) = 0
    profile = math.atan2(math.sin(altitude), math.cos(altitude) * math.cos(rel))
    incidence = math.cos(altitude) * math.cos(rel)
    return SunState(altitude, azimuth, profile, incidence, facade_azimuth)


def clear_sky_irradiance(sun: SunState, a: float = 1085.0, b: float = 0.207,
                         c: float = 0.136) -> tuple[float, float]:
    """
    Clear-sky beam and diffuse irradiance in W/m2.

    Uses the ASHRAE form ``dni = a * exp(-b / sin(altitude))`` and
    ``dhi = c * dni``. Defaults are late-summer clear-sky values; pass
    your own coefficients for other months or sites.

    Returns
    -------
    (dni, dhi) : tuple of float
        Both are zero while the sun is at or below the horizon.
    """
    if not sun.is_up:
        return 0.0, 0.0
    dni = a * math.exp(-b / math.sin(sun.altitude))
    return dni, c * dni
