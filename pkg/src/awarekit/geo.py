"""Geographic primitives: great-circle distance, bearing, and the fixed
equirectangular world-meter frame used by rasterization.

The world-meter frame is a *linear* map from (lat, lon) so that shifting a
geo origin by a whole number of tiles shifts rendered pixels exactly. Its
constants approximate an urban mid-latitude; hazard geometry uses true
haversine distances instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

EARTH_RADIUS_M = 6_371_000.0

# Linear world frame: meters per degree, fixed so the map is affine.
M_PER_DEG_LAT = 111_320.0
M_PER_DEG_LON = 88_000.0


@dataclass(frozen=True)
class GeoPoint:
    lat: float
    lon: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lat) and math.isfinite(self.lon)):
            raise ValueError("GeoPoint coordinates must be finite")
        if not -90.0 <= self.lat <= 90.0:
            raise ValueError(f"latitude out of range: {self.lat}")
        if not -180.0 <= self.lon <= 180.0:
            raise ValueError(f"longitude out of range: {self.lon}")

    def to_tree(self) -> dict:
        return {"lat": self.lat, "lon": self.lon}

    @classmethod
    def from_tree(cls, tree: dict) -> "GeoPoint":
        return cls(lat=float(tree["lat"]), lon=float(tree["lon"]))


def haversine_m(a: GeoPoint, b: GeoPoint) -> float:
    """Great-circle distance in meters."""
    phi1, phi2 = math.radians(a.lat), math.radians(b.lat)
    dphi = phi2 - phi1
    dlam = math.radians(b.lon - a.lon)
    s = math.sin(dphi / 2) ** 2 + math.cos(phi1) * math.cos(phi2) * math.sin(dlam / 2) ** 2
    return 2 * EARTH_RADIUS_M * math.asin(min(1.0, math.sqrt(s)))


def initial_bearing_deg(a: GeoPoint, b: GeoPoint) -> float:
    """Initial great-circle bearing from a to b, degrees in [0, 360)."""
    phi1, phi2 = math.radians(a.lat), math.radians(b.lat)
    dlam = math.radians(b.lon - a.lon)
    y = math.sin(dlam) * math.cos(phi2)
    x = math.cos(phi1) * math.sin(phi2) - math.sin(phi1) * math.cos(phi2) * math.cos(dlam)
    if x == 0.0 and y == 0.0:
        return 0.0
    return math.degrees(math.atan2(y, x)) % 360.0


def world_meters(p: GeoPoint) -> tuple[float, float]:
    """Linear (east, north) meters of a geo point in the fixed world frame."""
    return p.lon * M_PER_DEG_LON, p.lat * M_PER_DEG_LAT


def meters_to_geo(mx: float, my: float) -> GeoPoint:
    """Inverse of world_meters."""
    return GeoPoint(lat=my / M_PER_DEG_LAT, lon=mx / M_PER_DEG_LON)
