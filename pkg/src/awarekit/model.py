"""Backend data model and the pseudorandom scenario generator.

A scenario is a deterministic function of its config: a drone follows
seeded waypoints over an urban bounding box at constant speed, hazard zones
define the warning mode at every position, and messages are emitted on a
simulation clock. Message streams are the ground truth every other module
is validated against.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

from .canonical import CanonicalJson, canonicalize, parse
from .errors import InvalidConfig
from .geo import GeoPoint, haversine_m, initial_bearing_deg
from .rng import derive_seed

WARNING_NOMINAL = 0
WARNING_CAUTION = 1
WARNING_DANGER = 2

DEFAULT_CAUTION_FACTOR = 1.5
_ZONE_RADIUS_RANGE_M = (150.0, 350.0)


@dataclass(frozen=True)
class DronePose:
    pos: GeoPoint
    alt_m: float
    heading_deg: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.alt_m) and self.alt_m >= 0.0):
            raise ValueError(f"altitude must be finite and >= 0: {self.alt_m}")
        if not 0.0 <= self.heading_deg < 360.0:
            raise ValueError(f"heading must be in [0, 360): {self.heading_deg}")

    def to_tree(self) -> dict:
        return {"pos": self.pos.to_tree(), "alt_m": self.alt_m, "heading_deg": self.heading_deg}

    @classmethod
    def from_tree(cls, tree: dict) -> "DronePose":
        return cls(pos=GeoPoint.from_tree(tree["pos"]),
                   alt_m=float(tree["alt_m"]),
                   heading_deg=float(tree["heading_deg"]))


@dataclass(frozen=True)
class ModelMessage:
    seq: int
    ts_ms: int
    drone: DronePose
    warning_mode: int
    waypoints: tuple[GeoPoint, ...]

    def __post_init__(self) -> None:
        if self.seq < 0 or self.ts_ms < 0:
            raise ValueError("seq and ts_ms must be non-negative")
        if self.warning_mode not in (WARNING_NOMINAL, WARNING_CAUTION, WARNING_DANGER):
            raise ValueError(f"warningMode must be 0, 1 or 2: {self.warning_mode}")
        if len(self.waypoints) < 1:
            raise ValueError("at least one waypoint required")

    def to_tree(self) -> dict:
        return {
            "seq": self.seq,
            "ts_ms": self.ts_ms,
            "drone": self.drone.to_tree(),
            "warningMode": self.warning_mode,
            "waypoints": [w.to_tree() for w in self.waypoints],
        }

    def canonical(self) -> CanonicalJson:
        return canonicalize(self.to_tree())

    @classmethod
    def from_tree(cls, tree: dict) -> "ModelMessage":
        return cls(
            seq=int(tree["seq"]),
            ts_ms=int(tree["ts_ms"]),
            drone=DronePose.from_tree(tree["drone"]),
            warning_mode=int(tree["warningMode"]),
            waypoints=tuple(GeoPoint.from_tree(w) for w in tree["waypoints"]),
        )


@dataclass(frozen=True)
class HazardZone:
    center: GeoPoint
    danger_radius_m: float
    caution_factor: float = DEFAULT_CAUTION_FACTOR

    def __post_init__(self) -> None:
        if self.danger_radius_m <= 0.0:
            raise ValueError("danger radius must be positive")
        if self.caution_factor <= 1.0:
            raise ValueError("caution factor must exceed 1 (caution ring outside danger ring)")

    @property
    def caution_radius_m(self) -> float:
        return self.danger_radius_m * self.caution_factor


@dataclass(frozen=True)
class ScenarioConfig:
    bbox: tuple[GeoPoint, GeoPoint]
    n_waypoints: int = 8
    n_zones: int = 5
    speed_mps: float = 15.0
    msg_rate_hz: float = 5.0
    duration_s: float = 60.0
    seed: int = 0

    def __post_init__(self) -> None:
        lo, hi = self.bbox
        if not (lo.lat < hi.lat and lo.lon < hi.lon):
            raise InvalidConfig("bbox min must be strictly below bbox max componentwise")
        if self.n_waypoints < 1 or self.n_zones < 0:
            raise InvalidConfig("waypoint count must be >= 1 and zone count >= 0")
        if self.speed_mps <= 0 or self.msg_rate_hz <= 0 or self.duration_s <= 0:
            raise InvalidConfig("speed, message rate and duration must be positive")

    def to_tree(self) -> dict:
        return {
            "bbox": [self.bbox[0].to_tree(), self.bbox[1].to_tree()],
            "n_waypoints": self.n_waypoints,
            "n_zones": self.n_zones,
            "speed_mps": self.speed_mps,
            "msg_rate_hz": self.msg_rate_hz,
            "duration_s": self.duration_s,
            "seed": self.seed,
        }

    @classmethod
    def from_tree(cls, tree: dict) -> "ScenarioConfig":
        known = {"bbox", "n_waypoints", "n_zones", "speed_mps", "msg_rate_hz", "duration_s", "seed"}
        unknown = set(tree) - known
        if unknown:
            raise InvalidConfig(f"unknown scenario keys: {sorted(unknown)}")
        kwargs = {k: tree[k] for k in known - {"bbox"} if k in tree}
        return cls(bbox=(GeoPoint.from_tree(tree["bbox"][0]), GeoPoint.from_tree(tree["bbox"][1])),
                   **kwargs)


# Default urban box, roughly 3.3 km x 3.5 km. Seed 20 exhibits direct
# caution<->danger transitions within the first minute (see tests).
DEFAULT_BBOX = (GeoPoint(37.7600, -122.4500), GeoPoint(37.7900, -122.4100))
FIXTURE_SEED = 20
DEFAULT_SCENARIO = ScenarioConfig(bbox=DEFAULT_BBOX, seed=FIXTURE_SEED)


def warning_mode_at(p: GeoPoint, zones: Iterable[HazardZone]) -> int:
    """2 inside any danger ring, else 1 inside any caution ring, else 0."""
    mode = WARNING_NOMINAL
    for zone in zones:
        d = haversine_m(p, zone.center)
        if d <= zone.danger_radius_m:
            return WARNING_DANGER
        if d <= zone.caution_radius_m:
            mode = WARNING_CAUTION
    return mode


def _uniform_point(rng: random.Random, bbox: tuple[GeoPoint, GeoPoint]) -> GeoPoint:
    lo, hi = bbox
    return GeoPoint(lat=rng.uniform(lo.lat, hi.lat), lon=rng.uniform(lo.lon, hi.lon))


def build_world(cfg: ScenarioConfig) -> tuple[tuple[GeoPoint, ...], tuple[HazardZone, ...]]:
    """Deterministic waypoints and hazard zones for a scenario config."""
    rng = random.Random(derive_seed(cfg.seed, "world"))
    waypoints = tuple(_uniform_point(rng, cfg.bbox) for _ in range(cfg.n_waypoints))
    zones = tuple(
        HazardZone(center=_uniform_point(rng, cfg.bbox),
                   danger_radius_m=rng.uniform(*_ZONE_RADIUS_RANGE_M))
        for _ in range(cfg.n_zones)
    )
    return waypoints, zones


class _Track:
    """Piecewise-linear closed loop through the waypoints (lat/lon space)."""

    def __init__(self, waypoints: tuple[GeoPoint, ...]):
        self.points = list(waypoints)
        n = len(self.points)
        self.legs = []  # (start, end, length_m)
        for i in range(n):
            a, b = self.points[i], self.points[(i + 1) % n]
            length = haversine_m(a, b)
            if length > 1e-9:
                self.legs.append((a, b, length))
        self.cycle_m = sum(leg[2] for leg in self.legs)

    def at(self, dist_m: float) -> tuple[GeoPoint, GeoPoint]:
        """Position after traveling dist_m, plus the waypoint being headed to."""
        if not self.legs:
            p = self.points[0]
            return p, p
        d = dist_m % self.cycle_m
        for a, b, length in self.legs:
            if d <= length:
                f = d / length
                pos = GeoPoint(lat=a.lat + (b.lat - a.lat) * f,
                               lon=a.lon + (b.lon - a.lon) * f)
                return pos, b
            d -= length
        return self.legs[-1][1], self.legs[0][0]


def message_count(cfg: ScenarioConfig) -> int:
    return int(round(cfg.duration_s * cfg.msg_rate_hz))


def gen_scenario_iter(cfg: ScenarioConfig) -> Iterator[ModelMessage]:
    """Stream the scenario's messages in seq order."""
    waypoints, zones = build_world(cfg)
    track = _Track(waypoints)
    n = message_count(cfg)
    heading = 0.0
    for k in range(n):
        t_s = k / cfg.msg_rate_hz
        pos, target = track.at(cfg.speed_mps * t_s)
        bearing = initial_bearing_deg(pos, target)
        if haversine_m(pos, target) > 1e-6:
            heading = bearing
        yield ModelMessage(
            seq=k,
            ts_ms=int(round(k * 1000.0 / cfg.msg_rate_hz)),
            drone=DronePose(pos=pos, alt_m=120.0, heading_deg=heading),
            warning_mode=warning_mode_at(pos, zones),
            waypoints=waypoints,
        )


def gen_scenario(cfg: ScenarioConfig) -> list[ModelMessage]:
    return list(gen_scenario_iter(cfg))


def write_message_log(messages: Iterable[ModelMessage], path: Path | str) -> None:
    """NDJSON log, one canonical message per line, in seq order."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        for msg in messages:
            fh.write(msg.canonical())
            fh.write("\n")


def read_message_log(path: Path | str) -> list[ModelMessage]:
    out = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                out.append(ModelMessage.from_tree(parse(line)))
    return out
