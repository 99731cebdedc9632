"""Minimal deterministic 2-D rasterization: RGB images, warning glyphs,
procedural map tiles in two visual styles, and PNG file I/O.

Everything here is a pure function of its arguments; there is no global
RNG and no wall clock, so repeated runs produce identical pixel buffers.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image as PILImage
from PIL import UnidentifiedImageError

from .errors import DecodeError, OutOfBounds
from .geo import GeoPoint, world_meters
from .rng import hash64_grid, splitmix64, unit_floats

TILE_METERS = 256.0


def _salted(seed: int, salt: int) -> int:
    return splitmix64((seed & ((1 << 64) - 1)) ^ (salt * 0x9E3779B97F4A7C15))

YELLOW = (255, 204, 0)
RED = (220, 0, 0)
BLUE = (30, 100, 230)
MAGENTA = (255, 0, 255)
BLACK = (0, 0, 0)
WHITE = (255, 255, 255)
NAVY = (25, 35, 70)


@dataclass(frozen=True, eq=False)
class Image:
    """Row-major 8-bit RGB raster."""

    width: int
    height: int
    pixels: np.ndarray  # (height, width, 3) uint8

    def __post_init__(self) -> None:
        if self.width <= 0 or self.height <= 0:
            raise ValueError("image dimensions must be positive")
        if self.pixels.shape != (self.height, self.width, 3) or self.pixels.dtype != np.uint8:
            raise ValueError(f"pixel buffer shape/dtype mismatch: {self.pixels.shape} {self.pixels.dtype}")

    def copy(self) -> "Image":
        return Image(self.width, self.height, self.pixels.copy())

    def crop(self, r: "Rect") -> "Image":
        if not r.inside(self.width, self.height):
            raise OutOfBounds(f"crop {r} exceeds {self.width}x{self.height}")
        return Image(r.w, r.h, self.pixels[r.y:r.y + r.h, r.x:r.x + r.w].copy())

    def same_pixels(self, other: "Image") -> bool:
        return (self.width, self.height) == (other.width, other.height) and \
            np.array_equal(self.pixels, other.pixels)


def new_image(width: int, height: int, fill: tuple[int, int, int] = BLACK) -> Image:
    buf = np.empty((height, width, 3), dtype=np.uint8)
    buf[:, :] = fill
    return Image(width, height, buf)


@dataclass(frozen=True)
class Rect:
    x: int
    y: int
    w: int
    h: int

    def __post_init__(self) -> None:
        if self.w <= 0 or self.h <= 0:
            raise ValueError(f"degenerate rect: {self}")

    def inside(self, width: int, height: int) -> bool:
        return self.x >= 0 and self.y >= 0 and self.x + self.w <= width and self.y + self.h <= height

    @property
    def area(self) -> int:
        return self.w * self.h

    def to_tree(self) -> dict:
        return {"x": self.x, "y": self.y, "w": self.w, "h": self.h}

    @classmethod
    def from_tree(cls, tree: dict) -> "Rect":
        return cls(x=int(tree["x"]), y=int(tree["y"]), w=int(tree["w"]), h=int(tree["h"]))


class GlyphClass(str, enum.Enum):
    CAUTION = "caution"
    DANGER = "danger"
    DRONE_MARKER = "drone_marker"
    SHAME = "shame"


WARNING_GLYPHS = (GlyphClass.CAUTION, GlyphClass.DANGER)


class TileKind(str, enum.Enum):
    DESIGNER = "designer"  # light street-map look
    RUNTIME = "runtime"    # satellite-noise look


@dataclass(frozen=True)
class TileStyle:
    kind: TileKind
    world_seed: int = 0


def _local_grid(w: int, h: int) -> tuple[np.ndarray, np.ndarray]:
    """Pixel-center coordinates normalized to [0,1) over a w x h rect."""
    u = (np.arange(w, dtype=np.float64) + 0.5) / w
    v = (np.arange(h, dtype=np.float64) + 0.5) / h
    return np.meshgrid(u, v)


def _triangle_mask(u: np.ndarray, v: np.ndarray, scale: float) -> np.ndarray:
    # Upright triangle: apex top-center, horizontal base; scaled about its
    # visual center so a >1 scale bleeds the border towards the rect corners.
    cx, cy = 0.5, 0.64
    a = (0.5, 0.035)
    b = (0.035, 0.965)
    c = (0.965, 0.965)
    pts = [((px - cx) * scale + cx, (py - cy) * scale + cy) for px, py in (a, b, c)]

    def half_plane(p, q):
        return (q[0] - p[0]) * (v - p[1]) - (q[1] - p[1]) * (u - p[0])

    d0 = half_plane(pts[0], pts[1])
    d1 = half_plane(pts[1], pts[2])
    d2 = half_plane(pts[2], pts[0])
    return (d0 <= 0) & (d1 <= 0) & (d2 <= 0)


def _paint(region: np.ndarray, mask: np.ndarray, color: tuple[int, int, int]) -> None:
    region[mask] = color


def draw_glyph(img: Image, cls: GlyphClass, r: Rect, heading_octant: int = 0) -> Image:
    """Return a copy of ``img`` with the glyph rendered scaled to ``r``.

    heading_octant only affects the drone marker's tick (0 = north,
    clockwise 45-degree steps).
    """
    if not r.inside(img.width, img.height):
        raise OutOfBounds(f"glyph rect {r} exceeds image {img.width}x{img.height}")
    out = img.copy()
    region = out.pixels[r.y:r.y + r.h, r.x:r.x + r.w]
    u, v = _local_grid(r.w, r.h)
    x = u - 0.5
    y = v - 0.5

    if cls is GlyphClass.CAUTION:
        _paint(region, _triangle_mask(u, v, 1.22), BLACK)
        _paint(region, _triangle_mask(u, v, 0.74), YELLOW)
        bar = (np.abs(x) <= 0.062) & (v >= 0.40) & (v <= 0.70)
        dot = (x ** 2 + (v - 0.82) ** 2) <= 0.055 ** 2
        _paint(region, bar | dot, BLACK)
    elif cls is GlyphClass.DANGER:
        octagon = (np.abs(x) <= 0.5) & (np.abs(y) <= 0.5) & (np.abs(x) + np.abs(y) <= math.sqrt(2) / 2)
        _paint(region, octagon, RED)
        stroke = ((np.abs(x - y) <= 0.085) | (np.abs(x + y) <= 0.085)) & \
            (np.abs(x) <= 0.31) & (np.abs(y) <= 0.31)
        _paint(region, stroke, WHITE)
    elif cls is GlyphClass.DRONE_MARKER:
        disc = (x ** 2 + y ** 2) <= 0.46 ** 2
        _paint(region, disc, BLUE)
        ang = math.radians((heading_octant % 8) * 45.0)
        dx, dy = math.sin(ang), -math.cos(ang)
        proj = x * dx + y * dy
        perp = x * dy - y * dx
        tick = (proj >= 0.05) & (proj <= 0.44) & (np.abs(perp) <= 0.08)
        _paint(region, tick & disc, WHITE)
    elif cls is GlyphClass.SHAME:
        region[:, :] = MAGENTA
        bar = (np.abs(x) <= 0.08) & (v >= 0.16) & (v <= 0.62)
        dot = (x ** 2 + (v - 0.78) ** 2) <= 0.085 ** 2
        _paint(region, bar | dot, WHITE)
    else:  # pragma: no cover - enum is closed
        raise ValueError(f"unknown glyph class {cls}")
    return out


def draw_disc(img: Image, cx: int, cy: int, radius: int, color: tuple[int, int, int]) -> Image:
    """Copy of ``img`` with a filled disc, clipped to the image bounds."""
    out = img.copy()
    x0, x1 = max(0, cx - radius), min(img.width, cx + radius + 1)
    y0, y1 = max(0, cy - radius), min(img.height, cy + radius + 1)
    if x0 >= x1 or y0 >= y1:
        return out
    xs = np.arange(x0, x1) - cx
    ys = np.arange(y0, y1) - cy
    gx, gy = np.meshgrid(xs, ys)
    mask = gx ** 2 + gy ** 2 <= radius ** 2
    out.pixels[y0:y1, x0:x1][mask] = color
    return out


# -- procedural tiles --------------------------------------------------------

_DESIGNER_BLOCKS = np.array([
    (228, 224, 212), (236, 232, 222), (218, 220, 206),
    (230, 222, 198), (222, 226, 218), (240, 236, 228),
], dtype=np.float64)
_DESIGNER_STREET = np.array((250, 250, 246), dtype=np.float64)
_DESIGNER_AVENUE = np.array((255, 244, 189), dtype=np.float64)

_RUNTIME_DARK = np.array((38, 52, 30), dtype=np.float64)
_RUNTIME_GREEN = np.array((74, 98, 52), dtype=np.float64)
_RUNTIME_BROWN = np.array((121, 99, 66), dtype=np.float64)


def _value_noise(wx: np.ndarray, wy: np.ndarray, wavelength: float, seed: int) -> np.ndarray:
    """Seeded lattice value noise in [0,1), bilinear with smoothstep fade."""
    gx = wx / wavelength
    gy = wy / wavelength
    ix = np.floor(gx).astype(np.int64)
    iy = np.floor(gy).astype(np.int64)
    fx = gx - ix
    fy = gy - iy
    sx = fx * fx * (3.0 - 2.0 * fx)
    sy = fy * fy * (3.0 - 2.0 * fy)
    v00 = unit_floats(hash64_grid(ix, iy, seed=seed))
    v10 = unit_floats(hash64_grid(ix + 1, iy, seed=seed))
    v01 = unit_floats(hash64_grid(ix, iy + 1, seed=seed))
    v11 = unit_floats(hash64_grid(ix + 1, iy + 1, seed=seed))
    top = v00 + (v10 - v00) * sx
    bot = v01 + (v11 - v01) * sx
    return top + (bot - top) * sy


def tile_background(style: TileStyle, origin: GeoPoint, size: tuple[int, int],
                    meters_per_pixel: float) -> Image:
    """Procedural background; origin is the geo point of the top-left pixel.

    The pattern is a pure function of world position, so translating the
    origin by whole tiles shifts pixel content exactly.
    """
    w, h = size
    if w <= 0 or h <= 0:
        raise ValueError("tile size must be positive")
    mx0, my0 = world_meters(origin)
    wx = mx0 + (np.arange(w, dtype=np.float64) + 0.5) * meters_per_pixel
    wy = my0 - (np.arange(h, dtype=np.float64) + 0.5) * meters_per_pixel
    WX, WY = np.meshgrid(wx, wy)

    if style.kind is TileKind.DESIGNER:
        tx = np.floor(WX / TILE_METERS).astype(np.int64)
        ty = np.floor(WY / TILE_METERS).astype(np.int64)
        fx = WX / TILE_METERS - tx
        fy = WY / TILE_METERS - ty
        block_hash = hash64_grid(tx, ty, seed=_salted(style.world_seed, 1))
        base = _DESIGNER_BLOCKS[(block_hash % np.uint64(len(_DESIGNER_BLOCKS))).astype(np.int64)]
        out = base.copy()
        # border streets on the tile grid plus one hashed interior street per axis
        street_w = 12.0 / TILE_METERS
        ix_pos = 0.30 + 0.40 * unit_floats(hash64_grid(tx, ty, seed=_salted(style.world_seed, 2)))
        iy_pos = 0.30 + 0.40 * unit_floats(hash64_grid(tx, ty, seed=_salted(style.world_seed, 3)))
        street = (fx < street_w) | (fx > 1.0 - street_w) | (fy < street_w) | (fy > 1.0 - street_w)
        interior = (np.abs(fx - ix_pos) < street_w * 0.6) | (np.abs(fy - iy_pos) < street_w * 0.6)
        out[interior] = _DESIGNER_STREET
        out[street] = _DESIGNER_AVENUE
        pixels = np.clip(np.rint(out), 0, 255).astype(np.uint8)
        return Image(w, h, pixels)

    # runtime: multi-octave value noise over a green/brown palette
    seed1 = _salted(style.world_seed, 11)
    seed2 = _salted(style.world_seed, 12)
    n = (_value_noise(WX, WY, 391.0, seed1) * 1.0
         + _value_noise(WX, WY, 127.0, _salted(seed1, 1)) * 0.5
         + _value_noise(WX, WY, 43.0, _salted(seed1, 2)) * 0.25)
    n = n / 1.75
    veg = _value_noise(WX, WY, 211.0, seed2)
    base = _RUNTIME_DARK + (_RUNTIME_GREEN - _RUNTIME_DARK) * n[..., None] * 1.6
    brown = np.clip(veg - 0.55, 0.0, 1.0)[..., None] * 1.8
    out = base + (_RUNTIME_BROWN - base) * brown
    pixels = np.clip(np.rint(out), 0, 255).astype(np.uint8)
    return Image(w, h, pixels)



def to_grayscale(img: Image) -> np.ndarray:
    """BT.601 luma, rounded to uint8, shape (height, width)."""
    p = img.pixels.astype(np.float64)
    y = 0.299 * p[..., 0] + 0.587 * p[..., 1] + 0.114 * p[..., 2]
    return np.rint(y).astype(np.uint8)


def write_png(img: Image, path: Path | str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    PILImage.fromarray(img.pixels, mode="RGB").save(path, format="PNG")


def read_png(path: Path | str) -> Image:
    try:
        with PILImage.open(path) as pil:
            pil = pil.convert("RGB")
            buf = np.asarray(pil, dtype=np.uint8)
    except (UnidentifiedImageError, SyntaxError, OSError) as exc:
        if isinstance(exc, FileNotFoundError):
            raise
        raise DecodeError(f"cannot decode PNG at {path}: {exc}") from exc
    h, w, _ = buf.shape
    return Image(w, h, buf.copy())


def write_png_gray(patch: np.ndarray, path: Path | str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    PILImage.fromarray(patch, mode="L").save(path, format="PNG")


def read_png_gray(path: Path | str) -> np.ndarray:
    try:
        with PILImage.open(path) as pil:
            return np.asarray(pil.convert("L"), dtype=np.uint8).copy()
    except (UnidentifiedImageError, SyntaxError, OSError) as exc:
        if isinstance(exc, FileNotFoundError):
            raise
        raise DecodeError(f"cannot decode PNG at {path}: {exc}") from exc
