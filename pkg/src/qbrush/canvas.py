"""Raster canvas: image buffers, stroke rasterization, masks, snapshots, diffs.

Strokes are rasterized by stamping disks of the stroke radius along the
polyline (capsules between consecutive points), with pixel centers at integer
coordinates. Everything here is deterministic; 8-bit quantization happens only
when colors are written back to the canvas.
"""

from __future__ import annotations

import io
import math
import struct
import zlib
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from PIL import Image, ImageDraw, UnidentifiedImageError

from .color import (HslColor, circular_mean_hue, hsl_array_to_rgb,
                    hsl_to_rgb, rgb_array_to_hsl)
from .errors import (ArgumentError, DegenerateHueMeanError, EmptyStrokeError,
                     PlacementError, PngDecodeError, TooManySegmentsError)


@dataclass
class CanvasImage:
    """Row-major RGBA8 pixel buffer."""

    pixels: np.ndarray  # (height, width, 4) uint8

    def __post_init__(self):
        px = np.asarray(self.pixels, dtype=np.uint8)
        if px.ndim != 3 or px.shape[2] != 4 or px.shape[0] * px.shape[1] == 0:
            raise ArgumentError("pixels must be a non-empty (h, w, 4) array")
        self.pixels = px

    @classmethod
    def blank(cls, width: int, height: int,
              fill=(255, 255, 255, 255)) -> "CanvasImage":
        px = np.empty((height, width, 4), dtype=np.uint8)
        px[:] = np.array(fill, dtype=np.uint8)
        return cls(px)

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    def copy(self) -> "CanvasImage":
        return CanvasImage(self.pixels.copy())


@dataclass(frozen=True)
class PixelMask:
    """Bounding box plus a bit grid of covered pixels (canvas coordinates)."""

    x0: int
    y0: int
    bits: np.ndarray  # (bh, bw) bool

    def __post_init__(self):
        object.__setattr__(self, "bits", np.asarray(self.bits, dtype=bool))

    @property
    def count(self) -> int:
        return int(self.bits.sum())

    def is_empty(self) -> bool:
        return not self.bits.any()

    def coords(self) -> tuple[np.ndarray, np.ndarray]:
        """(xs, ys) of covered pixels in row-major order."""
        ys, xs = np.nonzero(self.bits)
        return xs + self.x0, ys + self.y0

    def contains(self, x: int, y: int) -> bool:
        bx, by = x - self.x0, y - self.y0
        if 0 <= by < self.bits.shape[0] and 0 <= bx < self.bits.shape[1]:
            return bool(self.bits[by, bx])
        return False

    def translated(self, dx: int, dy: int) -> "PixelMask":
        return PixelMask(self.x0 + dx, self.y0 + dy, self.bits.copy())

    def fits(self, width: int, height: int) -> bool:
        xs, ys = self.coords()
        if xs.size == 0:
            return True
        return (xs.min() >= 0 and ys.min() >= 0
                and xs.max() < width and ys.max() < height)

    @classmethod
    def from_grid(cls, grid: np.ndarray) -> "PixelMask":
        """Crop a full-canvas boolean grid down to its bounding box."""
        ys, xs = np.nonzero(grid)
        if ys.size == 0:
            return cls(0, 0, np.zeros((0, 0), dtype=bool))
        y0, y1 = int(ys.min()), int(ys.max())
        x0, x1 = int(xs.min()), int(xs.max())
        return cls(x0, y0, grid[y0:y1 + 1, x0:x1 + 1].copy())

    def to_grid(self, width: int, height: int) -> np.ndarray:
        grid = np.zeros((height, width), dtype=bool)
        bh, bw = self.bits.shape
        if bh and bw:
            grid[self.y0:self.y0 + bh, self.x0:self.x0 + bw] = self.bits
        return grid


@dataclass
class Stroke:
    """User gesture: a point path with a radius and the brush it drives."""

    points: list[tuple[float, float]]
    radius: float
    brush_kind: str
    params: object = None

    def __post_init__(self):
        if len(self.points) < 1:
            raise ArgumentError("stroke needs at least one point")
        if self.radius < 0.5:
            raise ArgumentError(f"radius must be >= 0.5, got {self.radius}")


@dataclass(frozen=True)
class Snapshot:
    """Immutable copy of the canvas captured at job submission."""

    snapshot_id: str
    image: CanvasImage

    @property
    def width(self) -> int:
        return self.image.width

    @property
    def height(self) -> int:
        return self.image.height


@dataclass
class PixelDiff:
    """Set of pixels to paste: coordinates plus their new RGBA values."""

    xs: np.ndarray
    ys: np.ndarray
    rgba: np.ndarray  # (n, 4) uint8

    def __post_init__(self):
        self.xs = np.asarray(self.xs, dtype=np.int64)
        self.ys = np.asarray(self.ys, dtype=np.int64)
        self.rgba = np.asarray(self.rgba, dtype=np.uint8)
        if not (len(self.xs) == len(self.ys) == len(self.rgba)):
            raise ArgumentError("diff arrays must have equal length")
        keys = set(zip(self.xs.tolist(), self.ys.tolist()))
        if len(keys) != len(self.xs):
            raise ArgumentError("diff entries must be unique")

    @classmethod
    def empty(cls) -> "PixelDiff":
        return cls(np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64),
                   np.empty((0, 4), dtype=np.uint8))

    def __len__(self):
        return len(self.xs)


# -- rasterization -----------------------------------------------------------

def _segment_distance_mask(grid, ax, ay, bx, by, radius):
    """OR pixels within ``radius`` of segment (a, b) into ``grid``."""
    h, w = grid.shape
    x_min = max(0, math.floor(min(ax, bx) - radius))
    x_max = min(w - 1, math.ceil(max(ax, bx) + radius))
    y_min = max(0, math.floor(min(ay, by) - radius))
    y_max = min(h - 1, math.ceil(max(ay, by) + radius))
    if x_min > x_max or y_min > y_max:
        return
    xs = np.arange(x_min, x_max + 1, dtype=float)
    ys = np.arange(y_min, y_max + 1, dtype=float)
    px, py = np.meshgrid(xs, ys)
    dx, dy = bx - ax, by - ay
    seg_len2 = dx * dx + dy * dy
    if seg_len2 == 0:
        dist2 = (px - ax) ** 2 + (py - ay) ** 2
    else:
        t = np.clip(((px - ax) * dx + (py - ay) * dy) / seg_len2, 0.0, 1.0)
        dist2 = (px - (ax + t * dx)) ** 2 + (py - (ay + t * dy)) ** 2
    grid[y_min:y_max + 1, x_min:x_max + 1] |= dist2 <= radius * radius


def _rasterize_path(points, radius, width, height) -> np.ndarray:
    grid = np.zeros((height, width), dtype=bool)
    pts = [(float(x), float(y)) for x, y in points]
    if len(pts) == 1:
        pts = pts * 2
    for (ax, ay), (bx, by) in zip(pts, pts[1:]):
        _segment_distance_mask(grid, ax, ay, bx, by, radius)
    return grid


def rasterize(stroke: Stroke, canvas_width: int, canvas_height: int) -> PixelMask:
    """Union of disks of the stroke radius along the path, clipped to canvas."""
    grid = _rasterize_path(stroke.points, stroke.radius, canvas_width,
                           canvas_height)
    if not grid.any():
        raise EmptyStrokeError("stroke lies entirely off-canvas")
    return PixelMask.from_grid(grid)


def _split_path(points, n):
    """Split a polyline into n sub-paths of equal arc length."""
    pts = [(float(x), float(y)) for x, y in points]
    if len(pts) == 1:
        pts = pts * 2
    seg_lens = [math.dist(a, b) for a, b in zip(pts, pts[1:])]
    total = sum(seg_lens)
    if total == 0:
        if n > 1:
            raise TooManySegmentsError(
                f"degenerate path cannot be split into {n} segments"
            )
        return [pts]
    cuts = [total * j / n for j in range(1, n)]
    paths = []
    current = [pts[0]]
    walked = 0.0
    cut_iter = iter(cuts)
    next_cut = next(cut_iter, None)
    for (a, b), seg_len in zip(zip(pts, pts[1:]), seg_lens):
        while next_cut is not None and walked + seg_len >= next_cut - 1e-12:
            t = 0.0 if seg_len == 0 else (next_cut - walked) / seg_len
            t = min(1.0, max(0.0, t))
            cut_point = (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))
            current.append(cut_point)
            paths.append(current)
            current = [cut_point]
            next_cut = next(cut_iter, None)
        current.append(b)
        walked += seg_len
    paths.append(current)
    return paths


def segment_stroke(stroke: Stroke, n: int, canvas_width: int,
                   canvas_height: int) -> list[PixelMask]:
    """Split a stroke into n disjoint masks whose union is the full mask.

    Cut points sit at equal arc length; pixels shared between neighbouring
    segments are assigned to the earlier one.
    """
    if n < 1:
        raise ArgumentError(f"segment count must be >= 1, got {n}")
    full = rasterize(stroke, canvas_width, canvas_height)
    if n > full.count:
        raise TooManySegmentsError(
            f"stroke covers {full.count} pixels, cannot make {n} segments"
        )
    if n == 1:
        return [full]
    sub_paths = _split_path(stroke.points, n)
    claimed = np.zeros((canvas_height, canvas_width), dtype=bool)
    masks = []
    for path in sub_paths:
        grid = _rasterize_path(path, stroke.radius, canvas_width, canvas_height)
        own = grid & ~claimed
        claimed |= grid
        if not own.any():
            raise TooManySegmentsError(
                f"segment rasterized empty; stroke too short for {n} segments"
            )
        masks.append(PixelMask.from_grid(own))
    return masks


def polygon_mask(points, canvas_width: int, canvas_height: int) -> PixelMask:
    """Filled lasso polygon, clipped to the canvas."""
    if len(points) < 3:
        raise ArgumentError("lasso polygon needs at least 3 points")
    img = Image.new("1", (canvas_width, canvas_height), 0)
    draw = ImageDraw.Draw(img)
    draw.polygon([(float(x), float(y)) for x, y in points], fill=1)
    grid = np.asarray(img, dtype=bool)
    if not grid.any():
        raise EmptyStrokeError("lasso polygon lies entirely off-canvas")
    return PixelMask.from_grid(grid)


# -- region statistics and write-back ----------------------------------------

def region_mean_hsl(image: CanvasImage, mask: PixelMask) -> HslColor:
    """Mean color of masked pixels: circular mean for H, arithmetic for S, L."""
    xs, ys = mask.coords()
    if xs.size == 0:
        raise EmptyStrokeError("mask is empty")
    rgb = image.pixels[ys, xs, :3].astype(float) / 255.0
    hsl = rgb_array_to_hsl(rgb)
    try:
        mean_h = circular_mean_hue(hsl[:, 0])
    except DegenerateHueMeanError:
        mean_h = float(hsl[0, 0])
    return HslColor(h=mean_h, s=float(hsl[:, 1].mean()),
                    l=float(hsl[:, 2].mean()))


def apply_updates(snapshot: Snapshot, updates: Sequence[object],
                  masks: Sequence[PixelMask]) -> PixelDiff:
    """Render updates against the snapshot and return the changed pixels.

    ``shift`` updates move the region's mean (h, l) to the update's values by
    shifting every pixel; ``overwrite`` updates flood the mask with the new
    color; region rewrites (Collage) carry explicit per-pixel RGB values.
    Alpha always passes through.
    """
    from .brushes.params import RegionRewrite, SegmentColorUpdate

    if len(updates) != len(masks):
        raise ArgumentError("updates and masks must align")
    source = snapshot.image.pixels
    work = source.copy()
    for update, mask in zip(updates, masks):
        xs, ys = mask.coords()
        if xs.size == 0:
            continue
        if isinstance(update, RegionRewrite):
            values = np.clip(np.asarray(update.values, dtype=float), 0.0, 1.0)
            if values.shape != (xs.size, 3):
                raise ArgumentError("region rewrite values must match mask size")
            work[ys, xs, :3] = np.rint(values * 255.0).astype(np.uint8)
            continue
        if not isinstance(update, SegmentColorUpdate):
            raise ArgumentError(f"unsupported update type {type(update)!r}")
        if update.mode == "overwrite":
            s = update.new_s if update.new_s is not None else 0.0
            rgb = hsl_to_rgb(HslColor(update.new_h, s, update.new_l))
            quant = np.rint(np.array([rgb.r, rgb.g, rgb.b]) * 255.0)
            work[ys, xs, :3] = quant.astype(np.uint8)
        elif update.mode == "shift":
            old = region_mean_hsl(snapshot.image, mask)
            delta_h = update.new_h - old.h
            delta_l = update.new_l - old.l
            rgb = source[ys, xs, :3].astype(float) / 255.0
            hsl = rgb_array_to_hsl(rgb)
            hsl[:, 0] = (hsl[:, 0] + delta_h) % 1.0
            hsl[:, 2] = np.clip(hsl[:, 2] + delta_l, 0.0, 1.0)
            out = np.clip(hsl_array_to_rgb(hsl), 0.0, 1.0)
            work[ys, xs, :3] = np.rint(out * 255.0).astype(np.uint8)
        else:
            raise ArgumentError(f"unknown update mode {update.mode!r}")
    changed = np.nonzero((work != source).any(axis=2))
    ys, xs = changed
    return PixelDiff(xs=xs, ys=ys, rgba=work[ys, xs])


def paste(canvas: CanvasImage, diff: PixelDiff) -> CanvasImage:
    """Replace exactly the diff pixels; rejects out-of-bounds diffs atomically."""
    if len(diff):
        if (diff.xs.min() < 0 or diff.ys.min() < 0
                or diff.xs.max() >= canvas.width
                or diff.ys.max() >= canvas.height):
            raise PlacementError("diff contains out-of-bounds pixels")
    out = canvas.copy()
    if len(diff):
        out.pixels[diff.ys, diff.xs] = diff.rgba
    return out


# -- PNG I/O ------------------------------------------------------------------

_PNG_SIGNATURE = b"\x89PNG\r\n\x1a\n"


def _locate_png_fault(data: bytes) -> int:
    """Best-effort byte offset of the first structural problem in a PNG."""
    if data[:8] != _PNG_SIGNATURE:
        for i, (got, want) in enumerate(zip(data[:8], _PNG_SIGNATURE)):
            if got != want:
                return i
        return len(data)
    pos = 8
    while pos < len(data):
        if pos + 8 > len(data):
            return pos
        (length,) = struct.unpack(">I", data[pos:pos + 4])
        chunk_type = data[pos + 4:pos + 8]
        if not all(65 <= c <= 122 for c in chunk_type):
            return pos + 4
        end = pos + 8 + length + 4
        if end > len(data):
            return pos
        crc_expect = zlib.crc32(data[pos + 4:pos + 8 + length]) & 0xFFFFFFFF
        (crc_got,) = struct.unpack(">I", data[pos + 8 + length:end])
        if crc_got != crc_expect:
            return pos + 8 + length
        if chunk_type == b"IEND":
            return len(data)
        pos = end
    return len(data)


def load_png(data: bytes) -> CanvasImage:
    """Decode an 8-bit RGB/RGBA PNG into an RGBA canvas."""
    try:
        img = Image.open(io.BytesIO(data))
        img.load()
    except (UnidentifiedImageError, OSError, SyntaxError, ValueError) as exc:
        raise PngDecodeError(f"cannot decode PNG: {exc}",
                             offset=_locate_png_fault(data)) from exc
    if img.mode not in ("RGB", "RGBA"):
        img = img.convert("RGBA")
    arr = np.asarray(img.convert("RGBA"), dtype=np.uint8)
    return CanvasImage(arr.copy())


def save_png(image: CanvasImage) -> bytes:
    """Encode to PNG with fixed settings so identical images give identical bytes."""
    buf = io.BytesIO()
    Image.fromarray(image.pixels, mode="RGBA").save(
        buf, format="PNG", optimize=False, compress_level=6
    )
    return buf.getvalue()
