"""HSL colors, their Bloch-sphere encoding, and circular hue statistics.

Hue and luminosity map onto the sphere as ``phi = 2*pi*H`` and
``theta = pi*L``; saturation is never encoded and passes through unchanged.
Conversions between RGB and HSL use the standard cylinder model and are
vectorized for whole pixel regions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ArgumentError, DegenerateHueMeanError
from .sim import PauliVector

POLE_EPS = 1e-6  # XY magnitude below this counts as a Bloch pole


def wrap_turn(value: float) -> float:
    """value mod 1, guarding the float artifact (-eps) % 1.0 == 1.0."""
    out = value % 1.0
    return 0.0 if out >= 1.0 else out


def _check_unit(value: float, name: str):
    if not 0.0 <= value <= 1.0:
        raise ArgumentError(f"{name} must be in [0, 1], got {value}")


@dataclass(frozen=True)
class HslColor:
    """Hue (turns, stored mod 1), saturation and luminosity, all in [0, 1]."""

    h: float
    s: float
    l: float

    def __post_init__(self):
        object.__setattr__(self, "h", wrap_turn(self.h))
        _check_unit(self.s, "s")
        _check_unit(self.l, "l")


@dataclass(frozen=True)
class BlochAngles:
    """Spherical angles: phi in [0, 2*pi), theta in [0, pi]."""

    phi: float
    theta: float

    def __post_init__(self):
        if not 0.0 <= self.phi < 2.0 * math.pi + 1e-12:
            raise ArgumentError(f"phi must be in [0, 2*pi), got {self.phi}")
        if not 0.0 <= self.theta <= math.pi + 1e-12:
            raise ArgumentError(f"theta must be in [0, pi], got {self.theta}")


@dataclass(frozen=True)
class RgbColor:
    r: float
    g: float
    b: float

    def __post_init__(self):
        for name in "rgb":
            _check_unit(getattr(self, name), name)


def encode_hl(color: HslColor) -> BlochAngles:
    """Map hue and luminosity to sphere angles; saturation is not encoded."""
    return BlochAngles(phi=2.0 * math.pi * color.h, theta=math.pi * color.l)


def decode_bloch(e: PauliVector, fallback_hue: float) -> tuple[float, float]:
    """Recover (hue, luminosity) from a Bloch vector.

    At the poles (vanishing XY component) the hue is undefined and
    ``fallback_hue`` is returned; for a fully mixed vector the luminosity
    additionally falls back to 0.5.
    """
    r_xy = math.hypot(e.ex, e.ey)
    if r_xy < POLE_EPS:
        hue = wrap_turn(fallback_hue)
        if e.norm() < POLE_EPS:
            return hue, 0.5
        return hue, math.atan2(r_xy, e.ez) / math.pi
    phi = math.atan2(e.ey, e.ex) % (2.0 * math.pi)
    theta = math.atan2(r_xy, e.ez)
    return wrap_turn(phi / (2.0 * math.pi)), theta / math.pi


def circular_mean_hue(hues: Sequence[float],
                      weights: Sequence[float] | None = None) -> float:
    """Weighted circular mean of hues in turns, continuous across the 0/1 wrap.

    Raises :class:`DegenerateHueMeanError` when the resultant vector vanishes
    (antipodal hue sets); callers usually fall back to the first hue.
    """
    hues = np.asarray(hues, dtype=float)
    if hues.size == 0:
        raise ArgumentError("need at least one hue")
    if weights is None:
        w = np.ones_like(hues)
    else:
        w = np.asarray(weights, dtype=float)
        if w.shape != hues.shape:
            raise ArgumentError("weights must match hues in length")
        if np.any(w < 0):
            raise ArgumentError("weights must be non-negative")
    total = w.sum()
    if total <= 0:
        raise ArgumentError("weights must not all be zero")
    z = np.sum(w * np.exp(2j * math.pi * hues))
    if abs(z) < 1e-9 * total:
        raise DegenerateHueMeanError(
            f"hue resultant vector is zero (|z|={abs(z):.3g})"
        )
    return wrap_turn(float(np.angle(z) / (2.0 * math.pi)))


def shift_region(pixels: Sequence[HslColor], delta_h: float,
                 delta_l: float) -> list[HslColor]:
    """Uniformly rotate hues and shift luminosities, cropping L to [0, 1]."""
    return [
        HslColor(
            h=wrap_turn(p.h + delta_h),
            s=p.s,
            l=min(1.0, max(0.0, p.l + delta_l)),
        )
        for p in pixels
    ]


# -- RGB <-> HSL, vectorized over (N, 3) float arrays in [0, 1] --------------

def rgb_array_to_hsl(rgb: np.ndarray) -> np.ndarray:
    rgb = np.asarray(rgb, dtype=float)
    r, g, b = rgb[..., 0], rgb[..., 1], rgb[..., 2]
    mx = rgb.max(axis=-1)
    mn = rgb.min(axis=-1)
    l = (mx + mn) / 2.0
    d = mx - mn
    chromatic = d > 0

    s = np.zeros_like(l)
    denom = 1.0 - np.abs(2.0 * l - 1.0)
    np.divide(d, denom, out=s, where=chromatic & (denom > 0))

    h = np.zeros_like(l)
    safe_d = np.where(chromatic, d, 1.0)
    h_r = ((g - b) / safe_d) % 6.0
    h_g = (b - r) / safe_d + 2.0
    h_b = (r - g) / safe_d + 4.0
    h = np.where(mx == r, h_r, np.where(mx == g, h_g, h_b))
    h = np.where(chromatic, h / 6.0, 0.0) % 1.0
    return np.stack([h, s, l], axis=-1)


def hsl_array_to_rgb(hsl: np.ndarray) -> np.ndarray:
    hsl = np.asarray(hsl, dtype=float)
    h, s, l = hsl[..., 0] % 1.0, hsl[..., 1], hsl[..., 2]
    c = (1.0 - np.abs(2.0 * l - 1.0)) * s
    hp = h * 6.0
    x = c * (1.0 - np.abs(hp % 2.0 - 1.0))
    zero = np.zeros_like(c)
    sector = np.floor(hp).astype(int) % 6
    r1 = np.select([sector == 0, sector == 1, sector == 2,
                    sector == 3, sector == 4, sector == 5],
                   [c, x, zero, zero, x, c])
    g1 = np.select([sector == 0, sector == 1, sector == 2,
                    sector == 3, sector == 4, sector == 5],
                   [x, c, c, x, zero, zero])
    b1 = np.select([sector == 0, sector == 1, sector == 2,
                    sector == 3, sector == 4, sector == 5],
                   [zero, zero, x, c, c, x])
    m = l - c / 2.0
    return np.stack([r1 + m, g1 + m, b1 + m], axis=-1)


def rgb_to_hsl(c: RgbColor) -> HslColor:
    h, s, l = rgb_array_to_hsl(np.array([c.r, c.g, c.b]))
    return HslColor(h=float(h), s=float(s), l=float(min(1.0, max(0.0, l))))


def hsl_to_rgb(c: HslColor) -> RgbColor:
    r, g, b = hsl_array_to_rgb(np.array([c.h, c.s, c.l]))
    clamp = lambda v: float(min(1.0, max(0.0, v)))
    return RgbColor(r=clamp(r), g=clamp(g), b=clamp(b))
