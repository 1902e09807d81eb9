"""HSV colors, the adjustment algebra and the escape-count brightness ramps.

Scene primitives start out black and are recolored by composing adjustments:
hue adds (wrapping mod 360), saturation and brightness move toward a target
endpoint.  A positive amount a moves the channel toward 1 by the fraction a
of the remaining headroom, a negative amount scales it toward 0:

    a >= 0:  v' = v + a * (1 - v)
    a <  0:  v' = v * (1 + a)

so a = 1 always saturates, a = -1 always zeroes, and a = 0 is the identity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


def _finite(name: str, v: float) -> float:
    v = float(v)
    if not math.isfinite(v):
        raise ValueError(f"{name} must be finite, got {v!r}")
    return v


@dataclass(frozen=True)
class HsvColor:
    """Hue in degrees [0, 360), saturation and brightness in [0, 1].

    Out-of-range inputs are normalized on construction: hue wraps, the other
    two channels clamp.  Instances are immutable.
    """

    hue: float = 0.0
    saturation: float = 0.0
    brightness: float = 0.0

    def __post_init__(self):
        h = _finite("hue", self.hue) % 360.0
        s = min(1.0, max(0.0, _finite("saturation", self.saturation)))
        b = min(1.0, max(0.0, _finite("brightness", self.brightness)))
        object.__setattr__(self, "hue", h)
        object.__setattr__(self, "saturation", s)
        object.__setattr__(self, "brightness", b)


BLACK = HsvColor(0.0, 0.0, 0.0)


@dataclass(frozen=True)
class ColorAdjustment:
    """Optional per-channel change; None leaves the channel alone.

    Saturation and brightness amounts live in [-1, 1]; hue shift is any
    finite number of degrees.
    """

    hue: float | None = None
    saturation: float | None = None
    brightness: float | None = None

    def __post_init__(self):
        if self.hue is not None:
            _finite("hue shift", self.hue)
        for name in ("saturation", "brightness"):
            v = getattr(self, name)
            if v is None:
                continue
            v = _finite(f"{name} amount", v)
            if not -1.0 <= v <= 1.0:
                raise ValueError(f"{name} amount must be in [-1, 1], got {v!r}")


def shift_channel(value: float, amount: float) -> float:
    """Move value toward 1 (amount > 0) or toward 0 (amount < 0)."""
    if amount >= 0.0:
        return value + amount * (1.0 - value)
    return value * (1.0 + amount)


def apply_adjustment(base: HsvColor, adj: ColorAdjustment) -> HsvColor:
    """Compose one adjustment onto a color; order matters, so no shortcuts."""
    h, s, b = base.hue, base.saturation, base.brightness
    if adj.hue is not None:
        h = (h + adj.hue) % 360.0
    if adj.saturation is not None:
        s = shift_channel(s, adj.saturation)
    if adj.brightness is not None:
        b = shift_channel(b, adj.brightness)
    return HsvColor(h, s, b)


@dataclass(frozen=True)
class RgbColor:
    """Linear-free sRGB triple, channels in [0, 1]."""

    r: float
    g: float
    b: float

    def to_bytes(self) -> tuple[int, int, int]:
        return (
            int(round(self.r * 255.0)),
            int(round(self.g * 255.0)),
            int(round(self.b * 255.0)),
        )


def hsv_to_rgb(color: HsvColor) -> RgbColor:
    """Hexcone HSV -> RGB.

    Sector k = floor(h / 60), fractional part f, and the usual p/q/t mix.
    Saturation 0 short-circuits to gray so hue noise can't leak in.
    """
    s, v = color.saturation, color.brightness
    if s == 0.0:
        return RgbColor(v, v, v)
    h = (color.hue % 360.0) / 60.0
    k = int(h) % 6
    f = h - int(h)
    p = v * (1.0 - s)
    q = v * (1.0 - s * f)
    t = v * (1.0 - s * (1.0 - f))
    if k == 0:
        return RgbColor(v, t, p)
    if k == 1:
        return RgbColor(q, v, p)
    if k == 2:
        return RgbColor(p, v, t)
    if k == 3:
        return RgbColor(p, q, v)
    if k == 4:
        return RgbColor(t, p, v)
    return RgbColor(v, p, q)


def hsv_to_rgb_array(h: np.ndarray, s: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Vector version of hsv_to_rgb; returns an (n, 3) float64 array.

    Must match the scalar function exactly (same formulas, same order); the
    rasterizer colors whole primitive batches through here.
    """
    h = np.asarray(h, dtype=np.float64)
    s = np.asarray(s, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    hh = np.mod(h, 360.0) / 60.0
    k = hh.astype(np.int64) % 6
    f = hh - hh.astype(np.int64)
    p = v * (1.0 - s)
    q = v * (1.0 - s * f)
    t = v * (1.0 - s * (1.0 - f))

    r = np.choose(k, [v, q, p, p, t, v])
    g = np.choose(k, [t, v, v, q, p, p])
    b = np.choose(k, [p, p, t, v, v, q])

    gray = s == 0.0
    if gray.any():
        r = np.where(gray, v, r)
        g = np.where(gray, v, g)
        b = np.where(gray, v, b)
    return np.stack([r, g, b], axis=-1)


def escape_ramp_up(num_steps: float, max_steps: int) -> float:
    """Brightness rising with escape count: 0 at n=1 up to 1 at n=max_steps.

    Result is clamped to [0, 1] so callers can feed raw counts.
    """
    if max_steps < 2:
        raise ValueError(f"max_steps must be >= 2, got {max_steps}")
    return min(1.0, max(0.0, (num_steps - 1.0) / (max_steps - 1.0)))


def escape_ramp_down(num_steps: float, max_steps: int, scale: float = 1.0) -> float:
    """Brightness falling with escape count: scale at n=1 down to 0.

    Written as scale + scale*(1-n)/(N-1) rather than the algebraically equal
    scale*(N-n)/(N-1); the two round differently and the scenes use the
    former.
    """
    if max_steps < 2:
        raise ValueError(f"max_steps must be >= 2, got {max_steps}")
    value = scale + (scale * (1.0 - num_steps)) / (max_steps - 1.0)
    return min(1.0, max(0.0, value))
