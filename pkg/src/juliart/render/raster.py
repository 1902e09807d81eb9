"""Rasterize primitive batches to RGB pixels.

Canvas fitting: the bounding box of every square (fills are unbounded and do
not vote) is scaled uniformly to fit a size x size image inside an optional
border, centered.  Sampling is point-in-square at pixel centers; overlap
resolves to the most recently emitted primitive, which makes output
independent of any grouping the rasterizer does internally.

A FILL covers every pixel, so only primitives emitted after the last fill
are painted; the fill itself becomes the background.  This is an exact
shortcut, not an approximation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..color import hsv_to_rgb_array
from .primitives import KIND_FILL, PrimitiveBatch

# Windows up to this many candidate pixels are grouped and tested in batch;
# anything larger falls back to a per-primitive grid (rare: big squares).
_SMALL_WINDOW = 64

WHITE = (255, 255, 255)


@dataclass
class PixelBuffer:
    """Image plus the world mapping that produced it.

    Pixel (px, py) has its center at world
    (origin_x + (px + 0.5) / scale, origin_y - (py + 0.5) / scale);
    py counts down from the top row.
    """

    pixels: np.ndarray  # (size, size, 3) uint8
    scale: float  # pixels per world unit
    origin_x: float  # world x of the image's left edge
    origin_y: float  # world y of the image's top edge

    @property
    def size(self) -> int:
        return int(self.pixels.shape[0])

    def pixel_center(self, px: int, py: int) -> tuple[float, float]:
        return (
            self.origin_x + (px + 0.5) / self.scale,
            self.origin_y - (py + 0.5) / self.scale,
        )

    def world_to_pixel(self, x: float, y: float) -> tuple[float, float]:
        """Fractional pixel coordinates of a world point."""
        return (
            (x - self.origin_x) * self.scale - 0.5,
            (self.origin_y - y) * self.scale - 0.5,
        )


def _colors_as_bytes(batch: PrimitiveBatch) -> np.ndarray:
    c = batch.colors
    rgb = hsv_to_rgb_array(c[:, 0], c[:, 1], c[:, 2])
    return np.rint(rgb * 255.0).astype(np.uint8)


def rasterize(
    batch: PrimitiveBatch,
    size: int = 1000,
    border: int = 0,
    background: tuple[int, int, int] = WHITE,
) -> PixelBuffer:
    if size < 1:
        raise ValueError(f"size must be >= 1, got {size}")
    if border < 0:
        raise ValueError(f"border must be >= 0, got {border}")
    content = size - 2 * border
    if content < 1:
        raise ValueError(f"border {border} leaves no content area at size {size}")

    frames = batch.frames
    kinds = batch.kinds
    square = ~(kinds == KIND_FILL)

    # Canvas from all squares, painted or not.
    if square.any():
        sq = frames[square]
        half_w = (np.abs(sq[:, 0]) + np.abs(sq[:, 2])) * 0.5
        half_h = (np.abs(sq[:, 1]) + np.abs(sq[:, 3])) * 0.5
        xmin = float(np.min(sq[:, 4] - half_w))
        xmax = float(np.max(sq[:, 4] + half_w))
        ymin = float(np.min(sq[:, 5] - half_h))
        ymax = float(np.max(sq[:, 5] + half_h))
    else:
        xmin = xmax = ymin = ymax = 0.0

    span = max(xmax - xmin, ymax - ymin)
    if span <= 0.0:
        span = 1.0
    scale = content / span
    cx = (xmin + xmax) / 2.0
    cy = (ymin + ymax) / 2.0
    origin_x = cx - (size / 2.0) / scale
    origin_y = cy + (size / 2.0) / scale

    rgb = _colors_as_bytes(batch)

    fill_idx = np.nonzero(kinds == KIND_FILL)[0]
    if fill_idx.size:
        last_fill = int(fill_idx[-1])
        bg = tuple(int(v) for v in rgb[last_fill])
        first_painted = last_fill + 1
    else:
        bg = background
        first_painted = 0

    pixels = np.empty((size, size, 3), dtype=np.uint8)
    pixels[:, :] = np.array(bg, dtype=np.uint8)
    buf = PixelBuffer(pixels, scale, origin_x, origin_y)

    paint = np.nonzero(square)[0]
    paint = paint[paint >= first_painted]
    if paint.size == 0:
        return buf

    pf = frames[paint]
    a, b, c, d, e, f = (pf[:, i] for i in range(6))
    det = a * d - b * c
    ok = det != 0.0
    if not ok.all():
        paint = paint[ok]
        pf = pf[ok]
        a, b, c, d, e, f = (pf[:, i] for i in range(6))
        det = det[ok]
    if paint.size == 0:
        return buf

    half_w = (np.abs(a) + np.abs(c)) * 0.5
    half_h = (np.abs(b) + np.abs(d)) * 0.5
    px0 = np.ceil((e - half_w - origin_x) * scale - 0.5).astype(np.int64)
    px1 = np.floor((e + half_w - origin_x) * scale - 0.5).astype(np.int64)
    py0 = np.ceil((origin_y - (f + half_h)) * scale - 0.5).astype(np.int64)
    py1 = np.floor((origin_y - (f - half_h)) * scale - 0.5).astype(np.int64)
    np.clip(px0, 0, size - 1, out=px0)
    np.clip(px1, 0, size - 1, out=px1)
    np.clip(py0, 0, size - 1, out=py0)
    np.clip(py1, 0, size - 1, out=py1)
    nw = px1 - px0 + 1
    nh = py1 - py0 + 1

    live = (nw > 0) & (nh > 0)

    pix_parts: list[np.ndarray] = []
    ord_parts: list[np.ndarray] = []

    def window_test(idx, wx0, wy0, width, height):
        """Candidate pixel grid for primitives idx, all sharing width x height."""
        ox = np.arange(width, dtype=np.int64)
        oy = np.arange(height, dtype=np.int64)
        px = wx0[:, None, None] + ox[None, :, None]  # (m, w, 1)
        py = wy0[:, None, None] + oy[None, None, :]  # (m, 1, h)
        xc = origin_x + (px + 0.5) / scale
        yc = origin_y - (py + 0.5) / scale
        dx = xc - e[idx][:, None, None]
        dy = yc - f[idx][:, None, None]
        det_i = det[idx][:, None, None]
        u = (d[idx][:, None, None] * dx - c[idx][:, None, None] * dy) / det_i
        v = (-b[idx][:, None, None] * dx + a[idx][:, None, None] * dy) / det_i
        inside = (np.abs(u) <= 0.5) & (np.abs(v) <= 0.5)
        px_b, py_b = np.broadcast_arrays(px, py)
        sel = inside
        if sel.any():
            flat = py_b[sel] * np.int64(size) + px_b[sel]
            orders = np.broadcast_to(
                paint[idx][:, None, None], inside.shape
            )[sel]
            pix_parts.append(flat)
            ord_parts.append(orders)

    small = live & (nw * nh <= _SMALL_WINDOW)
    if small.any():
        keys = nw[small] * np.int64(1 << 16) + nh[small]
        small_idx = np.nonzero(small)[0]
        for key in np.unique(keys):
            grp = small_idx[keys == key]
            w = int(key >> 16)
            h = int(key & 0xFFFF)
            # Bound temporaries to about a million candidate pixels per call.
            step = max(1, 1_000_000 // (w * h))
            for lo in range(0, grp.size, step):
                part = grp[lo : lo + step]
                window_test(part, px0[part], py0[part], w, h)

    big_idx = np.nonzero(live & (nw * nh > _SMALL_WINDOW))[0]
    for i in big_idx:
        window_test(np.array([i]), px0[i : i + 1], py0[i : i + 1], int(nw[i]), int(nh[i]))

    if not pix_parts:
        return buf

    pix = np.concatenate(pix_parts)
    orders = np.concatenate(ord_parts)
    # Last emission wins: sort by pixel, then descending order, keep firsts.
    rank = np.lexsort((-orders, pix))
    pix = pix[rank]
    orders = orders[rank]
    _, firsts = np.unique(pix, return_index=True)
    pix = pix[firsts]
    orders = orders[firsts]
    pixels.reshape(-1, 3)[pix] = rgb[orders]
    return buf
