"""Escape-time iteration for the quadratic family f(z) = z^2 + c.

The scene language re-implements this arithmetic symbolically; this module is
the native reference used by the gallery verifier, the report figures and the
tests.  Both must agree bit for bit, so every formula here mirrors the exact
operation order used by scene programs:

    z_r' = z_r*z_r - z_i*z_i + c_r
    z_i' = 2*z_r*z_i + c_i

and the escape test compares the squared modulus against 4 (no square root).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Viewport:
    """Axis-aligned window of the complex plane, [left, right] x [bottom, top]."""

    left: float
    right: float
    bottom: float
    top: float

    def __post_init__(self):
        for name in ("left", "right", "bottom", "top"):
            v = getattr(self, name)
            if not np.isfinite(v):
                raise ValueError(f"viewport {name} must be finite, got {v!r}")
        if not self.left < self.right:
            raise ValueError(f"viewport needs left < right, got [{self.left}, {self.right}]")
        if not self.bottom < self.top:
            raise ValueError(f"viewport needs bottom < top, got [{self.bottom}, {self.top}]")

    @property
    def width(self) -> float:
        return self.right - self.left

    @property
    def height(self) -> float:
        return self.top - self.bottom

    @classmethod
    def from_center(cls, cx: float, cy: float, side: float) -> "Viewport":
        """Square window of the given side length centred on (cx, cy)."""
        if not side > 0:
            raise ValueError(f"side must be positive, got {side!r}")
        h = side / 2
        return cls(cx - h, cx + h, cy - h, cy + h)


@dataclass(frozen=True)
class EscapeBudget:
    """Iteration cap N; points that survive N steps count as in-set."""

    max_steps: int

    def __post_init__(self):
        if not isinstance(self.max_steps, int) or self.max_steps < 1:
            raise ValueError(f"max_steps must be an integer >= 1, got {self.max_steps!r}")


def quad_step(z: complex, c: complex) -> complex:
    """One iteration z -> z^2 + c, componentwise to pin the rounding order."""
    return complex(
        z.real * z.real - z.imag * z.imag + c.real,
        2.0 * z.real * z.imag + c.imag,
    )


def escape_steps(z: complex, c: complex, budget: EscapeBudget | int) -> int:
    """Smallest k with |z_k|^2 >= 4, or max_steps if the orbit never escapes.

    The modulus of z_k is tested before step k+1 is taken, so the returned
    value is the number of *completed* checks, in [0, max_steps].  A non-finite
    iterate compares as escaped (NaN fails every `< 4` test).
    """
    n = budget.max_steps if isinstance(budget, EscapeBudget) else int(budget)
    zr, zi = z.real, z.imag
    cr, ci = c.real, c.imag
    for k in range(n):
        if not (zr * zr + zi * zi < 4.0):
            return k
        zr, zi = zr * zr - zi * zi + cr, 2.0 * zr * zi + ci
    return n


def index_to_coord(i: int, lo: float, hi: float, resolution: int) -> float:
    """Coordinate of sample i on the closed interval [lo, hi].

    Endpoints land exactly: i=0 gives lo, i=resolution-1 gives hi.  The
    expression ((hi - lo) * i) / (resolution - 1) + lo is shared verbatim
    with the scene programs, which is what makes native/grammar comparisons
    bit-exact.
    """
    if resolution < 2:
        raise ValueError(f"resolution must be >= 2, got {resolution}")
    return (hi - lo) * i / (resolution - 1) + lo


def cell_size(viewport: Viewport, resolution: int) -> tuple[float, float]:
    """Sample spacing (dx, dy) of a resolution x resolution grid on the viewport."""
    if resolution < 2:
        raise ValueError(f"resolution must be >= 2, got {resolution}")
    return (
        viewport.width / (resolution - 1),
        viewport.height / (resolution - 1),
    )


def escape_count_grid(
    viewport: Viewport,
    resolution: int,
    c: complex,
    budget: EscapeBudget | int,
) -> np.ndarray:
    """Escape counts for a full sample grid, vectorized.

    Returns an int32 array of shape (resolution, resolution) where entry
    [i, j] is escape_steps at x = index_to_coord(j, left, right, ...) and
    y = index_to_coord(i, bottom, top, ...).  Row 0 is the *bottom* of the
    viewport; callers producing images flip vertically themselves.

    Lanes that have escaped are compressed out of the working set each
    iteration, so cost is proportional to the total number of steps actually
    taken rather than resolution^2 * max_steps.
    """
    n = budget.max_steps if isinstance(budget, EscapeBudget) else int(budget)
    if n < 1:
        raise ValueError(f"max_steps must be >= 1, got {n}")
    if resolution < 2:
        raise ValueError(f"resolution must be >= 2, got {resolution}")

    idx = np.arange(resolution, dtype=np.float64)
    xs = (viewport.right - viewport.left) * idx / (resolution - 1) + viewport.left
    ys = (viewport.top - viewport.bottom) * idx / (resolution - 1) + viewport.bottom

    zr = np.broadcast_to(xs, (resolution, resolution)).ravel().copy()
    zi = np.repeat(ys, resolution)
    counts = np.full(zr.shape, n, dtype=np.int32)
    alive = np.arange(zr.size, dtype=np.int64)
    cr, ci = c.real, c.imag

    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(n):
            mag = zr * zr + zi * zi
            still = mag < 4.0
            done = ~still
            if done.any():
                counts[alive[done]] = k
                alive = alive[still]
                zr = zr[still]
                zi = zi[still]
                if alive.size == 0:
                    break
            zr, zi = zr * zr - zi * zi + cr, 2.0 * zr * zi + ci

    return counts.reshape(resolution, resolution)


def in_set_count(
    viewport: Viewport,
    resolution: int,
    c: complex,
    budget: EscapeBudget | int,
) -> int:
    """Number of grid samples that survive the full budget."""
    n = budget.max_steps if isinstance(budget, EscapeBudget) else int(budget)
    return int((escape_count_grid(viewport, resolution, c, n) == n).sum())
