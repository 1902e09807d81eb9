"""Flat primitive storage.

A render of the default gallery emits about a million squares, so per-object
Python instances are off the table.  PrimitiveBatch keeps everything in three
parallel arrays (kind, affine frame, HSV color) ordered by emission; that
order is the painter's order and is part of the determinism contract.
Primitive objects are materialized on demand for tests and tooling.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..color import HsvColor
from ..errors import RenderLimitError
from .transform import Transform2D

KIND_SQUARE = 0
KIND_FILL = 1

_KIND_NAMES = {KIND_SQUARE: "square", KIND_FILL: "fill"}


@dataclass(frozen=True)
class Primitive:
    """One emitted primitive, unpacked; index is its painter's-order rank."""

    kind: str
    transform: Transform2D
    color: HsvColor
    index: int

    @property
    def center(self) -> tuple[float, float]:
        return self.transform.origin


class PrimitiveBatch:
    """Emission-ordered columnar store of primitives."""

    __slots__ = ("kinds", "frames", "colors", "steps_executed")

    def __init__(self, kinds: np.ndarray, frames: np.ndarray, colors: np.ndarray):
        kinds = np.asarray(kinds, dtype=np.uint8)
        frames = np.asarray(frames, dtype=np.float64)
        colors = np.asarray(colors, dtype=np.float64)
        if frames.shape != (kinds.size, 6) or colors.shape != (kinds.size, 3):
            raise ValueError("kinds, frames and colors disagree on batch length")
        self.kinds = kinds
        self.frames = frames
        self.colors = colors
        # Escape-iteration work accounted by the evaluator; stays 0 for
        # hand-built batches.
        self.steps_executed = 0

    def __len__(self) -> int:
        return int(self.kinds.size)

    def __getitem__(self, i: int) -> Primitive:
        i = int(i)
        if i < 0:
            i += len(self)
        if not 0 <= i < len(self):
            raise IndexError(i)
        a, b, c, d, e, f = (float(v) for v in self.frames[i])
        h, s, v = (float(x) for x in self.colors[i])
        return Primitive(
            kind=_KIND_NAMES[int(self.kinds[i])],
            transform=Transform2D(a, b, c, d, e, f),
            color=HsvColor(h, s, v),
            index=i,
        )

    def __iter__(self):
        for i in range(len(self)):
            yield self[i]

    def centers(self) -> np.ndarray:
        """(n, 2) world-space centers, emission order."""
        return self.frames[:, 4:6]

    def square_mask(self) -> np.ndarray:
        return self.kinds == KIND_SQUARE

    @staticmethod
    def empty() -> "PrimitiveBatch":
        return PrimitiveBatch(
            np.zeros(0, dtype=np.uint8),
            np.zeros((0, 6), dtype=np.float64),
            np.zeros((0, 3), dtype=np.float64),
        )


class BatchBuilder:
    """Accumulates emission chunks and enforces the primitive cap.

    Chunks may be single rows (scalar evaluator) or whole arrays (vector
    evaluator); either way append order is emission order.
    """

    def __init__(self, max_primitives: int):
        self.max_primitives = max_primitives
        self._chunks: list[tuple[np.ndarray, np.ndarray, np.ndarray]] = []
        self._count = 0

    @property
    def count(self) -> int:
        return self._count

    def _check(self, extra: int):
        if self._count + extra > self.max_primitives:
            raise RenderLimitError(
                f"primitive cap exceeded ({self.max_primitives})"
            )

    def append_one(self, kind: int, frame: tuple, hsv: tuple):
        self._check(1)
        self._chunks.append(
            (
                np.array([kind], dtype=np.uint8),
                np.array([frame], dtype=np.float64),
                np.array([hsv], dtype=np.float64),
            )
        )
        self._count += 1

    def append_arrays(self, kinds: np.ndarray, frames: np.ndarray, colors: np.ndarray):
        n = len(kinds)
        if n == 0:
            return
        self._check(n)
        self._chunks.append(
            (
                np.asarray(kinds, dtype=np.uint8),
                np.asarray(frames, dtype=np.float64),
                np.asarray(colors, dtype=np.float64),
            )
        )
        self._count += n

    def build(self) -> PrimitiveBatch:
        if not self._chunks:
            return PrimitiveBatch.empty()
        kinds = np.concatenate([c[0] for c in self._chunks])
        frames = np.concatenate([c[1] for c in self._chunks])
        colors = np.concatenate([c[2] for c in self._chunks])
        return PrimitiveBatch(kinds, frames, colors)
