"""2D affine frames for primitive placement.

A transform maps local coordinates (u, v) to world coordinates:

    x = a*u + c*v + e
    y = b*u + d*v + f

i.e. column-major 2x2 linear part plus translation, the usual graphics
convention.  Composition is written parent.compose(child): the child acts in
the parent's local space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class Transform2D:
    a: float = 1.0
    b: float = 0.0
    c: float = 0.0
    d: float = 1.0
    e: float = 0.0
    f: float = 0.0

    def compose(self, other: "Transform2D") -> "Transform2D":
        """self after other: (self.compose(other)).apply(p) == self.apply(other.apply(p))."""
        return Transform2D(
            self.a * other.a + self.c * other.b,
            self.b * other.a + self.d * other.b,
            self.a * other.c + self.c * other.d,
            self.b * other.c + self.d * other.d,
            self.a * other.e + self.c * other.f + self.e,
            self.b * other.e + self.d * other.f + self.f,
        )

    def apply(self, u: float, v: float) -> tuple[float, float]:
        return (
            self.a * u + self.c * v + self.e,
            self.b * u + self.d * v + self.f,
        )

    @property
    def determinant(self) -> float:
        return self.a * self.d - self.b * self.c

    @property
    def origin(self) -> tuple[float, float]:
        return (self.e, self.f)

    def as_tuple(self) -> tuple[float, float, float, float, float, float]:
        return (self.a, self.b, self.c, self.d, self.e, self.f)

    @staticmethod
    def translation(dx: float, dy: float) -> "Transform2D":
        return Transform2D(e=dx, f=dy)

    @staticmethod
    def scaling(w: float, h: float | None = None) -> "Transform2D":
        if h is None:
            h = w
        return Transform2D(a=w, d=h)

    @staticmethod
    def rotation_degrees(deg: float) -> "Transform2D":
        """Counterclockwise rotation, positive degrees."""
        rad = math.radians(deg)
        cos = math.cos(rad)
        sin = math.sin(rad)
        return Transform2D(a=cos, b=sin, c=-sin, d=cos)


IDENTITY = Transform2D()
