"""Rendering pipeline: evaluate, rasterize, encode.

render_source is the one-stop entry the CLI and service use; the pieces stay
importable for callers that want primitives or pixels without PNG bytes.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from ..scene import ast, parse
from .evaluate import (
    VariationSeed,
    call_scene_function,
    evaluate_scene,
    resolve_workers,
)
from .limits import DEFAULT_LIMITS, SERVICE_LIMITS, EvalLimits
from .pngio import encode_png, write_png
from .primitives import Primitive, PrimitiveBatch
from .raster import PixelBuffer, rasterize
from .rng import seed_from_tag
from .transform import IDENTITY, Transform2D

__all__ = [
    "RenderResult",
    "render_source",
    "render_program",
    "evaluate_scene",
    "call_scene_function",
    "VariationSeed",
    "seed_from_tag",
    "rasterize",
    "PixelBuffer",
    "encode_png",
    "write_png",
    "Primitive",
    "PrimitiveBatch",
    "Transform2D",
    "IDENTITY",
    "EvalLimits",
    "DEFAULT_LIMITS",
    "SERVICE_LIMITS",
    "resolve_workers",
]


@dataclass
class RenderResult:
    buffer: PixelBuffer
    png: bytes
    primitive_count: int
    steps_executed: int
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def pixels(self):
        return self.buffer.pixels


def render_program(
    program: ast.Program,
    *,
    size: int = 1000,
    border: int = 0,
    variation: str | VariationSeed = "",
    workers: int | None = None,
    limits: EvalLimits = DEFAULT_LIMITS,
) -> RenderResult:
    timings: dict[str, float] = {}

    t0 = time.perf_counter()
    batch = evaluate_scene(program, variation, limits=limits, workers=workers)
    timings["evaluate"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    buffer = rasterize(batch, size=size, border=border)
    timings["rasterize"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    png = encode_png(buffer.pixels)
    timings["encode"] = time.perf_counter() - t0

    return RenderResult(
        buffer=buffer,
        png=png,
        primitive_count=len(batch),
        steps_executed=batch.steps_executed,
        timings=timings,
    )


def render_source(
    source: str,
    *,
    size: int = 1000,
    border: int = 0,
    variation: str | VariationSeed = "",
    workers: int | None = None,
    limits: EvalLimits = DEFAULT_LIMITS,
) -> RenderResult:
    """Parse, check, evaluate, rasterize and encode in one call.

    Raises the scene error hierarchy (LexError, ParseError, SemanticError,
    EvalError, RenderLimitError) with positions; callers map those to exit
    codes or HTTP statuses.
    """
    t0 = time.perf_counter()
    program = parse(source)
    parse_time = time.perf_counter() - t0
    result = render_program(
        program,
        size=size,
        border=border,
        variation=variation,
        workers=workers,
        limits=limits,
    )
    result.timings["parse"] = parse_time
    return result
