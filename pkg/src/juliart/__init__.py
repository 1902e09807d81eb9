"""Julia-set artwork toolkit.

A small grammar-based scene language drives an escape-time renderer for
the quadratic family z -> z^2 + c.  Scenes discretize a viewport of the
complex plane into coloured squares; the renderer evaluates them into a
deterministic painter-ordered primitive list, rasterizes and encodes PNG.
Everything is reproducible: the same scene, size and variation tag give
the same bytes, regardless of worker count.
"""

from .color import (
    BLACK,
    ColorAdjustment,
    HsvColor,
    RgbColor,
    apply_adjustment,
    escape_ramp_down,
    escape_ramp_up,
    hsv_to_rgb,
)
from .dynamics import (
    EscapeBudget,
    Viewport,
    escape_count_grid,
    escape_steps,
    in_set_count,
    index_to_coord,
)
from .errors import (
    EvalError,
    LexError,
    ParseError,
    RenderLimitError,
    SceneError,
    SemanticError,
)
from .render import (
    DEFAULT_LIMITS,
    SERVICE_LIMITS,
    EvalLimits,
    RenderResult,
    VariationSeed,
    evaluate_scene,
    render_program,
    render_source,
    write_png,
)
from .scene import parse, pretty_print, validate_program

__version__ = "0.1.0"

__all__ = [
    "BLACK",
    "ColorAdjustment",
    "HsvColor",
    "RgbColor",
    "apply_adjustment",
    "escape_ramp_down",
    "escape_ramp_up",
    "hsv_to_rgb",
    "EscapeBudget",
    "Viewport",
    "escape_count_grid",
    "escape_steps",
    "in_set_count",
    "index_to_coord",
    "EvalError",
    "LexError",
    "ParseError",
    "RenderLimitError",
    "SceneError",
    "SemanticError",
    "DEFAULT_LIMITS",
    "SERVICE_LIMITS",
    "EvalLimits",
    "RenderResult",
    "VariationSeed",
    "evaluate_scene",
    "render_program",
    "render_source",
    "write_png",
    "parse",
    "pretty_print",
    "validate_program",
    "__version__",
]
