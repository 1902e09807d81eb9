"""Built-in scene gallery.

Each preset pairs a scene file under scenes/ with the metadata a caller
needs to reason about it natively: the seed, the viewport, the iteration
cap, the lattice resolution and the variation tag it is meant to be
rendered with.  The scene file is the artwork; the metadata mirrors the
constants inside it so tests can cross-check one against the other.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from ..dynamics import Viewport
from ..render import RenderResult, render_program
from ..scene import ast, parse

_BATTLE_VIEW = Viewport(
    0.21 - 0.84 / 2, 0.21 + 0.84 / 2, -0.445714 - 0.84 / 2, -0.445714 + 0.84 / 2
)


@dataclass(frozen=True)
class Preset:
    name: str
    title: str
    seed: complex
    viewport: Viewport
    max_steps: int
    resolution: int
    variation: str = ""

    @property
    def source(self) -> str:
        return _load_source(self.name)

    def program(self) -> ast.Program:
        return _load_program(self.name)


_PRESETS: dict[str, Preset] = {
    p.name: p
    for p in (
        Preset(
            "basic",
            "Basic Julia set",
            complex(-0.381966, 0.618034),
            Viewport(-1.4, 1.4, -1.4, 1.4),
            40,
            1000,
        ),
        Preset(
            "fjords",
            "Frozen Fjords",
            complex(-1.384286, 0.004286),
            Viewport(0.01, 0.09, 0.02, 0.10),
            300,
            1000,
        ),
        Preset(
            "forest",
            "Wail of the Pripyat Forest",
            complex(-0.381966, 0.618034),
            Viewport(-0.052857, 0.188571, -0.105714, 0.135714),
            200,
            1000,
            variation="PAJBHA",
        ),
        Preset(
            "ragnarok",
            "Ragnarok",
            complex(-1.4, 0.0),
            Viewport(-0.6, 0.6, -0.6, 0.6),
            100,
            1000,
        ),
        Preset(
            "battle",
            "The Battle for Smolensk",
            complex(0.39, -0.252857),
            _BATTLE_VIEW,
            400,
            1000,
        ),
        Preset(
            "leaves",
            "Under the Shade of Leaves",
            complex(-1.384286, 0.004286),
            Viewport(0.01, 0.09, 0.02, 0.10),
            60,
            1000,
        ),
        Preset(
            "crucified",
            "The Crucified",
            complex(-1.39, 0.0),
            Viewport(-0.02, 0.02, -0.355, -0.315),
            200,
            1000,
        ),
        Preset(
            "blood",
            "Blood Sprinkle",
            complex(0.39, -0.252857),
            _BATTLE_VIEW,
            150,
            1000,
        ),
    )
}

PRESET_NAMES: tuple[str, ...] = tuple(_PRESETS)


def preset_names() -> tuple[str, ...]:
    return PRESET_NAMES


def preset(name: str) -> Preset:
    try:
        return _PRESETS[name]
    except KeyError:
        raise ValueError(
            f"unknown preset {name!r}; available: {', '.join(PRESET_NAMES)}"
        ) from None


@lru_cache(maxsize=None)
def _load_source(name: str) -> str:
    path = resources.files(__package__) / "scenes" / f"{name}.cfdg"
    return path.read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def _load_program(name: str) -> ast.Program:
    return parse(_load_source(name))


def render_preset(
    name: str,
    *,
    size: int | None = None,
    border: int = 0,
    workers: int | None = None,
    variation: str | None = None,
) -> RenderResult:
    """Render a preset with its own variation tag unless overridden."""
    p = preset(name)
    return render_program(
        p.program(),
        size=size if size is not None else p.resolution,
        border=border,
        variation=p.variation if variation is None else variation,
        workers=workers,
    )
