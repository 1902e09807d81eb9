import pytest

from juliart.gallery import PRESET_NAMES, preset, render_preset


class RenderCache:
    """Memoizes full-size preset renders so the gallery checks and the
    acceptance gate can share them instead of re-rendering (~1s each)."""

    def __init__(self):
        self._done = {}

    def get(self, name, **kwargs):
        key = (name, tuple(sorted(kwargs.items())))
        if key not in self._done:
            self._done[key] = render_preset(name, **kwargs)
        return self._done[key]


@pytest.fixture(scope="session")
def render_cache():
    return RenderCache()


@pytest.fixture(scope="session")
def corpus():
    """All bundled scene sources, keyed by preset name."""
    return {name: preset(name).source for name in PRESET_NAMES}
