import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from juliart.color import (
    BLACK,
    ColorAdjustment,
    HsvColor,
    RgbColor,
    apply_adjustment,
    escape_ramp_down,
    escape_ramp_up,
    hsv_to_rgb,
    hsv_to_rgb_array,
    shift_channel,
)
from oracles import hsv_bytes

unit = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)
amount = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False)


class TestHsvColor:
    def test_hue_wraps(self):
        assert HsvColor(370.0, 0, 0).hue == 10.0
        assert HsvColor(-30.0, 0, 0).hue == 330.0
        assert HsvColor(360.0, 0, 0).hue == 0.0

    def test_channels_clamp(self):
        c = HsvColor(0.0, 1.5, -0.25)
        assert c.saturation == 1.0
        assert c.brightness == 0.0

    def test_black_constant(self):
        assert BLACK == HsvColor(0.0, 0.0, 0.0)

    @pytest.mark.parametrize("bad", [float("nan"), float("inf")])
    def test_rejects_non_finite(self, bad):
        with pytest.raises(ValueError):
            HsvColor(bad, 0, 0)
        with pytest.raises(ValueError):
            HsvColor(0, bad, 0)

    def test_frozen(self):
        with pytest.raises(AttributeError):
            BLACK.hue = 5.0


class TestColorAdjustment:
    def test_defaults_to_noop(self):
        adj = ColorAdjustment()
        assert (adj.hue, adj.saturation, adj.brightness) == (None, None, None)
        assert apply_adjustment(HsvColor(12, 0.3, 0.4), adj) == HsvColor(12, 0.3, 0.4)

    @pytest.mark.parametrize("bad", [1.0001, -1.5, float("nan")])
    def test_rejects_out_of_range_amounts(self, bad):
        with pytest.raises(ValueError):
            ColorAdjustment(saturation=bad)
        with pytest.raises(ValueError):
            ColorAdjustment(brightness=bad)

    def test_hue_shift_any_finite(self):
        ColorAdjustment(hue=-7200.0)
        with pytest.raises(ValueError):
            ColorAdjustment(hue=float("inf"))


class TestShiftChannel:
    def test_identity_and_endpoints(self):
        assert shift_channel(0.37, 0.0) == 0.37
        assert shift_channel(0.37, 1.0) == 1.0
        assert shift_channel(0.37, -1.0) == 0.0
        assert shift_channel(0.0, 0.5) == 0.5
        assert shift_channel(1.0, -0.5) == 0.5

    @given(v=unit, a=amount)
    @settings(max_examples=300, deadline=None)
    def test_stays_in_unit_interval(self, v, a):
        assert 0.0 <= shift_channel(v, a) <= 1.0

    @given(v=unit, a=st.floats(0.0, 1.0, allow_nan=False))
    @settings(max_examples=200, deadline=None)
    def test_positive_never_decreases(self, v, a):
        assert shift_channel(v, a) >= v

    @given(v=unit, a=st.floats(-1.0, 0.0, allow_nan=False))
    @settings(max_examples=200, deadline=None)
    def test_negative_never_increases(self, v, a):
        assert shift_channel(v, a) <= v


class TestApplyAdjustment:
    def test_hue_adds_and_wraps(self):
        c = apply_adjustment(HsvColor(350, 0.5, 0.5), ColorAdjustment(hue=20))
        assert c.hue == 10.0

    def test_composition_order_matters(self):
        base = HsvColor(0, 0.5, 0.5)
        up_then_down = apply_adjustment(
            apply_adjustment(base, ColorAdjustment(brightness=0.5)),
            ColorAdjustment(brightness=-0.5),
        )
        down_then_up = apply_adjustment(
            apply_adjustment(base, ColorAdjustment(brightness=-0.5)),
            ColorAdjustment(brightness=0.5),
        )
        assert up_then_down.brightness == 0.375
        assert down_then_up.brightness == 0.625

    def test_untouched_channels_survive(self):
        c = apply_adjustment(HsvColor(123, 0.4, 0.6), ColorAdjustment(saturation=0.5))
        assert c.hue == 123.0
        assert c.brightness == 0.6
        assert c.saturation == 0.7


CORNERS = [
    (HsvColor(0, 1, 1), (1.0, 0.0, 0.0)),  # red
    (HsvColor(60, 1, 1), (1.0, 1.0, 0.0)),  # yellow
    (HsvColor(120, 1, 1), (0.0, 1.0, 0.0)),  # green
    (HsvColor(180, 1, 1), (0.0, 1.0, 1.0)),  # cyan
    (HsvColor(240, 1, 1), (0.0, 0.0, 1.0)),  # blue
    (HsvColor(300, 1, 1), (1.0, 0.0, 1.0)),  # magenta
]


class TestHsvToRgb:
    @pytest.mark.parametrize("color,expected", CORNERS)
    def test_corners_exact(self, color, expected):
        got = hsv_to_rgb(color)
        assert (got.r, got.g, got.b) == expected

    def test_grays_ignore_hue(self):
        for hue in (0, 90, 215, 359):
            got = hsv_to_rgb(HsvColor(hue, 0.0, 0.42))
            assert (got.r, got.g, got.b) == (0.42, 0.42, 0.42)

    @given(h=st.floats(0, 359.999, allow_nan=False), s=unit, v=unit)
    @settings(max_examples=300, deadline=None)
    def test_matches_colorsys(self, h, s, v):
        got = hsv_to_rgb(HsvColor(h, s, v))
        ref = hsv_bytes(h, s, v)
        # colorsys scales h/360*6 where we use h/60; only ulp drift allowed
        assert got.r == pytest.approx(ref[0], abs=1e-9)
        assert got.g == pytest.approx(ref[1], abs=1e-9)
        assert got.b == pytest.approx(ref[2], abs=1e-9)

    def test_array_agrees_with_scalar_bitwise(self):
        rng = np.random.default_rng(7)
        h = rng.uniform(0, 360, 500)
        s = rng.uniform(0, 1, 500)
        v = rng.uniform(0, 1, 500)
        s[::7] = 0.0  # exercise the gray shortcut
        out = hsv_to_rgb_array(h, s, v)
        assert out.shape == (500, 3)
        for i in range(500):
            ref = hsv_to_rgb(HsvColor(h[i], s[i], v[i]))
            assert out[i, 0] == ref.r
            assert out[i, 1] == ref.g
            assert out[i, 2] == ref.b

    def test_to_bytes_rounds_half_up(self):
        assert RgbColor(1.0, 0.0, 0.5).to_bytes() == (255, 0, 128)


class TestRamps:
    def test_up_endpoints(self):
        assert escape_ramp_up(1, 100) == 0.0
        assert escape_ramp_up(100, 100) == 1.0

    def test_down_endpoints(self):
        assert escape_ramp_down(1, 100) == 1.0
        assert escape_ramp_down(100, 100) == 0.0
        assert escape_ramp_down(1, 100, scale=0.9) == 0.9

    def test_clamps_out_of_range_counts(self):
        assert escape_ramp_up(0, 10) == 0.0
        assert escape_ramp_up(25, 10) == 1.0
        assert escape_ramp_down(0, 10) == 1.0
        assert escape_ramp_down(99, 10) == 0.0

    def test_rejects_degenerate_budget(self):
        with pytest.raises(ValueError):
            escape_ramp_up(1, 1)
        with pytest.raises(ValueError):
            escape_ramp_down(1, 1)

    @given(n=st.integers(1, 400), cap=st.integers(2, 400))
    @settings(max_examples=300, deadline=None)
    def test_up_down_sum_to_one(self, n, cap):
        """(n-1)/(N-1) and 1 + (1-n)/(N-1) are exact complements in IEEE
        arithmetic for integer inputs; no tolerance needed."""
        if n > cap:
            n = cap
        assert escape_ramp_up(n, cap) + escape_ramp_down(n, cap) == 1.0

    def test_down_matches_written_out_form(self):
        # the scenes spell it scale + scale*(1-n)/(N-1); keep bit parity
        for n in range(1, 301):
            assert escape_ramp_down(n, 300, 0.9) == min(
                1.0, max(0.0, 0.9 + (0.9 * (1.0 - n)) / (300 - 1))
            )
