import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from juliart.dynamics import (
    EscapeBudget,
    Viewport,
    cell_size,
    escape_count_grid,
    escape_steps,
    in_set_count,
    index_to_coord,
    quad_step,
)
from oracles import escape_steps_loop

coord = st.floats(min_value=-2.0, max_value=2.0, allow_nan=False)


class TestViewport:
    def test_width_height(self):
        v = Viewport(-1.0, 3.0, 2.0, 2.5)
        assert v.width == 4.0
        assert v.height == 0.5

    def test_from_center(self):
        v = Viewport.from_center(0.21, -0.445714, 0.84)
        # same float expressions the battle preset uses
        assert v.left == 0.21 - 0.84 / 2
        assert v.right == 0.21 + 0.84 / 2
        assert v.bottom == -0.445714 - 0.84 / 2
        assert v.top == -0.445714 + 0.84 / 2

    @pytest.mark.parametrize(
        "args",
        [
            (1.0, 1.0, 0.0, 1.0),  # empty width
            (2.0, 1.0, 0.0, 1.0),  # inverted
            (0.0, 1.0, 1.0, 1.0),  # empty height
            (0.0, 1.0, 2.0, 1.0),
            (float("nan"), 1.0, 0.0, 1.0),
            (0.0, float("inf"), 0.0, 1.0),
        ],
    )
    def test_rejects_degenerate(self, args):
        with pytest.raises(ValueError):
            Viewport(*args)

    def test_from_center_needs_positive_side(self):
        with pytest.raises(ValueError):
            Viewport.from_center(0.0, 0.0, 0.0)


class TestEscapeBudget:
    @pytest.mark.parametrize("bad", [0, -1, 2.0, "3", None])
    def test_rejects(self, bad):
        with pytest.raises(ValueError):
            EscapeBudget(bad)

    def test_accepts(self):
        assert EscapeBudget(1).max_steps == 1


class TestQuadStep:
    def test_componentwise_formula(self):
        z, c = complex(0.3, -0.7), complex(-1.1, 0.25)
        w = quad_step(z, c)
        assert w.real == 0.3 * 0.3 - (-0.7) * (-0.7) + -1.1
        assert w.imag == 2.0 * 0.3 * -0.7 + 0.25


class TestEscapeSteps:
    def test_origin_never_escapes(self):
        assert escape_steps(0j, 0j, EscapeBudget(100)) == 100

    def test_boundary_escapes_immediately(self):
        # |z|^2 == 4 exactly fails `< 4`, so it counts as escaped at k=0
        assert escape_steps(2 + 0j, 0j, 50) == 0
        assert escape_steps(complex(0, -2), 0j, 50) == 0

    def test_just_inside_boundary(self):
        z = complex(math.nextafter(2.0, 0.0), 0.0)
        assert escape_steps(z, 0j, 50) >= 1

    def test_nan_start_escapes_at_zero(self):
        assert escape_steps(complex(float("nan"), 0), 0j, 10) == 0

    def test_nan_c_escapes_after_one_step(self):
        # step 0 passes (|0| < 4); z_1 is NaN and fails the k=1 check
        assert escape_steps(0j, complex(float("nan"), 0), 10) == 1

    def test_overflow_to_inf_counts_as_escaped(self):
        assert escape_steps(complex(1e200, 0), 0j, 10) == 0

    def test_budget_one(self):
        assert escape_steps(0j, 0j, 1) == 1
        assert escape_steps(3 + 0j, 0j, 1) == 0

    @given(zr=coord, zi=coord, cr=coord, ci=coord, n=st.integers(1, 200))
    @settings(max_examples=300, deadline=None)
    def test_matches_straight_loop(self, zr, zi, cr, ci, n):
        assert escape_steps(complex(zr, zi), complex(cr, ci), n) == escape_steps_loop(
            zr, zi, cr, ci, n
        )

    @given(zr=coord, zi=coord, cr=coord, ci=coord, n1=st.integers(1, 120), n2=st.integers(1, 120))
    @settings(max_examples=200, deadline=None)
    def test_budget_truncation_law(self, zr, zi, cr, ci, n1, n2):
        """A shorter budget just clips the longer one's answer."""
        lo, hi = sorted((n1, n2))
        z, c = complex(zr, zi), complex(cr, ci)
        assert escape_steps(z, c, lo) == min(escape_steps(z, c, hi), lo)


class TestIndexToCoord:
    def test_endpoints_exact(self):
        assert index_to_coord(0, -1.4, 1.4, 1000) == -1.4
        assert index_to_coord(999, -1.4, 1.4, 1000) == 1.4
        assert index_to_coord(0, 0.01, 0.09, 7) == 0.01
        assert index_to_coord(6, 0.01, 0.09, 7) == 0.09

    def test_midpoint(self):
        assert index_to_coord(1, 0.0, 2.0, 3) == 1.0

    def test_rejects_tiny_resolution(self):
        with pytest.raises(ValueError):
            index_to_coord(0, 0.0, 1.0, 1)

    @given(
        i=st.integers(0, 99),
        lo=st.floats(-10, 10, allow_nan=False),
        span=st.floats(1e-6, 10, allow_nan=False),
    )
    @settings(max_examples=100, deadline=None)
    def test_within_interval(self, i, lo, span):
        x = index_to_coord(i, lo, lo + span, 100)
        assert lo <= x <= lo + span or math.isclose(x, lo) or math.isclose(x, lo + span)


class TestGrid:
    def test_matches_scalar_bitwise(self):
        vp = Viewport(-1.4, 1.4, -1.4, 1.4)
        c = complex(-0.381966, 0.618034)
        res, n = 16, 60
        grid = escape_count_grid(vp, res, c, EscapeBudget(n))
        assert grid.shape == (res, res)
        assert grid.dtype == np.int32
        for i in range(res):
            for j in range(res):
                z = complex(
                    index_to_coord(j, vp.left, vp.right, res),
                    index_to_coord(i, vp.bottom, vp.top, res),
                )
                assert grid[i, j] == escape_steps(z, c, n)

    def test_row_zero_is_bottom(self):
        # window straddling the escape circle: bottom row is far outside
        vp = Viewport(-0.1, 0.1, -3.0, 0.0)
        grid = escape_count_grid(vp, 8, 0j, 20)
        assert (grid[0] == 0).all()  # |z| = 3 at the bottom edge
        assert (grid[-1] == 20).all()  # y = 0 row is in the filled disk

    def test_in_set_count_consistent(self):
        vp = Viewport(-1.4, 1.4, -1.4, 1.4)
        c = complex(-0.381966, 0.618034)
        grid = escape_count_grid(vp, 64, c, 40)
        assert in_set_count(vp, 64, c, 40) == int((grid == 40).sum())

    def test_rejects_bad_budget_and_resolution(self):
        vp = Viewport(-1, 1, -1, 1)
        with pytest.raises(ValueError):
            escape_count_grid(vp, 10, 0j, 0)
        with pytest.raises(ValueError):
            escape_count_grid(vp, 1, 0j, 10)


def test_cell_size():
    vp = Viewport(0.0, 2.0, 0.0, 1.0)
    assert cell_size(vp, 3) == (1.0, 0.5)
    with pytest.raises(ValueError):
        cell_size(vp, 1)
