"""Data-parallel execution of emission loop nests.

A scene like the gallery's spends essentially all its time in a loop nest
that sweeps a pixel grid, runs a tail-recursive escape counter per point and
emits one square per iteration.  Interpreting that per lane in Python costs
minutes; this module runs whole nests as numpy lane arrays instead.

The contract with evaluate.py is strict: for any loop this module accepts,
results (primitive order, values, errors, rand draws) are bit-identical to
the scalar walk.  Anything it cannot prove safe it declines, and the scalar
path runs the loop.  Accepted nests:

  * no shape calls, no FILL, and no per-iteration loop adjustments anywhere;
  * at most one nested loop per level, as the last statement of the body;
  * inner loop counts independent of names bound inside the nest;
  * no rand() inside functions reachable from the body (the tail-call
    executor compresses lanes, which would break draw attribution).

Within a nest: binds become lane arrays, if-statements become masks, a
directly self-recursive function in tail position becomes a masked while
loop with lane compression, and rand() uses per-lane counter streams that
reproduce the scalar draw-for-draw.

Lane order: expansion is outer-major (np.repeat), so array position is
painter order; emissions sort by (lane position, site document rank).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..errors import EvalError
from ..scene import ast
from . import rng
from .primitives import KIND_SQUARE
from .transform import Transform2D

# Below this many total lanes the scalar walk is cheaper than array setup.
VECTOR_MIN_LANES = 256

# Rows are processed in chunks bounding peak memory (about 60 float64 arrays
# of this many lanes in flight during a tail loop).
MAX_LANES_PER_CHUNK = 1 << 18


# --- plan ------------------------------------------------------------------

@dataclass
class _Level:
    var: str | None
    count: ast.Expr
    pos: ast.Pos
    body: tuple[ast.Stmt, ...]  # without the trailing nested loop
    nested: "object | None"


@dataclass
class _Plan:
    levels: list[_Level]
    site_rank: dict[int, int] = field(default_factory=dict)


def _body_exprs(stmts):
    """Every expression evaluated while executing stmts (document order)."""
    for st in stmts:
        if isinstance(st, ast.Bind):
            yield st.value
        elif isinstance(st, (ast.Square, ast.Fill)):
            for adj in st.adjustments:
                yield from adj.args
        elif isinstance(st, ast.IfStmt):
            yield st.test
            yield from _body_exprs(st.then_body)
            yield from _body_exprs(st.else_body)
        elif isinstance(st, ast.Loop):
            yield from _body_exprs(st.body)
        elif isinstance(st, ast.ShapeCall):
            yield from st.args
            for adj in st.adjustments:
                yield from adj.args


def _bind_names(stmts) -> set[str]:
    out = set()
    for st in stmts:
        if isinstance(st, ast.Bind):
            out.add(st.name)
        elif isinstance(st, ast.IfStmt):
            out |= _bind_names(st.then_body)
            out |= _bind_names(st.else_body)
    return out


def _level_stmts_ok(stmts) -> bool:
    """Only binds, squares and ifs (recursively) are vector-safe statements."""
    for st in stmts:
        if isinstance(st, (ast.Bind, ast.Square)):
            continue
        if isinstance(st, ast.IfStmt):
            if not (_level_stmts_ok(st.then_body) and _level_stmts_ok(st.else_body)):
                return False
            continue
        return False
    return True


def _functions_use_rand(exprs, functions) -> bool:
    """True if any function transitively reachable from exprs contains rand."""
    seen: set[str] = set()
    work: list[str] = []
    for e in exprs:
        for node in ast.walk_exprs(e):
            if isinstance(node, ast.FuncCall) and node.name not in seen:
                seen.add(node.name)
                work.append(node.name)
    while work:
        fn = functions.get(work.pop())
        if fn is None:
            continue
        for node in ast.walk_exprs(fn.body):
            if isinstance(node, ast.Rand):
                return True
            if isinstance(node, ast.FuncCall) and node.name not in seen:
                seen.add(node.name)
                work.append(node.name)
    return False


def _analyze(loop: ast.Loop, functions) -> _Plan | None:
    levels: list[_Level] = []
    node = loop
    while True:
        if node.adjustments:
            return None
        body = node.body
        nested = None
        if body and isinstance(body[-1], ast.Loop):
            nested = body[-1]
            body = body[:-1]
        if not _level_stmts_ok(body):
            return None
        levels.append(_Level(node.var, node.count, node.pos, body, nested))
        if nested is None:
            break
        node = nested

    # Inner counts must not depend on anything bound inside the nest; they
    # are evaluated once, scalar, in the enclosing scope.
    bound: set[str] = set()
    for i, lv in enumerate(levels):
        if i > 0 and (ast.free_names(lv.count) & bound):
            return None
        if lv.var is not None:
            bound.add(lv.var)
        bound |= _bind_names(lv.body)

    # Counts are pre-evaluated before committing to the vector path; a rand
    # draw there would be taken again by the scalar fallback, so refuse.
    count_exprs = [lv.count for lv in levels]
    if any(isinstance(n, ast.Rand) for e in count_exprs for n in ast.walk_exprs(e)):
        return None
    if _functions_use_rand(count_exprs, functions):
        return None

    all_exprs = [e for lv in levels for e in _body_exprs(lv.body)]
    if _functions_use_rand(all_exprs, functions):
        return None

    plan = _Plan(levels)
    rank = 0

    def number_sites(stmts):
        nonlocal rank
        for st in stmts:
            if isinstance(st, ast.Square):
                plan.site_rank[id(st)] = rank
                rank += 1
            elif isinstance(st, ast.IfStmt):
                number_sites(st.then_body)
                number_sites(st.else_body)

    for lv in levels:
        number_sites(lv.body)
    return plan


def _get_plan(ev, loop: ast.Loop) -> _Plan | None:
    key = id(loop)
    if key not in ev._vec_plans:
        ev._vec_plans[key] = _analyze(loop, ev.functions)
    return ev._vec_plans[key]


# --- lane machinery --------------------------------------------------------

def _mask_and(m, c):
    if m is None:
        return c
    return m & c


def _mask_any(m) -> bool:
    if m is None:
        return True
    return bool(m.any())


def _truthy(x):
    """Python bool for scalars, bool array for lanes."""
    if isinstance(x, np.ndarray):
        return x != 0.0
    return x != 0.0


class _Names:
    """Name lookup for vector evaluation: local dict, then a fallback."""

    __slots__ = ("vars", "fallback")

    def __init__(self, vars_: dict, fallback):
        self.vars = vars_
        self.fallback = fallback

    def lookup(self, name: str, pos):
        v = self.vars.get(name)
        if v is None and name not in self.vars:
            return self.fallback(name, pos)
        return v


@dataclass
class _LevelState:
    level: int
    positions: np.ndarray  # absolute mixed-radix stage index per lane
    env: dict
    hashes: np.ndarray | None = None
    counters: np.ndarray | None = None


class _NestRun:
    """One contiguous range of outer rows, executed independently."""

    def __init__(self, ev, plan, counts, frame, scalar_env, base_ordinal, row_lo, row_hi):
        self.ev = ev
        self.plan = plan
        self.counts = counts
        self.frame = frame
        self.scalar_env = scalar_env
        self.base_ordinal = base_ordinal
        self.row_lo = row_lo
        self.row_hi = row_hi
        self.strides = [
            math.prod(counts[i + 1 :]) for i in range(len(counts))
        ]
        self.emissions: list[tuple[int, np.ndarray, np.ndarray, np.ndarray]] = []
        self.steps = 0
        self.call_depth = 0
        self.body_names = _Names({}, self._outer_lookup)

    # scalar fallback: enclosing locals, shape params, globals
    def _outer_lookup(self, name, pos):
        return self.ev.lookup_name(name, self.scalar_env, pos)

    def _const_lookup(self, name, pos):
        v = self.ev.consts.get(name)
        if v is None and name not in self.ev.consts:
            raise self.ev.error(f"unknown name '{name}'", pos)
        return v

    def run(self):
        lv0 = self.plan.levels[0]
        positions = np.arange(self.row_lo, self.row_hi, dtype=np.int64)
        env = {}
        if lv0.var is not None:
            env[lv0.var] = positions.astype(np.float64)
        state = _LevelState(0, positions, env)
        with np.errstate(all="ignore"):
            self.exec_level(state)

    # -- level walk --------------------------------------------------------

    def exec_level(self, state: _LevelState):
        lv = self.plan.levels[state.level]
        self.body_names.vars = state.env
        self.exec_stmts(lv.body, state, None)
        if lv.nested is not None and state.positions.size:
            n = self.counts[state.level + 1]
            if n > 0:
                self.exec_level(self._expand(state, n))

    def _expand(self, state: _LevelState, n: int) -> _LevelState:
        reps = state.positions.size
        positions = np.repeat(state.positions * n, n) + np.tile(
            np.arange(n, dtype=np.int64), reps
        )
        env = {
            k: (np.repeat(v, n) if isinstance(v, np.ndarray) else v)
            for k, v in state.env.items()
        }
        nxt = self.plan.levels[state.level + 1]
        if nxt.var is not None:
            env[nxt.var] = np.tile(np.arange(n, dtype=np.float64), reps)
        return _LevelState(state.level + 1, positions, env)

    def exec_stmts(self, stmts, state: _LevelState, mask):
        # Binds land in state.env and stay visible for the rest of the
        # level, nested loop included, mirroring the scalar block scope.
        for st in stmts:
            if isinstance(st, ast.Bind):
                state.env[st.name] = self.eval(st.value, self.body_names, state, mask)
            elif isinstance(st, ast.Square):
                self.emit(st, state, mask)
            elif isinstance(st, ast.IfStmt):
                c = _truthy(self.eval(st.test, self.body_names, state, mask))
                if isinstance(c, np.ndarray):
                    m1 = _mask_and(mask, c)
                    if m1.any():
                        self._exec_branch(st.then_body, state, m1)
                    m2 = _mask_and(mask, ~c)
                    if m2.any():
                        self._exec_branch(st.else_body, state, m2)
                elif c:
                    self._exec_branch(st.then_body, state, mask)
                else:
                    self._exec_branch(st.else_body, state, mask)
            else:  # pragma: no cover - plan admits nothing else
                raise TypeError(f"unplanned statement {st!r}")

    def _exec_branch(self, stmts, state: _LevelState, mask):
        # An if-branch is its own block: binds inside must not leak out.
        saved = dict(state.env)
        try:
            self.exec_stmts(stmts, state, mask)
        finally:
            state.env.clear()
            state.env.update(saved)

    # -- emission ----------------------------------------------------------

    def emit(self, sq: ast.Square, state: _LevelState, mask):
        lanes = state.positions.size
        t = self.frame.transform
        a, b, c, d, e, f = t.as_tuple()
        col = self.frame.color
        h, s, v = col.hue, col.saturation, col.brightness

        for adj in sq.adjustments:
            vals = [self.eval(x, self.body_names, state, mask) for x in adj.args]
            for x in vals:
                self._check_finite(x, mask, adj)
            kind = adj.kind
            if kind == "x":
                e = a * vals[0] + e
                f = b * vals[0] + f
            elif kind == "y":
                e = c * vals[0] + e
                f = d * vals[0] + f
            elif kind == "r":
                # Per-lane libm calls: numpy's SIMD cos/sin can differ from
                # math.cos by an ulp, which would break scalar parity.
                if isinstance(vals[0], np.ndarray):
                    cos = np.empty(vals[0].size)
                    sin = np.empty(vals[0].size)
                    for i, x in enumerate(vals[0]):
                        r_ = math.radians(float(x))
                        cos[i] = math.cos(r_)
                        sin[i] = math.sin(r_)
                else:
                    r_ = math.radians(vals[0])
                    cos = math.cos(r_)
                    sin = math.sin(r_)
                a, b, c, d = (
                    a * cos + c * sin,
                    b * cos + d * sin,
                    a * (-sin) + c * cos,
                    b * (-sin) + d * cos,
                )
            elif kind == "size":
                w = vals[0]
                hh = vals[1] if len(vals) == 2 else vals[0]
                a = a * w
                b = b * w
                c = c * hh
                d = d * hh
            elif kind == "h":
                h = (h + vals[0]) % 360.0
            elif kind == "sat":
                self._check_unit(vals[0], mask, adj)
                s = _shift_channel_vec(s, vals[0])
            elif kind == "b":
                self._check_unit(vals[0], mask, adj)
                v = _shift_channel_vec(v, vals[0])

        det = a * d - b * c
        keep = det != 0.0
        if isinstance(keep, np.ndarray):
            keep = _mask_and(mask, keep)
        elif keep:
            keep = mask
        else:
            return
        if keep is None:
            sel = slice(None)
            count = lanes
        else:
            if not keep.any():
                return
            sel = keep
            count = int(keep.sum())

        frames = np.empty((count, 6), dtype=np.float64)
        for i, comp in enumerate((a, b, c, d, e, f)):
            frames[:, i] = _lane_view(comp, sel, lanes)
        colors = np.empty((count, 3), dtype=np.float64)
        for i, comp in enumerate((h, s, v)):
            colors[:, i] = _lane_view(comp, sel, lanes)

        stride = self.strides[state.level]
        final_pos = state.positions[sel] * stride
        self.emissions.append((self.plan.site_rank[id(sq)], final_pos, frames, colors))

    def _check_finite(self, x, mask, adj):
        if isinstance(x, np.ndarray):
            bad = ~np.isfinite(x)
            bad = _mask_and(mask, bad)
            ok = not bad.any()
        else:
            ok = math.isfinite(x) or not _mask_any(mask)
        if not ok:
            raise self.ev.error(
                f"adjustment '{adj.kind}' must be finite", adj.pos
            )

    def _check_unit(self, x, mask, adj):
        if isinstance(x, np.ndarray):
            bad = (x < -1.0) | (x > 1.0)
            bad = _mask_and(mask, bad)
            ok = not bad.any()
        else:
            ok = -1.0 <= x <= 1.0 or not _mask_any(mask)
        if not ok:
            raise self.ev.error(
                f"adjustment '{adj.kind}' must be in [-1, 1]", adj.pos
            )

    # -- expressions -------------------------------------------------------

    def eval(self, e, names: _Names, state: _LevelState, mask):
        if isinstance(e, ast.Num):
            return e.value
        if isinstance(e, ast.Name):
            return names.lookup(e.ident, e.pos)
        if isinstance(e, ast.Unary):
            return -self.eval(e.operand, names, state, mask)
        if isinstance(e, ast.Binary):
            return self._eval_binary(e, names, state, mask)
        if isinstance(e, ast.Cond):
            c = _truthy(self.eval(e.test, names, state, mask))
            if not isinstance(c, np.ndarray):
                branch = e.if_true if c else e.if_false
                return self.eval(branch, names, state, mask)
            a = self.eval(e.if_true, names, state, _mask_and(mask, c))
            b = self.eval(e.if_false, names, state, _mask_and(mask, ~c))
            return np.where(c, a, b)
        if isinstance(e, ast.Rand):
            return self._eval_rand(e, names, state, mask)
        if isinstance(e, ast.FuncCall):
            fn = self.ev.functions[e.name]
            args = [self.eval(a, names, state, mask) for a in e.args]
            if _is_self_recursive(fn):
                return self.exec_tail(fn, args, state, mask, e.pos)
            self.call_depth += 1
            if self.call_depth > self.ev.limits.max_call_depth:
                raise self.ev.limit_error(
                    f"call depth exceeded ({self.ev.limits.max_call_depth})", e.pos
                )
            try:
                inner = _Names(dict(zip(fn.params, args)), self._const_lookup)
                return self.eval(fn.body, inner, state, mask)
            finally:
                self.call_depth -= 1
        raise TypeError(f"unknown expression {e!r}")  # pragma: no cover

    def _eval_binary(self, e, names, state, mask):
        op = e.op
        if op == "&&":
            lt = _truthy(self.eval(e.left, names, state, mask))
            if not isinstance(lt, np.ndarray):
                if not lt:
                    return 0.0
                rt = _truthy(self.eval(e.right, names, state, mask))
                return _bool_to_float(rt)
            rt = _truthy(self.eval(e.right, names, state, _mask_and(mask, lt)))
            return _bool_to_float(lt & rt)
        if op == "||":
            lt = _truthy(self.eval(e.left, names, state, mask))
            if not isinstance(lt, np.ndarray):
                if lt:
                    return 1.0
                rt = _truthy(self.eval(e.right, names, state, mask))
                return _bool_to_float(rt)
            rt = _truthy(self.eval(e.right, names, state, _mask_and(mask, ~lt)))
            return _bool_to_float(lt | rt)

        l = self.eval(e.left, names, state, mask)
        r = self.eval(e.right, names, state, mask)
        scalar = not isinstance(l, np.ndarray) and not isinstance(r, np.ndarray)
        if op == "+":
            return l + r
        if op == "-":
            return l - r
        if op == "*":
            return l * r
        if op == "/":
            if scalar:
                if r == 0.0 and _mask_any(mask):
                    raise self.ev.error("division by zero", e.pos)
                if r == 0.0:
                    return 0.0  # fully masked out; value is never read
                return l / r
            zero = _mask_and(mask, np.broadcast_to(np.asarray(r == 0.0), _lanes_shape(l, r)))
            if zero.any():
                raise self.ev.error("division by zero", e.pos)
            return np.divide(l, r)
        if scalar:
            if op == "<":
                return 1.0 if l < r else 0.0
            if op == "<=":
                return 1.0 if l <= r else 0.0
            if op == ">":
                return 1.0 if l > r else 0.0
            if op == ">=":
                return 1.0 if l >= r else 0.0
            if op == "==":
                return 1.0 if l == r else 0.0
            if op == "!=":
                return 1.0 if l != r else 0.0
        else:
            if op == "<":
                return _bool_to_float(np.less(l, r))
            if op == "<=":
                return _bool_to_float(np.less_equal(l, r))
            if op == ">":
                return _bool_to_float(np.greater(l, r))
            if op == ">=":
                return _bool_to_float(np.greater_equal(l, r))
            if op == "==":
                return _bool_to_float(np.equal(l, r))
            if op == "!=":
                return _bool_to_float(np.not_equal(l, r))
        raise TypeError(f"unknown operator {op!r}")  # pragma: no cover

    def _eval_rand(self, e, names, state: _LevelState, mask):
        lo = self.eval(e.low, names, state, mask)
        hi = self.eval(e.high, names, state, mask)
        self._check_rand_bounds(lo, hi, mask, e.pos)
        self._ensure_hashes(state)
        idx = state.counters
        values = rng.draw_unit_array(state.hashes, idx)
        if mask is None:
            state.counters = idx + 1
        else:
            bumped = idx.copy()
            bumped[mask] += 1
            state.counters = bumped
        out = lo + values * (hi - lo)
        if self.ev.trace is not None:
            self._trace_draws(e.pos, lo, hi, out, mask)
        return out

    def _check_rand_bounds(self, lo, hi, mask, pos):
        def sel(x):
            if isinstance(x, np.ndarray):
                return x if mask is None else x[mask]
            return x

        lo_s, hi_s = sel(lo), sel(hi)
        finite = np.all(np.isfinite(lo_s)) and np.all(np.isfinite(hi_s))
        if not finite and _mask_any(mask):
            raise self.ev.error("rand bounds must be finite", pos)
        if np.any(np.asarray(lo_s) > np.asarray(hi_s)) and _mask_any(mask):
            raise self.ev.error("rand bounds out of order", pos)

    def _trace_draws(self, pos, lo, hi, values, mask):
        lanes = np.arange(values.size) if mask is None else np.nonzero(mask)[0]
        for i in lanes:
            lo_i = float(lo[i]) if isinstance(lo, np.ndarray) else float(lo)
            hi_i = float(hi[i]) if isinstance(hi, np.ndarray) else float(hi)
            self.ev.trace(pos, lo_i, hi_i, float(values[i]))

    def _ensure_hashes(self, state: _LevelState):
        if state.hashes is not None:
            return
        # Rebuild the frame-hash chain from the mixed-radix stage position:
        # peel inner indices, then rehash root-down.
        p = state.positions
        digits = []
        for j in range(state.level, 0, -1):
            digits.append(p % self.counts[j])
            p = p // self.counts[j]
        h = rng.child_hash_array(
            np.uint64(self.frame.hash), (p + self.base_ordinal).astype(np.uint64)
        )
        for k in reversed(digits):
            h = rng.child_hash_array(h, k.astype(np.uint64))
        state.hashes = h
        state.counters = np.zeros(state.positions.size, dtype=np.int64)

    # -- tail-recursive functions -----------------------------------------

    def exec_tail(self, fn, args, state: _LevelState, mask, pos):
        # Lane count comes from the arguments, not the level: a nested tail
        # executor runs over the caller's (possibly compressed) arrays.
        arrs = [a for a in args if isinstance(a, np.ndarray)]
        if arrs:
            lanes = arrs[0].size
        elif isinstance(mask, np.ndarray):
            lanes = mask.size
        else:
            lanes = 1
        if mask is None:
            act = np.arange(lanes, dtype=np.int64)
        else:
            act = np.nonzero(mask)[0]
        result = np.full(lanes, np.nan)
        if act.size == 0:
            return result

        cur = []
        for a in args:
            if isinstance(a, np.ndarray):
                cur.append(np.ascontiguousarray(a[act], dtype=np.float64))
            else:
                cur.append(np.full(act.size, float(a)))
        res_pos = act
        params = list(fn.params)
        budget = self.ev.limits
        rounds = 0

        while res_pos.size:
            names = _Names(dict(zip(params, cur)), self._const_lookup)
            alive = res_pos.size
            cont = np.zeros(alive, dtype=bool)
            nxt = [np.full(alive, np.nan) for _ in params]

            def walk(e, m):
                # m: None or bool array over the alive set
                while isinstance(e, ast.Cond):
                    c = _truthy(self.eval(e.test, names, state, m))
                    if not isinstance(c, np.ndarray):
                        e = e.if_true if c else e.if_false
                        continue
                    m1 = _mask_and(m, c)
                    if m1.any():
                        walk(e.if_true, m1)
                    m2 = _mask_and(m, ~c)
                    if m2.any():
                        walk(e.if_false, m2)
                    return
                if isinstance(e, ast.FuncCall) and e.name == fn.name:
                    for i, a in enumerate(e.args):
                        v = self.eval(a, names, state, m)
                        _masked_store(nxt[i], m, v)
                    if m is None:
                        cont[:] = True
                    else:
                        np.logical_or(cont, m, out=cont)
                    return
                v = self.eval(e, names, state, m)
                if m is None:
                    result[res_pos] = v
                else:
                    result[res_pos[m]] = _lane_view(v, m, alive)

            walk(fn.body, None)
            rounds += 1
            if rounds > budget.max_tail_steps:
                raise self.ev.limit_error(
                    f"recursion in '{fn.name}' exceeded {budget.max_tail_steps} steps",
                    pos,
                )
            jumps = int(cont.sum())
            if jumps == 0:
                break
            self.steps += jumps
            if self.ev.steps_executed + self.steps > budget.max_steps_total:
                raise self.ev.limit_error(
                    f"recursion step budget exceeded ({budget.max_steps_total})", pos
                )
            if jumps == alive:
                cur = nxt
            else:
                cur = [a[cont] for a in nxt]
                res_pos = res_pos[cont]

        return result


def _lanes_shape(l, r):
    if isinstance(l, np.ndarray):
        return l.shape
    return np.asarray(r).shape


def _bool_to_float(x):
    if isinstance(x, np.ndarray):
        return x.astype(np.float64)
    return 1.0 if x else 0.0


def _shift_channel_vec(value, amount):
    """Vector twin of color.shift_channel with the constructor's clamping."""
    if not isinstance(amount, np.ndarray):
        if amount >= 0.0:
            out = value + amount * (1.0 - value)
        else:
            out = value * (1.0 + amount)
        return min(1.0, max(0.0, out))
    out = np.where(amount >= 0.0, value + amount * (1.0 - value), value * (1.0 + amount))
    return np.clip(out, 0.0, 1.0)


def _lane_view(x, sel, lanes: int):
    """Masked lanes of x, tolerating scalars and single-lane broadcasts."""
    if isinstance(x, np.ndarray) and x.size == lanes:
        return x[sel]
    return x


def _masked_store(dest: np.ndarray, m, v):
    if m is None:
        dest[:] = v
    else:
        dest[m] = _lane_view(v, m, dest.size)


_SELF_RECURSIVE_CACHE: dict[int, bool] = {}


def _is_self_recursive(fn: ast.FuncDef) -> bool:
    key = id(fn)
    hit = _SELF_RECURSIVE_CACHE.get(key)
    if hit is None:
        hit = any(
            isinstance(n, ast.FuncCall) and n.name == fn.name
            for n in ast.walk_exprs(fn.body)
        )
        _SELF_RECURSIVE_CACHE[key] = hit
    return hit


# --- entry -----------------------------------------------------------------

def try_vector_loop(ev, loop: ast.Loop, env, frame) -> bool:
    """Run loop on the vector path if possible; False means use the scalar walk."""
    plan = _get_plan(ev, loop)
    if plan is None:
        return False

    counts: list[int] = []
    for lv in plan.levels:
        n = ev.eval_expr(lv.count, env, frame)
        if not math.isfinite(n):
            raise ev.error(f"loop count must be finite, got {n!r}", lv.pos)
        if n < 0:
            raise ev.error(f"loop count must be >= 0, got {n!r}", lv.pos)
        counts.append(int(n))

    # Total lanes at the widest stage decides whether arrays pay off.
    widest = 0
    prefix = 1
    for n in counts:
        prefix *= n
        widest = max(widest, prefix)
    if widest < VECTOR_MIN_LANES:
        return False

    base = frame.child_count
    frame.child_count += counts[0]
    n0 = counts[0]

    workers = 1 if ev.trace is not None else ev.workers
    lanes_per_row = max(1, widest // max(n0, 1))
    rows_per_chunk = max(1, MAX_LANES_PER_CHUNK // lanes_per_row)
    n_chunks = max(min(workers, n0), (n0 + rows_per_chunk - 1) // rows_per_chunk)
    n_chunks = min(n_chunks, n0)

    bounds = [round(i * n0 / n_chunks) for i in range(n_chunks + 1)]
    runs = [
        _NestRun(ev, plan, counts, frame, env, base, bounds[i], bounds[i + 1])
        for i in range(n_chunks)
        if bounds[i] < bounds[i + 1]
    ]

    if workers > 1 and len(runs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(r.run) for r in runs]
            for fut in futures:
                fut.result()
    else:
        for r in runs:
            r.run()

    ev.add_steps(sum(r.steps for r in runs), loop.pos)

    emissions = [em for r in runs for em in r.emissions]
    if emissions:
        ranks = np.concatenate(
            [np.full(em[1].size, em[0], dtype=np.int64) for em in emissions]
        )
        pos = np.concatenate([em[1] for em in emissions])
        frames = np.concatenate([em[2] for em in emissions])
        colors = np.concatenate([em[3] for em in emissions])
        order = np.lexsort((ranks, pos))
        kinds = np.full(order.size, KIND_SQUARE, dtype=np.uint8)
        ev.builder.append_arrays(kinds, frames[order], colors[order])
    return True
