"""Scene evaluation: walk the AST, emit primitives.

This module is the reference semantics.  Every construct is executed the
obvious scalar way; the vectorized fast path in vector.py must agree with it
bit for bit and is consulted per loop, falling back here whenever a loop does
anything it cannot prove safe.

Execution model: a tree of frames.  Each frame carries an affine transform,
an HSV color, a 64-bit hash and two counters (children spawned, rand draws
taken).  Loop iterations and shape calls spawn child frames; their hashes
derive from the parent hash and the spawn ordinal, which is what makes
rand() reproducible no matter how evaluation is scheduled.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

from ..color import BLACK, ColorAdjustment, HsvColor, apply_adjustment
from ..errors import EvalError, RenderLimitError
from ..scene import ast, validate_program
from . import rng
from .limits import DEFAULT_LIMITS, EvalLimits
from .primitives import KIND_FILL, KIND_SQUARE, BatchBuilder, PrimitiveBatch
from .transform import IDENTITY, Transform2D

WORKERS_ENV = "JULIART_WORKERS"


@dataclass(frozen=True)
class VariationSeed:
    """A named universe of random choices.

    The tag is any string; the seed is derived from it and nothing else, so
    artworks can be referenced by tag in galleries and re-rendered exactly.
    """

    tag: str = ""

    @property
    def seed(self) -> int:
        return rng.seed_from_tag(self.tag)


def resolve_workers(workers: int | None) -> int:
    """Explicit argument beats JULIART_WORKERS beats CPU count (capped at 8)."""
    if workers is None:
        env = os.environ.get(WORKERS_ENV)
        if env:
            try:
                workers = int(env)
            except ValueError:
                raise ValueError(f"{WORKERS_ENV} must be an integer, got {env!r}")
        else:
            workers = min(os.cpu_count() or 1, 8)
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    return workers


class Frame:
    """Mutable per-activation state; cheap on purpose."""

    __slots__ = ("transform", "color", "hash", "child_count", "draw_count")

    def __init__(self, transform: Transform2D, color: HsvColor, hash_: int):
        self.transform = transform
        self.color = color
        self.hash = hash_
        self.child_count = 0
        self.draw_count = 0

    def spawn_child(self) -> "Frame":
        child = Frame(self.transform, self.color, rng.child_hash(self.hash, self.child_count))
        self.child_count += 1
        return child


class Env:
    """Lexical block scope: a dict with a parent chain."""

    __slots__ = ("vars", "parent")

    def __init__(self, parent: "Env | None", vars_: dict | None = None):
        self.parent = parent
        self.vars = vars_ if vars_ is not None else {}


_MISSING = object()


def _env_lookup(env: Env | None, name: str):
    e = env
    while e is not None:
        v = e.vars.get(name, _MISSING)
        if v is not _MISSING:
            return v
        e = e.parent
    return _MISSING


class Evaluator:
    def __init__(
        self,
        program: ast.Program,
        variation: str | VariationSeed = "",
        *,
        limits: EvalLimits = DEFAULT_LIMITS,
        workers: int | None = None,
        trace=None,
    ):
        validate_program(program)
        self.program = program
        self.functions = program.functions()
        self.shapes = program.shapes()
        self.variation = (
            variation if isinstance(variation, VariationSeed) else VariationSeed(variation)
        )
        self.limits = limits
        self.workers = resolve_workers(workers)
        self.trace = trace
        self.builder = BatchBuilder(limits.max_primitives)
        self.steps_executed = 0
        self.consts: dict[str, float] = {}
        self.shape_stack: list[str] = []
        self._depth = 0
        self._vec_plans: dict[int, object] = {}
        self.root = Frame(IDENTITY, BLACK, rng.splitmix64(self.variation.seed))

    # -- errors ------------------------------------------------------------

    def error(self, message: str, pos: ast.Pos) -> EvalError:
        return EvalError(message, pos[0] or None, pos[1] or None, shape_stack=self.shape_stack)

    def limit_error(self, message: str, pos: ast.Pos) -> RenderLimitError:
        return RenderLimitError(
            message, pos[0] or None, pos[1] or None, shape_stack=self.shape_stack
        )

    def add_steps(self, n: int, pos: ast.Pos):
        self.steps_executed += n
        if self.steps_executed > self.limits.max_steps_total:
            raise self.limit_error(
                f"recursion step budget exceeded ({self.limits.max_steps_total})", pos
            )

    # -- entry -------------------------------------------------------------

    def run(self) -> PrimitiveBatch:
        # Constants evaluate eagerly in definition order against the root
        # frame, so any rand() draws in them have a fixed schedule.
        for item in self.program.items:
            if isinstance(item, ast.ConstDef):
                self.consts[item.name] = self.eval_expr(item.value, None, self.root)
        start = self.program.start
        args = [self.eval_expr(a, None, self.root) for a in start.args]
        self.call_shape(start.name, args, (), None, self.root, start.pos)
        batch = self.builder.build()
        batch.steps_executed = self.steps_executed
        return batch

    # -- shapes and statements ----------------------------------------------

    def call_shape(self, name, arg_values, adjustments, env, frame: Frame, pos):
        shape = self.shapes[name]
        child = frame.spawn_child()
        child.transform, child.color = self.compose_adjustments(
            frame.transform, frame.color, adjustments, env, frame
        )
        self._depth += 1
        if self._depth > self.limits.max_call_depth:
            raise self.limit_error(
                f"shape call depth exceeded ({self.limits.max_call_depth})", pos
            )
        self.shape_stack.append(name)
        try:
            body_env = Env(None, dict(zip(shape.params, arg_values)))
            self.exec_block(shape.body, body_env, child)
        finally:
            self.shape_stack.pop()
            self._depth -= 1

    def exec_block(self, stmts, env: Env, frame: Frame):
        scope = Env(env)
        for st in stmts:
            self.exec_stmt(st, scope, frame)

    def exec_stmt(self, st, env: Env, frame: Frame):
        if isinstance(st, ast.Bind):
            env.vars[st.name] = self.eval_expr(st.value, env, frame)
        elif isinstance(st, ast.Square):
            t, color = self.compose_adjustments(
                frame.transform, frame.color, st.adjustments, env, frame
            )
            if t.determinant != 0.0:
                self.builder.append_one(
                    KIND_SQUARE, t.as_tuple(), (color.hue, color.saturation, color.brightness)
                )
        elif isinstance(st, ast.Fill):
            t, color = self.compose_adjustments(
                frame.transform, frame.color, st.adjustments, env, frame
            )
            self.builder.append_one(
                KIND_FILL, t.as_tuple(), (color.hue, color.saturation, color.brightness)
            )
        elif isinstance(st, ast.IfStmt):
            if _truthy(self.eval_expr(st.test, env, frame)):
                self.exec_block(st.then_body, env, frame)
            else:
                self.exec_block(st.else_body, env, frame)
        elif isinstance(st, ast.Loop):
            self.exec_loop(st, env, frame)
        elif isinstance(st, ast.ShapeCall):
            args = [self.eval_expr(a, env, frame) for a in st.args]
            self.call_shape(st.name, args, st.adjustments, env, frame, st.pos)
        else:  # pragma: no cover - parser emits nothing else
            raise TypeError(f"unknown statement {st!r}")

    def loop_count(self, loop: ast.Loop, env, frame) -> int:
        n = self.eval_expr(loop.count, env, frame)
        if not math.isfinite(n):
            raise self.error(f"loop count must be finite, got {n!r}", loop.pos)
        if n < 0:
            raise self.error(f"loop count must be >= 0, got {n!r}", loop.pos)
        return int(n)  # truncation toward zero, 2.9 runs twice

    def exec_loop(self, loop: ast.Loop, env: Env, frame: Frame):
        from . import vector  # local import: vector depends on this module

        if vector.try_vector_loop(self, loop, env, frame):
            return

        n = self.loop_count(loop, env, frame)
        # Adjustments evaluate once, on entry, then compose cumulatively:
        # iteration k runs in the enclosing frame composed with k copies.
        steps = self.eval_adjustments(loop.adjustments, env, frame)
        base = frame.child_count
        frame.child_count += n
        cur_t, cur_c = frame.transform, frame.color
        for k in range(n):
            child = Frame(cur_t, cur_c, rng.child_hash(frame.hash, base + k))
            body_env = Env(env)
            if loop.var is not None:
                body_env.vars[loop.var] = float(k)
            for st in loop.body:
                self.exec_stmt(st, body_env, child)
            if steps:
                cur_t, cur_c = self.apply_adjustment_values(cur_t, cur_c, steps)

    # -- adjustments ---------------------------------------------------------

    def eval_adjustments(self, adjustments, env, frame) -> list:
        """Evaluate adjustment argument expressions to plain floats."""
        out = []
        for adj in adjustments:
            vals = tuple(self.eval_expr(a, env, frame) for a in adj.args)
            for v in vals:
                if not math.isfinite(v):
                    raise self.error(
                        f"adjustment '{adj.kind}' must be finite, got {v!r}", adj.pos
                    )
            if adj.kind in ("sat", "b") and not -1.0 <= vals[0] <= 1.0:
                raise self.error(
                    f"adjustment '{adj.kind}' must be in [-1, 1], got {vals[0]!r}", adj.pos
                )
            out.append((adj.kind, vals))
        return out

    @staticmethod
    def apply_adjustment_values(t: Transform2D, color: HsvColor, steps: list):
        for kind, vals in steps:
            if kind == "x":
                t = t.compose(Transform2D.translation(vals[0], 0.0))
            elif kind == "y":
                t = t.compose(Transform2D.translation(0.0, vals[0]))
            elif kind == "r":
                t = t.compose(Transform2D.rotation_degrees(vals[0]))
            elif kind == "size":
                w = vals[0]
                h = vals[1] if len(vals) == 2 else vals[0]
                t = t.compose(Transform2D.scaling(w, h))
            elif kind == "h":
                color = apply_adjustment(color, ColorAdjustment(hue=vals[0]))
            elif kind == "sat":
                color = apply_adjustment(color, ColorAdjustment(saturation=vals[0]))
            elif kind == "b":
                color = apply_adjustment(color, ColorAdjustment(brightness=vals[0]))
        return t, color

    def compose_adjustments(self, t, color, adjustments, env, frame):
        if not adjustments:
            return t, color
        steps = self.eval_adjustments(adjustments, env, frame)
        return self.apply_adjustment_values(t, color, steps)

    # -- expressions ---------------------------------------------------------

    def lookup_name(self, name: str, env: Env | None, pos) -> float:
        v = _env_lookup(env, name)
        if v is not _MISSING:
            return v
        v = self.consts.get(name, _MISSING)
        if v is not _MISSING:
            return v
        raise self.error(f"unknown name '{name}'", pos)

    def eval_expr(self, e, env: Env | None, frame: Frame) -> float:
        if isinstance(e, ast.Num):
            return e.value
        if isinstance(e, ast.Name):
            return self.lookup_name(e.ident, env, e.pos)
        if isinstance(e, ast.Unary):
            return -self.eval_expr(e.operand, env, frame)
        if isinstance(e, ast.Binary):
            op = e.op
            if op == "&&":
                if not _truthy(self.eval_expr(e.left, env, frame)):
                    return 0.0
                return 1.0 if _truthy(self.eval_expr(e.right, env, frame)) else 0.0
            if op == "||":
                if _truthy(self.eval_expr(e.left, env, frame)):
                    return 1.0
                return 1.0 if _truthy(self.eval_expr(e.right, env, frame)) else 0.0
            l = self.eval_expr(e.left, env, frame)
            r = self.eval_expr(e.right, env, frame)
            if op == "+":
                return l + r
            if op == "-":
                return l - r
            if op == "*":
                return l * r
            if op == "/":
                try:
                    return l / r
                except ZeroDivisionError:
                    raise self.error("division by zero", e.pos)
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
            raise TypeError(f"unknown operator {op!r}")  # pragma: no cover
        if isinstance(e, ast.Cond):
            if _truthy(self.eval_expr(e.test, env, frame)):
                return self.eval_expr(e.if_true, env, frame)
            return self.eval_expr(e.if_false, env, frame)
        if isinstance(e, ast.Rand):
            lo = self.eval_expr(e.low, env, frame)
            hi = self.eval_expr(e.high, env, frame)
            if not (math.isfinite(lo) and math.isfinite(hi)):
                raise self.error("rand bounds must be finite", e.pos)
            if lo > hi:
                raise self.error(f"rand bounds out of order: {lo!r} > {hi!r}", e.pos)
            j = frame.draw_count
            frame.draw_count += 1
            v = rng.draw_uniform(frame.hash, j, lo, hi)
            if self.trace is not None:
                self.trace(e.pos, lo, hi, v)
            return v
        if isinstance(e, ast.FuncCall):
            fn = self.functions[e.name]
            args = [self.eval_expr(a, env, frame) for a in e.args]
            return self.call_function(fn, args, frame, e.pos)
        raise TypeError(f"unknown expression {e!r}")  # pragma: no cover

    def call_function(self, fn: ast.FuncDef, args: list, frame: Frame, pos) -> float:
        """Apply a user function; direct self-recursion in tail position runs
        as a loop so escape-time definitions do not hit the stack."""
        self._depth += 1
        if self._depth > self.limits.max_call_depth:
            raise self.limit_error(
                f"call depth exceeded ({self.limits.max_call_depth})", pos
            )
        try:
            values = args
            local_steps = 0
            while True:
                env = Env(None, dict(zip(fn.params, values)))
                done, payload = self._tail_eval(fn, fn.body, env, frame)
                if done:
                    return payload
                values = payload
                local_steps += 1
                if local_steps > self.limits.max_tail_steps:
                    raise self.limit_error(
                        f"recursion in '{fn.name}' exceeded "
                        f"{self.limits.max_tail_steps} steps",
                        pos,
                    )
                self.add_steps(1, pos)
        finally:
            self._depth -= 1

    def _tail_eval(self, fn, e, env, frame):
        """Evaluate e, treating self-calls in tail position as jumps."""
        while isinstance(e, ast.Cond):
            e = e.if_true if _truthy(self.eval_expr(e.test, env, frame)) else e.if_false
        if isinstance(e, ast.FuncCall) and e.name == fn.name:
            return False, [self.eval_expr(a, env, frame) for a in e.args]
        return True, self.eval_expr(e, env, frame)


def _truthy(x: float) -> bool:
    return x != 0.0


def evaluate_scene(
    program: ast.Program,
    variation: str | VariationSeed = "",
    *,
    limits: EvalLimits = DEFAULT_LIMITS,
    workers: int | None = None,
    trace=None,
) -> PrimitiveBatch:
    """Run a validated program, returning its primitives in painter order.

    Identical inputs give identical batches regardless of worker count; see
    rng for why.  trace, if given, is called as trace(pos, lo, hi, value)
    for every rand draw and forces single-worker execution.
    """
    ev = Evaluator(program, variation, limits=limits, workers=workers, trace=trace)
    return ev.run()


def call_scene_function(
    program: ast.Program,
    name: str,
    args: list[float],
    variation: str | VariationSeed = "",
    *,
    limits: EvalLimits = DEFAULT_LIMITS,
) -> float:
    """Call one of the program's functions directly (scalar semantics).

    Tooling hook: lets tests and the report generator probe a scene's own
    arithmetic without rendering anything.
    """
    ev = Evaluator(program, variation, limits=limits, workers=1)
    for item in program.items:
        if isinstance(item, ast.ConstDef):
            ev.consts[item.name] = ev.eval_expr(item.value, None, ev.root)
    fn = ev.functions.get(name)
    if fn is None:
        raise EvalError(f"no function named '{name}'")
    if len(args) != len(fn.params):
        raise EvalError(
            f"function '{name}' takes {len(fn.params)} argument(s), got {len(args)}"
        )
    return ev.call_function(fn, [float(a) for a in args], ev.root, fn.pos)
