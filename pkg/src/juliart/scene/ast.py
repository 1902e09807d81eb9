"""Immutable AST for the scene language.

Nodes are frozen dataclasses built from tuples, so whole programs hash and
compare structurally.  Source positions ride along in a compare=False field:
two parses of equivalent text are equal even if whitespace moved things
around, which is what the printer round-trip tests rely on.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

Pos = tuple[int, int]  # (line, column), 1-based; (0, 0) means synthesized.

NO_POS: Pos = (0, 0)


# --- expressions -----------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: float
    pos: Pos = field(default=NO_POS, compare=False)


@dataclass(frozen=True)
class Name:
    ident: str
    pos: Pos = field(default=NO_POS, compare=False)


@dataclass(frozen=True)
class Unary:
    op: str  # only '-'
    operand: "Expr"
    pos: Pos = field(default=NO_POS, compare=False)


@dataclass(frozen=True)
class Binary:
    op: str  # one of || && < <= > >= == != + - * /
    left: "Expr"
    right: "Expr"
    pos: Pos = field(default=NO_POS, compare=False)


@dataclass(frozen=True)
class Cond:
    """Functional conditional if(test, a, b); only the taken branch evaluates."""

    test: "Expr"
    if_true: "Expr"
    if_false: "Expr"
    pos: Pos = field(default=NO_POS, compare=False)


@dataclass(frozen=True)
class Rand:
    """Uniform draw from [low, high); consumes one value of the frame stream."""

    low: "Expr"
    high: "Expr"
    pos: Pos = field(default=NO_POS, compare=False)


@dataclass(frozen=True)
class FuncCall:
    name: str
    args: tuple["Expr", ...]
    pos: Pos = field(default=NO_POS, compare=False)


Expr = Union[Num, Name, Unary, Binary, Cond, Rand, FuncCall]


# --- statements ------------------------------------------------------------

@dataclass(frozen=True)
class Adjustment:
    """One geometry/color operation inside [...]; kind is canonical.

    Kinds: x, y, r, size, h, sat, b.  The aliases (s, hue, saturation,
    brightness) are folded to these at parse time.  Only size may carry two
    argument expressions.
    """

    kind: str
    args: tuple[Expr, ...]
    pos: Pos = field(default=NO_POS, compare=False)


@dataclass(frozen=True)
class Square:
    adjustments: tuple[Adjustment, ...]
    pos: Pos = field(default=NO_POS, compare=False)


@dataclass(frozen=True)
class Fill:
    adjustments: tuple[Adjustment, ...]
    pos: Pos = field(default=NO_POS, compare=False)


@dataclass(frozen=True)
class Bind:
    """Local binding, immutable, scoped to the rest of the enclosing block."""

    name: str
    value: Expr
    pos: Pos = field(default=NO_POS, compare=False)


@dataclass(frozen=True)
class IfStmt:
    test: Expr
    then_body: tuple["Stmt", ...]
    else_body: tuple["Stmt", ...]
    pos: Pos = field(default=NO_POS, compare=False)


@dataclass(frozen=True)
class Loop:
    """loop [v =] count [adjustments] { body }.

    The adjustments accumulate between iterations: iteration k sees the
    enclosing frame composed with k copies of them.  var is None for
    anonymous counting loops.
    """

    var: str | None
    count: Expr
    adjustments: tuple[Adjustment, ...]
    body: tuple["Stmt", ...]
    pos: Pos = field(default=NO_POS, compare=False)


@dataclass(frozen=True)
class ShapeCall:
    name: str
    args: tuple[Expr, ...]
    adjustments: tuple[Adjustment, ...]
    pos: Pos = field(default=NO_POS, compare=False)


Stmt = Union[Square, Fill, Bind, IfStmt, Loop, ShapeCall]


# --- top level -------------------------------------------------------------

@dataclass(frozen=True)
class StartShape:
    name: str
    args: tuple[Expr, ...]
    pos: Pos = field(default=NO_POS, compare=False)


@dataclass(frozen=True)
class ConstDef:
    name: str
    value: Expr
    pos: Pos = field(default=NO_POS, compare=False)


@dataclass(frozen=True)
class FuncDef:
    name: str
    params: tuple[str, ...]
    body: Expr
    pos: Pos = field(default=NO_POS, compare=False)


@dataclass(frozen=True)
class ShapeDef:
    name: str
    params: tuple[str, ...]
    body: tuple[Stmt, ...]
    pos: Pos = field(default=NO_POS, compare=False)


Item = Union[StartShape, ConstDef, FuncDef, ShapeDef]


@dataclass(frozen=True)
class Program:
    """A whole scene file; items keep their source order for printing."""

    items: tuple[Item, ...]

    @property
    def start(self) -> StartShape | None:
        for it in self.items:
            if isinstance(it, StartShape):
                return it
        return None

    def constants(self) -> dict[str, ConstDef]:
        return {it.name: it for it in self.items if isinstance(it, ConstDef)}

    def functions(self) -> dict[str, FuncDef]:
        return {it.name: it for it in self.items if isinstance(it, FuncDef)}

    def shapes(self) -> dict[str, ShapeDef]:
        return {it.name: it for it in self.items if isinstance(it, ShapeDef)}


def walk_exprs(e: Expr):
    """Yield e and every nested expression, depth first."""
    yield e
    if isinstance(e, Unary):
        yield from walk_exprs(e.operand)
    elif isinstance(e, Binary):
        yield from walk_exprs(e.left)
        yield from walk_exprs(e.right)
    elif isinstance(e, Cond):
        yield from walk_exprs(e.test)
        yield from walk_exprs(e.if_true)
        yield from walk_exprs(e.if_false)
    elif isinstance(e, Rand):
        yield from walk_exprs(e.low)
        yield from walk_exprs(e.high)
    elif isinstance(e, FuncCall):
        for a in e.args:
            yield from walk_exprs(a)


def free_names(e: Expr) -> set[str]:
    """Identifiers referenced by e (variables only, not called functions)."""
    return {n.ident for n in walk_exprs(e) if isinstance(n, Name)}
