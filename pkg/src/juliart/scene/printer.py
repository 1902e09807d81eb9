"""Canonical pretty-printer.

The output is real scene source: parsing it again gives a structurally equal
Program.  Parentheses are emitted only where precedence demands them, numbers
print in the shortest exact positional form (the lexer has no exponent
syntax), and adjustment aliases appear in canonical spelling.
"""

from __future__ import annotations

import numpy as np

from . import ast

_PREC = {
    "||": 1,
    "&&": 2,
    "<": 3, "<=": 3, ">": 3, ">=": 3, "==": 3, "!=": 3,
    "+": 4, "-": 4,
    "*": 5, "/": 5,
}
_UNARY_PREC = 6
_ATOM_PREC = 8

_INDENT = "  "


def format_number(v: float) -> str:
    if v == int(v) and abs(v) < 1e16:
        return str(int(v))
    # Positional (never exponent) shortest representation that round-trips.
    return np.format_float_positional(v, unique=True, trim="0")


def format_expr(e: ast.Expr, min_prec: int = 1) -> str:
    if isinstance(e, ast.Num):
        return format_number(e.value)
    if isinstance(e, ast.Name):
        return e.ident
    if isinstance(e, ast.Unary):
        # Operand tighter than unary itself, so -(a*b) keeps its parens and
        # does not silently rebind to (-a)*b.
        s = "-" + format_expr(e.operand, _UNARY_PREC + 1)
        return f"({s})" if _UNARY_PREC < min_prec else s
    if isinstance(e, ast.Binary):
        p = _PREC[e.op]
        s = f"{format_expr(e.left, p)} {e.op} {format_expr(e.right, p + 1)}"
        return f"({s})" if p < min_prec else s
    if isinstance(e, ast.Cond):
        return (
            f"if({format_expr(e.test)}, "
            f"{format_expr(e.if_true)}, {format_expr(e.if_false)})"
        )
    if isinstance(e, ast.Rand):
        return f"rand({format_expr(e.low)}, {format_expr(e.high)})"
    if isinstance(e, ast.FuncCall):
        return f"{e.name}({', '.join(format_expr(a) for a in e.args)})"
    raise TypeError(f"not an expression node: {e!r}")


def _format_adjustments(adjs: tuple[ast.Adjustment, ...]) -> str:
    parts = []
    for adj in adjs:
        chunk = [adj.kind, format_expr(adj.args[0])]
        if len(adj.args) == 2:
            second = format_expr(adj.args[1])
            # A leading minus would fuse into the first argument on reparse.
            if second.startswith("-"):
                second = f"({second})"
            chunk.append(second)
        parts.append(" ".join(chunk))
    return "[" + " ".join(parts) + "]"


def _format_block(stmts, depth: int) -> list[str]:
    lines = []
    for st in stmts:
        lines.extend(_format_stmt(st, depth))
    return lines


def _format_stmt(st: ast.Stmt, depth: int) -> list[str]:
    pad = _INDENT * depth
    if isinstance(st, ast.Bind):
        return [f"{pad}{st.name} = {format_expr(st.value)}"]
    if isinstance(st, ast.Square):
        return [f"{pad}SQUARE{_format_adjustments(st.adjustments)}"]
    if isinstance(st, ast.Fill):
        return [f"{pad}FILL{_format_adjustments(st.adjustments)}"]
    if isinstance(st, ast.Loop):
        head = f"{pad}loop "
        if st.var is not None:
            head += f"{st.var} = "
        head += f"{format_expr(st.count)} {_format_adjustments(st.adjustments)} {{"
        return [head, *_format_block(st.body, depth + 1), f"{pad}}}"]
    if isinstance(st, ast.IfStmt):
        lines = [f"{pad}if ({format_expr(st.test)}) {{"]
        lines.extend(_format_block(st.then_body, depth + 1))
        if st.else_body:
            lines.append(f"{pad}}} else {{")
            lines.extend(_format_block(st.else_body, depth + 1))
        lines.append(f"{pad}}}")
        return lines
    if isinstance(st, ast.ShapeCall):
        args = ", ".join(format_expr(a) for a in st.args)
        return [f"{pad}{st.name}({args}){_format_adjustments(st.adjustments)}"]
    raise TypeError(f"not a statement node: {st!r}")


def _format_item(item: ast.Item) -> list[str]:
    if isinstance(item, ast.StartShape):
        if item.args:
            args = ", ".join(format_expr(a) for a in item.args)
            return [f"startshape {item.name}({args})"]
        return [f"startshape {item.name}"]
    if isinstance(item, ast.ConstDef):
        return [f"{item.name} = {format_expr(item.value)}"]
    if isinstance(item, ast.FuncDef):
        params = ", ".join(item.params)
        return [f"{item.name}({params}) = {format_expr(item.body)}"]
    if isinstance(item, ast.ShapeDef):
        head = f"shape {item.name}"
        if item.params:
            head += f"({', '.join(item.params)})"
        return [f"{head} {{", *_format_block(item.body, 1), "}"]
    raise TypeError(f"not a top-level item: {item!r}")


def pretty_print(program: ast.Program) -> str:
    """Canonical source for program; ends with a newline.

    Adjacent constant definitions stay in one run; everything else gets a
    blank line of separation.
    """
    lines: list[str] = []
    prev: ast.Item | None = None
    for item in program.items:
        if prev is not None:
            same_run = isinstance(prev, ast.ConstDef) and isinstance(item, ast.ConstDef)
            if not same_run:
                lines.append("")
        lines.extend(_format_item(item))
        prev = item
    return "\n".join(lines) + "\n"
