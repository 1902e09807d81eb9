"""Small AST surgeries used by the gallery and the tests.

The interesting one is rewrite_constants: swap the right-hand side of
top-level constants for literal values, leaving everything else untouched.
This is how the report generator re-runs a preset at a different iteration
cap or resolution without string-hacking the source.
"""

from __future__ import annotations

import math

from ..errors import SemanticError
from . import ast


def rewrite_constants(program: ast.Program, values: dict[str, float]) -> ast.Program:
    """Program with ConstDef right-hand sides replaced by Num literals.

    Every key must name an existing constant; unknown keys raise
    SemanticError rather than silently doing nothing.
    """
    known = {it.name for it in program.items if isinstance(it, ast.ConstDef)}
    missing = sorted(set(values) - known)
    if missing:
        raise SemanticError(f"no such constant to rewrite: {', '.join(missing)}")
    for name, v in values.items():
        if not math.isfinite(v):
            raise SemanticError(f"constant '{name}' must be rewritten to a finite value")

    items = []
    for it in program.items:
        if isinstance(it, ast.ConstDef) and it.name in values:
            items.append(
                ast.ConstDef(it.name, ast.Num(float(values[it.name])), pos=it.pos)
            )
        else:
            items.append(it)
    return ast.Program(tuple(items))


def constant_literal(program: ast.Program, name: str) -> float | None:
    """Value of constant name when its definition is a plain literal.

    Returns None for missing constants or non-literal right-hand sides;
    use the evaluator for the general case.
    """
    for it in program.items:
        if isinstance(it, ast.ConstDef) and it.name == name:
            v = it.value
            if isinstance(v, ast.Num):
                return v.value
            if isinstance(v, ast.Unary) and v.op == "-" and isinstance(v.operand, ast.Num):
                return -v.operand.value
            return None
    return None
