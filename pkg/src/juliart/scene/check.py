"""Static checks that run between parsing and evaluation.

Catches what the grammar cannot: unknown names, arity mismatches, duplicate
definitions, missing start shape, rebinding inside a block.  Everything is
reported with source positions; `check_program` collects, `validate_program`
raises on the first problem.
"""

from __future__ import annotations

from ..errors import SemanticError
from . import ast

_RESERVED = {"rand", "if", "else", "loop", "shape", "startshape", "SQUARE", "FILL"}


def check_program(program: ast.Program) -> list[SemanticError]:
    errors: list[SemanticError] = []
    consts = {}
    funcs = {}
    shapes = {}
    starts = [it for it in program.items if isinstance(it, ast.StartShape)]

    def define(table, item):
        if item.name in _RESERVED:
            errors.append(
                SemanticError(f"'{item.name}' is reserved and cannot be defined", *item.pos)
            )
            return
        for other in (consts, funcs, shapes):
            if item.name in other:
                errors.append(
                    SemanticError(f"duplicate definition of '{item.name}'", *item.pos)
                )
                return
        table[item.name] = item

    for it in program.items:
        if isinstance(it, ast.ConstDef):
            define(consts, it)
        elif isinstance(it, ast.FuncDef):
            define(funcs, it)
        elif isinstance(it, ast.ShapeDef):
            define(shapes, it)

    if not starts:
        errors.append(SemanticError("program has no startshape", 1, 1))
    elif len(starts) > 1:
        errors.append(SemanticError("more than one startshape", *starts[1].pos))

    global_names = set(consts)

    def check_expr(e: ast.Expr, scope: set[str]):
        for node in ast.walk_exprs(e):
            if isinstance(node, ast.Name):
                if node.ident not in scope and node.ident not in global_names:
                    errors.append(SemanticError(f"unknown name '{node.ident}'", *node.pos))
            elif isinstance(node, ast.FuncCall):
                fn = funcs.get(node.name)
                if fn is None:
                    errors.append(
                        SemanticError(f"call to undefined function '{node.name}'", *node.pos)
                    )
                elif len(node.args) != len(fn.params):
                    errors.append(
                        SemanticError(
                            f"function '{node.name}' takes {len(fn.params)} "
                            f"argument(s), got {len(node.args)}",
                            *node.pos,
                        )
                    )

    def check_adjustments(adjs, scope):
        for adj in adjs:
            for arg in adj.args:
                check_expr(arg, scope)

    def check_shape_call(name, args, pos, scope):
        sh = shapes.get(name)
        if sh is None:
            errors.append(SemanticError(f"call to undefined shape '{name}'", *pos))
        elif len(args) != len(sh.params):
            errors.append(
                SemanticError(
                    f"shape '{name}' takes {len(sh.params)} argument(s), got {len(args)}",
                    *pos,
                )
            )
        for a in args:
            check_expr(a, scope)

    def check_block(stmts, scope: set[str]):
        # scope is copied per block; binds extend it only for later statements
        # in the same block.
        local = set(scope)
        bound_here: set[str] = set()
        for st in stmts:
            if isinstance(st, ast.Bind):
                check_expr(st.value, local)
                if st.name in bound_here:
                    errors.append(
                        SemanticError(f"'{st.name}' is already bound in this block", *st.pos)
                    )
                local.add(st.name)
                bound_here.add(st.name)
            elif isinstance(st, (ast.Square, ast.Fill)):
                check_adjustments(st.adjustments, local)
            elif isinstance(st, ast.IfStmt):
                check_expr(st.test, local)
                check_block(st.then_body, local)
                check_block(st.else_body, local)
            elif isinstance(st, ast.Loop):
                # Count and the adjustment list evaluate once, on entry, so
                # the loop variable is not in scope for either.
                check_expr(st.count, local)
                check_adjustments(st.adjustments, local)
                inner = set(local)
                if st.var is not None:
                    inner.add(st.var)
                check_block(st.body, inner)
            elif isinstance(st, ast.ShapeCall):
                check_shape_call(st.name, st.args, st.pos, local)
                check_adjustments(st.adjustments, local)

    for fn in funcs.values():
        check_expr(fn.body, set(fn.params))

    for sh in shapes.values():
        # Parameters behave like binds at the top of the body block.
        check_block(sh.body, set(sh.params))

    for st in starts:
        check_shape_call(st.name, st.args, st.pos, set())

    for c in consts.values():
        check_expr(c.value, set())

    return errors


def validate_program(program: ast.Program) -> ast.Program:
    """Raise the first SemanticError, or hand the program back unchanged."""
    errors = check_program(program)
    if errors:
        raise errors[0]
    return program
