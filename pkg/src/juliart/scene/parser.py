"""Recursive-descent parser producing the ast module's node types.

Expressions use precedence climbing.  Binding strength, loosest first:

    ||  <  &&  <  comparisons  <  + -  <  * /  <  unary -

All binary operators associate left.  `if(c, a, b)` and `rand(lo, hi)` are
expression forms, not function calls, and are parsed as their own nodes.
"""

from __future__ import annotations

from ..errors import ParseError
from . import ast
from .lexer import Token, tokenize

_BIN_PREC = {
    "||": 1,
    "&&": 2,
    "<": 3, "<=": 3, ">": 3, ">=": 3, "==": 3, "!=": 3,
    "+": 4, "-": 4,
    "*": 5, "/": 5,
}

# Adjustment keywords, folded to canonical spelling.
_ADJUST_ALIAS = {
    "x": "x",
    "y": "y",
    "r": "r",
    "size": "size",
    "s": "size",
    "h": "h",
    "hue": "h",
    "sat": "sat",
    "saturation": "sat",
    "b": "b",
    "brightness": "b",
}

_PRIMITIVES = {"SQUARE": ast.Square, "FILL": ast.Fill}


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.i = 0

    # -- token plumbing ----------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, offset: int = 1) -> Token:
        j = min(self.i + offset, len(self.tokens) - 1)
        return self.tokens[j]

    def advance(self) -> Token:
        t = self.tok
        if t.kind != "EOF":
            self.i += 1
        return t

    def expect(self, kind: str, what: str | None = None) -> Token:
        t = self.tok
        if t.kind != kind:
            want = what or f"'{kind}'"
            raise ParseError(f"expected {want}, found {self._describe(t)}", t.line, t.col)
        return self.advance()

    @staticmethod
    def _describe(t: Token) -> str:
        if t.kind == "EOF":
            return "end of input"
        return f"'{t.text}'"

    def fail(self, message: str):
        t = self.tok
        raise ParseError(f"{message}, found {self._describe(t)}", t.line, t.col)

    # -- expressions -------------------------------------------------------

    def parse_expr(self) -> ast.Expr:
        return self._parse_binary(1)

    def _parse_binary(self, min_prec: int) -> ast.Expr:
        left = self._parse_unary()
        while True:
            op = self.tok.kind
            prec = _BIN_PREC.get(op)
            if prec is None or prec < min_prec:
                return left
            t = self.advance()
            right = self._parse_binary(prec + 1)
            left = ast.Binary(op, left, right, pos=(t.line, t.col))

    def _parse_unary(self) -> ast.Expr:
        t = self.tok
        if t.kind == "-":
            self.advance()
            return ast.Unary("-", self._parse_unary(), pos=(t.line, t.col))
        return self._parse_atom()

    def _parse_atom(self) -> ast.Expr:
        t = self.tok
        if t.kind == "NUMBER":
            self.advance()
            return ast.Num(t.value, pos=(t.line, t.col))
        if t.kind == "(":
            self.advance()
            e = self.parse_expr()
            self.expect(")")
            return e
        if t.kind == "KEYWORD" and t.text == "if":
            self.advance()
            self.expect("(")
            test = self.parse_expr()
            self.expect(",")
            a = self.parse_expr()
            self.expect(",")
            b = self.parse_expr()
            self.expect(")")
            return ast.Cond(test, a, b, pos=(t.line, t.col))
        if t.kind == "IDENT":
            self.advance()
            if self.tok.kind == "(":
                args = self._parse_call_args()
                if t.text == "rand":
                    if len(args) != 2:
                        raise ParseError(
                            f"rand takes 2 arguments, got {len(args)}", t.line, t.col
                        )
                    return ast.Rand(args[0], args[1], pos=(t.line, t.col))
                return ast.FuncCall(t.text, args, pos=(t.line, t.col))
            return ast.Name(t.text, pos=(t.line, t.col))
        self.fail("expected expression")

    def _parse_call_args(self) -> tuple[ast.Expr, ...]:
        self.expect("(")
        args: list[ast.Expr] = []
        if self.tok.kind != ")":
            args.append(self.parse_expr())
            while self.tok.kind == ",":
                self.advance()
                args.append(self.parse_expr())
        self.expect(")")
        return tuple(args)

    # -- adjustments -------------------------------------------------------

    def _starts_expr(self, t: Token) -> bool:
        if t.kind in ("NUMBER", "("):
            return True
        if t.kind == "KEYWORD" and t.text == "if":
            return True
        # An identifier only continues the current adjustment's value list if
        # it is not itself an adjustment keyword.
        if t.kind == "IDENT" and t.text not in _ADJUST_ALIAS:
            return True
        return False

    def parse_adjustments(self) -> tuple[ast.Adjustment, ...]:
        self.expect("[", "'[' to open an adjustment list")
        out: list[ast.Adjustment] = []
        while self.tok.kind != "]":
            t = self.tok
            if t.kind != "IDENT" or t.text not in _ADJUST_ALIAS:
                self.fail("expected adjustment keyword (x, y, r, size, h, sat, b)")
            kind = _ADJUST_ALIAS[t.text]
            self.advance()
            first = self.parse_expr()
            args = [first]
            # Only size accepts a second value (width then height).
            if kind == "size" and self._starts_expr(self.tok):
                args.append(self.parse_expr())
            out.append(ast.Adjustment(kind, tuple(args), pos=(t.line, t.col)))
        self.expect("]")
        return tuple(out)

    # -- statements --------------------------------------------------------

    def parse_block(self) -> tuple[ast.Stmt, ...]:
        self.expect("{")
        stmts: list[ast.Stmt] = []
        while self.tok.kind != "}":
            stmts.append(self.parse_stmt())
        self.expect("}")
        return tuple(stmts)

    def parse_stmt(self) -> ast.Stmt:
        t = self.tok
        if t.kind == "KEYWORD" and t.text == "loop":
            return self._parse_loop()
        if t.kind == "KEYWORD" and t.text == "if":
            return self._parse_if_stmt()
        if t.kind == "IDENT":
            if t.text in _PRIMITIVES:
                self.advance()
                adjs = self.parse_adjustments()
                return _PRIMITIVES[t.text](adjs, pos=(t.line, t.col))
            if self.peek().kind == "=":
                self.advance()
                self.advance()
                value = self.parse_expr()
                return ast.Bind(t.text, value, pos=(t.line, t.col))
            if self.peek().kind == "(":
                self.advance()
                args = self._parse_call_args()
                adjs = self.parse_adjustments()
                return ast.ShapeCall(t.text, args, adjs, pos=(t.line, t.col))
        self.fail("expected statement")

    def _parse_loop(self) -> ast.Loop:
        t = self.advance()  # 'loop'
        var = None
        if self.tok.kind == "IDENT" and self.peek().kind == "=":
            var = self.advance().text
            self.advance()  # '='
        count = self.parse_expr()
        adjs = self.parse_adjustments()
        body = self.parse_block()
        return ast.Loop(var, count, adjs, body, pos=(t.line, t.col))

    def _parse_if_stmt(self) -> ast.IfStmt:
        t = self.advance()  # 'if'
        self.expect("(")
        test = self.parse_expr()
        self.expect(")")
        then_body = self.parse_block()
        else_body: tuple[ast.Stmt, ...] = ()
        if self.tok.kind == "KEYWORD" and self.tok.text == "else":
            self.advance()
            else_body = self.parse_block()
        return ast.IfStmt(test, then_body, else_body, pos=(t.line, t.col))

    # -- top level ---------------------------------------------------------

    def parse_program(self) -> ast.Program:
        items: list[ast.Item] = []
        while self.tok.kind != "EOF":
            items.append(self._parse_item())
        return ast.Program(tuple(items))

    def _parse_item(self) -> ast.Item:
        t = self.tok
        if t.kind == "KEYWORD" and t.text == "startshape":
            self.advance()
            name = self.expect("IDENT", "shape name").text
            args: tuple[ast.Expr, ...] = ()
            if self.tok.kind == "(":
                args = self._parse_call_args()
            return ast.StartShape(name, args, pos=(t.line, t.col))
        if t.kind == "KEYWORD" and t.text == "shape":
            self.advance()
            name = self.expect("IDENT", "shape name").text
            params = self._parse_params() if self.tok.kind == "(" else ()
            body = self.parse_block()
            return ast.ShapeDef(name, params, body, pos=(t.line, t.col))
        if t.kind == "IDENT":
            nxt = self.peek()
            if nxt.kind == "=":
                self.advance()
                self.advance()
                return ast.ConstDef(t.text, self.parse_expr(), pos=(t.line, t.col))
            if nxt.kind == "(":
                self.advance()
                params = self._parse_params()
                self.expect("=", "'=' after function parameters")
                return ast.FuncDef(t.text, params, self.parse_expr(), pos=(t.line, t.col))
        self.fail("expected startshape, shape, constant or function definition")

    def _parse_params(self) -> tuple[str, ...]:
        self.expect("(")
        params: list[str] = []
        if self.tok.kind != ")":
            params.append(self.expect("IDENT", "parameter name").text)
            while self.tok.kind == ",":
                self.advance()
                params.append(self.expect("IDENT", "parameter name").text)
        self.expect(")")
        return tuple(params)


def parse(source: str) -> ast.Program:
    """Parse scene source to a Program; LexError/ParseError carry positions."""
    return _Parser(tokenize(source)).parse_program()


def parse_expression(source: str) -> ast.Expr:
    """Parse a single expression (handy for tests and the REPL-ish bits)."""
    p = _Parser(tokenize(source))
    e = p.parse_expr()
    p.expect("EOF", "end of expression")
    return e
