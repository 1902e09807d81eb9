"""Scene language: grammar, AST, static checks and the canonical printer."""

from . import ast
from .check import check_program, validate_program
from .lexer import Token, tokenize
from .parser import parse, parse_expression
from .printer import format_expr, pretty_print
from .rewrite import constant_literal, rewrite_constants

__all__ = [
    "ast",
    "Token",
    "tokenize",
    "parse",
    "parse_expression",
    "check_program",
    "validate_program",
    "format_expr",
    "pretty_print",
    "constant_literal",
    "rewrite_constants",
]
