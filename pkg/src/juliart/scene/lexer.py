"""Tokenizer for scene files.

Hand-rolled scanner: the token set is small and error positions matter more
than speed here.  '#' starts a comment running to end of line.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import LexError

KEYWORDS = frozenset({"startshape", "shape", "loop", "if", "else"})

# Longest match first for the two-character operators.
_TWO_CHAR = ("&&", "||", "<=", ">=", "==", "!=")
_ONE_CHAR = "()[]{},=+-*/<>"


@dataclass(frozen=True)
class Token:
    kind: str  # IDENT, NUMBER, KEYWORD, EOF, or the operator text itself
    text: str
    line: int
    col: int
    value: float = 0.0  # numeric payload for NUMBER tokens


def tokenize(source: str) -> list[Token]:
    """Full token list for source, terminated by an EOF token.

    Raises LexError with position on the first character that fits nothing.
    """
    tokens: list[Token] = []
    i = 0
    line = 1
    col = 1
    n = len(source)

    def advance(text: str):
        nonlocal i, col
        i += len(text)
        col += len(text)

    while i < n:
        ch = source[i]

        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            advance(ch)
            continue
        if ch == "#":
            while i < n and source[i] != "\n":
                i += 1
                col += 1
            continue

        if ch.isdigit() or (ch == "." and i + 1 < n and source[i + 1].isdigit()):
            start = i
            start_col = col
            while i < n and source[i].isdigit():
                i += 1
                col += 1
            if i < n and source[i] == ".":
                i += 1
                col += 1
                while i < n and source[i].isdigit():
                    i += 1
                    col += 1
            text = source[start:i]
            if text == ".":
                raise LexError("lone '.' is not a number", line, start_col)
            tokens.append(Token("NUMBER", text, line, start_col, value=float(text)))
            continue

        if ch.isalpha() or ch == "_":
            start = i
            start_col = col
            while i < n and (source[i].isalnum() or source[i] == "_"):
                i += 1
                col += 1
            text = source[start:i]
            kind = "KEYWORD" if text in KEYWORDS else "IDENT"
            tokens.append(Token(kind, text, line, start_col))
            continue

        two = source[i : i + 2]
        if two in _TWO_CHAR:
            tokens.append(Token(two, two, line, col))
            advance(two)
            continue
        if ch in _ONE_CHAR:
            tokens.append(Token(ch, ch, line, col))
            advance(ch)
            continue

        raise LexError(f"unexpected character {ch!r}", line, col)

    tokens.append(Token("EOF", "", line, col))
    return tokens
