"""Exception hierarchy shared by the scene language and the renderer.

Every error that can be traced to a source location carries a 1-based
(line, column) pair so the CLI and the HTTP service can point at the
offending token instead of dumping a stack trace.
"""

from __future__ import annotations


class SceneError(Exception):
    """Base class for everything raised on behalf of a scene file."""

    kind = "error"

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        super().__init__(message)
        self.message = message
        self.line = line
        self.col = col

    def __str__(self) -> str:
        if self.line is not None:
            return f"{self.message} (line {self.line}, column {self.col})"
        return self.message

    def diagnostic(self) -> dict:
        """JSON-friendly description used by the service error responses."""
        out: dict = {"kind": self.kind, "message": self.message}
        if self.line is not None:
            out["line"] = self.line
            out["col"] = self.col
        return out


class LexError(SceneError):
    """Character stream could not be tokenized."""

    kind = "lex"


class ParseError(SceneError):
    """Token stream does not match the grammar."""

    kind = "syntax"


class SemanticError(SceneError):
    """Well-formed program that breaks a static rule (names, arity, start shape)."""

    kind = "semantic"


class EvalError(SceneError):
    """Runtime failure while executing a scene (bad loop count, division by zero...)."""

    kind = "eval"

    def __init__(self, message, line=None, col=None, shape_stack=None):
        super().__init__(message, line, col)
        # Innermost shape last; lets diagnostics say where in the call tree we died.
        self.shape_stack: list[str] = list(shape_stack or [])

    def diagnostic(self) -> dict:
        out = super().diagnostic()
        if self.shape_stack:
            out["shapes"] = self.shape_stack
        return out


class RenderLimitError(EvalError):
    """A resource cap (primitive count, iteration budget, recursion depth) was hit."""

    kind = "limit"
