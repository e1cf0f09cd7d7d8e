"""Error types and source positions shared by every stage."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True, order=True)
class Pos:
    line: int
    col: int

    def __str__(self) -> str:
        return f"line {self.line},col {self.col}"


@dataclass(frozen=True)
class Span:
    start: Pos
    end: Pos

    def __post_init__(self) -> None:
        assert self.start <= self.end, "span must be ordered"

    @staticmethod
    def point(line: int, col: int) -> "Span":
        p = Pos(line, col)
        return Span(p, p)

    def merge(self, other: "Span") -> "Span":
        return Span(min(self.start, other.start), max(self.end, other.end))


class StepwiseError(Exception):
    """Base class; message text is the user-facing contract."""

    def __init__(self, message: str, span: Span | None = None):
        super().__init__(message)
        self.message = message
        self.span = span

    def __str__(self) -> str:
        if self.span is not None:
            return f"{self.span.start}: {self.message}"
        return self.message


class LexError(StepwiseError):
    pass


class ParseError(StepwiseError):
    pass


class TypecheckError(StepwiseError):
    """Type errors, including rejection of unsupported features.

    `plain` suppresses the position prefix for messages whose whole text is
    the contract (the unsupported-feature message shape).
    """

    def __init__(self, message: str, span: Span | None = None, plain: bool = False):
        super().__init__(message, span)
        self.plain = plain

    def __str__(self) -> str:
        if self.plain or self.span is None:
            return self.message
        return f"{self.span.start}: {self.message}"


class EvalError(StepwiseError):
    """Runtime failure inside the machine (incomplete match, div by zero, ...)."""
