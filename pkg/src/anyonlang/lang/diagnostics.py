from __future__ import annotations

from dataclasses import dataclass

CODES = {
    "E001": "lexical error",
    "E002": "syntax error",
    "E101": "unknown name or label",
    "E102": "index out of range",
    "E103": "empty or oversized state space",
    "E104": "inconsistent anyon model",
}


@dataclass(frozen=True)
class Span:
    """Source location: 1-based line and column, length in characters, 0-based offset."""

    line: int
    column: int
    length: int
    offset: int = 0


@dataclass(frozen=True)
class Diagnostic:
    code: str
    message: str
    span: Span

    @property
    def severity(self) -> str:
        return "error"

    def render(self, filename: str = "<source>") -> str:
        return f"{filename}:{self.span.line}:{self.span.column}: {self.code} {self.message}"

    def to_json(self) -> dict:
        return {
            "code": self.code,
            "message": self.message,
            "line": self.span.line,
            "column": self.span.column,
            "length": self.span.length,
        }


class DiagnosticError(Exception):
    """Raised by ``parse`` and ``typecheck``; carries every diagnostic found."""

    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(f"{d.code} {d.message}" for d in self.diagnostics))

    @property
    def codes(self) -> list[str]:
        return [d.code for d in self.diagnostics]
