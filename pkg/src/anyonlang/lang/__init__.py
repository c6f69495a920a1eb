from .check import MAX_DIM, TypedProgram, typecheck
from .diagnostics import CODES, Diagnostic, DiagnosticError, Span
from .evaluate import MeasureEmission, StateEmission, UnitaryEmission, evaluate, expand_word, word_unitary
from .syntax import Program, format_program, parse, tokenize

# the surface-level name; ``format_program`` avoids shadowing the builtin inside the package
format = format_program

__all__ = [
    "CODES",
    "Diagnostic",
    "DiagnosticError",
    "MAX_DIM",
    "MeasureEmission",
    "Program",
    "Span",
    "StateEmission",
    "TypedProgram",
    "UnitaryEmission",
    "evaluate",
    "expand_word",
    "format",
    "format_program",
    "parse",
    "tokenize",
    "typecheck",
    "word_unitary",
]
