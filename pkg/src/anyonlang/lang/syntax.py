"""Lexer, parser and pretty-printer for ``.tqp`` programs.

Grammar::

    program   := decl* ;
    decl      := "model" (NAME | STRING) ";"
               | "config" INT "of" LABEL "total" LABEL ";"
               | "start" INT ";"
               | "gate" NAME "=" word ";"
               | "apply" word ";"
               | "emit" ("unitary" | "state") ";"
               | "measure" "edge" INT ";"
    word      := atom+ ;
    atom      := ("s" INT | NAME) ("^" SINT)? ;
    LABEL     := NAME | INT

Line comments start with ``//``.
"""

from __future__ import annotations

import bisect
import re
from dataclasses import dataclass, field

from .diagnostics import Diagnostic, DiagnosticError, Span

__all__ = [
    "Token",
    "tokenize",
    "parse",
    "format_program",
    "Program",
    "ModelDecl",
    "ConfigDecl",
    "StartDecl",
    "GateDecl",
    "ApplyStmt",
    "EmitStmt",
    "MeasureStmt",
    "Word",
    "Atom",
    "Label",
    "KEYWORDS",
]

KEYWORDS = frozenset(
    {"model", "config", "of", "total", "start", "gate", "apply", "emit", "unitary", "state", "measure", "edge"}
)

_MAX_DIGITS = 9
_GENERATOR = re.compile(r"s([0-9]+)\Z")


@dataclass(frozen=True)
class Token:
    kind: str  # NAME, INT, STRING, PUNCT, EOF
    text: str
    span: Span
    value: object = None


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n\f\v]+)
  | (?P<comment>//[^\n]*)
  | (?P<int>[+-]?[0-9]+)
  | (?P<name>[^\W\d]\w*)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<punct>[;=^])
    """,
    re.VERBOSE,
)


def _span(source: str, start: int, end: int, line_starts: list[int]) -> Span:
    line = bisect.bisect_right(line_starts, start) - 1
    return Span(line + 1, start - line_starts[line] + 1, end - start, start)


def tokenize(source: str) -> tuple[list[Token], list[Diagnostic]]:
    line_starts = [0] + [m.end() for m in re.finditer("\n", source)]
    tokens: list[Token] = []
    diags: list[Diagnostic] = []
    pos = 0
    n = len(source)
    while pos < n:
        m = _TOKEN_RE.match(source, pos)
        if m is None:
            ch = source[pos]
            if ch == '"':
                end = source.find("\n", pos)
                end = n if end < 0 else end
                diags.append(Diagnostic("E001", "unterminated string", _span(source, pos, end, line_starts)))
                pos = end
            else:
                diags.append(Diagnostic("E001", f"unexpected character {ch!r}", _span(source, pos, pos + 1, line_starts)))
                pos += 1
            continue
        kind = m.lastgroup
        text = m.group()
        span = _span(source, m.start(), m.end(), line_starts)
        pos = m.end()
        if kind in ("ws", "comment"):
            continue
        if kind == "int":
            if len(text.lstrip("+-")) > _MAX_DIGITS:
                diags.append(Diagnostic("E001", "integer literal too large", span))
                continue
            tokens.append(Token("INT", text, span, int(text)))
        elif kind == "name":
            tokens.append(Token("NAME", text, span, text))
        elif kind == "string":
            body = re.sub(r"\\(.)", r"\1", text[1:-1], flags=re.S)
            tokens.append(Token("STRING", text, span, body))
        else:
            tokens.append(Token("PUNCT", text, span, text))
    # end-of-input errors point at the last character so spans stay inside the text
    eof_span = _span(source, n - 1, n, line_starts) if n else Span(1, 1, 0, 0)
    tokens.append(Token("EOF", "", eof_span))
    return tokens, diags


# ---------------------------------------------------------------------------
# AST; spans are excluded from equality so reformatted programs compare equal


@dataclass(frozen=True)
class Label:
    text: str
    span: Span = field(default=None, compare=False)


@dataclass(frozen=True)
class Atom:
    generator: int | None  # i for "s<i>"
    name: str | None  # gate reference
    exponent: int | None = None
    span: Span = field(default=None, compare=False)

    @property
    def power(self) -> int:
        return 1 if self.exponent is None else self.exponent


@dataclass(frozen=True)
class Word:
    atoms: tuple[Atom, ...]
    span: Span = field(default=None, compare=False)


@dataclass(frozen=True)
class ModelDecl:
    name: str | None
    path: str | None = None
    span: Span = field(default=None, compare=False)


@dataclass(frozen=True)
class ConfigDecl:
    count: int
    species: Label
    total: Label
    span: Span = field(default=None, compare=False)
    count_span: Span = field(default=None, compare=False)


@dataclass(frozen=True)
class StartDecl:
    index: int
    span: Span = field(default=None, compare=False)


@dataclass(frozen=True)
class GateDecl:
    name: str
    word: Word
    span: Span = field(default=None, compare=False)


@dataclass(frozen=True)
class ApplyStmt:
    word: Word
    span: Span = field(default=None, compare=False)


@dataclass(frozen=True)
class EmitStmt:
    kind: str  # "unitary" | "state"
    span: Span = field(default=None, compare=False)


@dataclass(frozen=True)
class MeasureStmt:
    edge: int
    span: Span = field(default=None, compare=False)


@dataclass(frozen=True)
class Program:
    decls: tuple

    @property
    def model(self) -> ModelDecl:
        return next(d for d in self.decls if isinstance(d, ModelDecl))

    @property
    def config(self) -> ConfigDecl:
        return next(d for d in self.decls if isinstance(d, ConfigDecl))

    @property
    def gates(self) -> list[GateDecl]:
        return [d for d in self.decls if isinstance(d, GateDecl)]

    @property
    def statements(self) -> list:
        return [d for d in self.decls if not isinstance(d, (ModelDecl, ConfigDecl, GateDecl))]


# ---------------------------------------------------------------------------
# parser


class _Abort(Exception):
    pass


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0
        self.diags: list[Diagnostic] = []

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "EOF":
            self.pos += 1
        return tok

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.tok
        self.diags.append(Diagnostic("E002", message, tok.span))
        raise _Abort

    def describe(self, tok: Token) -> str:
        return "end of input" if tok.kind == "EOF" else repr(tok.text)

    def expect_punct(self, text: str) -> Token:
        if self.tok.kind == "PUNCT" and self.tok.text == text:
            return self.advance()
        self.error(f"expected '{text}', found {self.describe(self.tok)}")

    def expect_keyword(self, word: str) -> Token:
        if self.tok.kind == "NAME" and self.tok.text == word:
            return self.advance()
        self.error(f"expected '{word}', found {self.describe(self.tok)}")

    def expect_uint(self, what: str) -> Token:
        tok = self.tok
        if tok.kind == "INT" and tok.text[0] not in "+-":
            return self.advance()
        self.error(f"expected {what} (a non-negative integer), found {self.describe(tok)}")

    def expect_label(self, what: str) -> Label:
        tok = self.tok
        if tok.kind == "NAME" or (tok.kind == "INT" and tok.text[0] not in "+-"):
            self.advance()
            return Label(tok.text, tok.span)
        self.error(f"expected {what}, found {self.describe(tok)}")

    def sync(self):
        while self.tok.kind != "EOF":
            tok = self.advance()
            if tok.kind == "PUNCT" and tok.text == ";":
                return

    def finish(self, start: Token) -> Span:
        end = self.expect_punct(";")
        return Span(start.span.line, start.span.column, end.span.offset + 1 - start.span.offset, start.span.offset)

    def program(self) -> list:
        decls = []
        while self.tok.kind != "EOF":
            try:
                decls.append(self.decl())
            except _Abort:
                self.sync()
        return decls

    def decl(self):
        tok = self.tok
        if tok.kind != "NAME" or tok.text not in ("model", "config", "start", "gate", "apply", "emit", "measure"):
            self.error(f"expected a declaration, found {self.describe(tok)}")
        self.advance()
        kw = tok.text
        if kw == "model":
            arg = self.tok
            if arg.kind == "NAME":
                self.advance()
                return ModelDecl(arg.text, None, self.finish(tok))
            if arg.kind == "STRING":
                self.advance()
                return ModelDecl(None, arg.value, self.finish(tok))
            self.error(f"expected a model name or path, found {self.describe(arg)}")
        if kw == "config":
            count = self.expect_uint("an anyon count")
            self.expect_keyword("of")
            species = self.expect_label("a species label")
            self.expect_keyword("total")
            total = self.expect_label("a total-charge label")
            return ConfigDecl(count.value, species, total, self.finish(tok), count.span)
        if kw == "start":
            index = self.expect_uint("a basis index")
            return StartDecl(index.value, self.finish(tok))
        if kw == "gate":
            name = self.tok
            if name.kind != "NAME":
                self.error(f"expected a gate name, found {self.describe(name)}")
            if name.text in KEYWORDS or _GENERATOR.match(name.text):
                self.error(f"{name.text!r} is reserved and cannot name a gate", name)
            self.advance()
            self.expect_punct("=")
            word = self.word()
            return GateDecl(name.text, word, self.finish(tok))
        if kw == "apply":
            word = self.word()
            return ApplyStmt(word, self.finish(tok))
        if kw == "emit":
            what = self.tok
            if what.kind == "NAME" and what.text in ("unitary", "state"):
                self.advance()
                return EmitStmt(what.text, self.finish(tok))
            self.error(f"expected 'unitary' or 'state', found {self.describe(what)}")
        # measure
        self.expect_keyword("edge")
        edge = self.expect_uint("an edge index")
        return MeasureStmt(edge.value, self.finish(tok))

    def word(self) -> Word:
        atoms = []
        first = self.tok
        while self.tok.kind == "NAME":
            atoms.append(self.atom())
        if not atoms:
            self.error(f"expected a braid word, found {self.describe(self.tok)}")
        last = atoms[-1].span
        return Word(tuple(atoms), Span(first.span.line, first.span.column, last.offset + last.length - first.span.offset, first.span.offset))

    def atom(self) -> Atom:
        tok = self.advance()
        if tok.text in KEYWORDS:
            self.error(f"keyword {tok.text!r} cannot appear in a braid word", tok)
        m = _GENERATOR.match(tok.text)
        exponent = None
        end = tok.span
        if self.tok.kind == "PUNCT" and self.tok.text == "^":
            self.advance()
            exp = self.tok
            if exp.kind != "INT":
                self.error(f"expected an integer exponent, found {self.describe(exp)}")
            self.advance()
            exponent = exp.value
            end = exp.span
        span = Span(tok.span.line, tok.span.column, end.offset + end.length - tok.span.offset, tok.span.offset)
        if m:
            return Atom(int(m.group(1)), None, exponent, span)
        return Atom(None, tok.text, exponent, span)


def _decode(source) -> tuple[str | None, list[Diagnostic]]:
    if isinstance(source, str):
        return source, []
    data = bytes(source)
    try:
        return data.decode("utf-8"), []
    except UnicodeDecodeError as exc:
        prefix = data[: exc.start].decode("utf-8", errors="replace")
        line = prefix.count("\n") + 1
        column = len(prefix) - (prefix.rfind("\n") + 1) + 1
        return None, [Diagnostic("E001", "invalid UTF-8", Span(line, column, 1, len(prefix)))]


def parse(source: str | bytes) -> Program:
    """Parse a program, raising :class:`DiagnosticError` with E001/E002 diagnostics."""
    text, diags = _decode(source)
    if text is None:
        raise DiagnosticError(diags)
    tokens, diags = tokenize(text)
    if diags:
        raise DiagnosticError(diags)
    parser = _Parser(tokens)
    decls = parser.program()
    diags = parser.diags
    eof = tokens[-1]
    for kind, what in ((ModelDecl, "model"), (ConfigDecl, "config")):
        found = [d for d in decls if isinstance(d, kind)]
        if len(found) > 1:
            diags.append(Diagnostic("E002", f"duplicate '{what}' declaration", found[1].span))
        elif not found and not diags:
            diags.append(Diagnostic("E002", f"missing '{what}' declaration", eof.span))
    if diags:
        raise DiagnosticError(diags)
    return Program(tuple(decls))


# ---------------------------------------------------------------------------
# pretty-printer


def _format_word(word: Word) -> str:
    parts = []
    for atom in word.atoms:
        head = f"s{atom.generator}" if atom.generator is not None else atom.name
        parts.append(head if atom.exponent is None else f"{head}^{atom.exponent}")
    return " ".join(parts)


def _quote(path: str) -> str:
    return '"' + path.replace("\\", "\\\\").replace('"', '\\"') + '"'


def format_program(program: Program) -> str:
    """Canonical text of ``program``: one declaration per line."""
    lines = []
    for d in program.decls:
        if isinstance(d, ModelDecl):
            lines.append(f"model {d.name if d.name is not None else _quote(d.path)};")
        elif isinstance(d, ConfigDecl):
            lines.append(f"config {d.count} of {d.species.text} total {d.total.text};")
        elif isinstance(d, StartDecl):
            lines.append(f"start {d.index};")
        elif isinstance(d, GateDecl):
            lines.append(f"gate {d.name} = {_format_word(d.word)};")
        elif isinstance(d, ApplyStmt):
            lines.append(f"apply {_format_word(d.word)};")
        elif isinstance(d, EmitStmt):
            lines.append(f"emit {d.kind};")
        elif isinstance(d, MeasureStmt):
            lines.append(f"measure edge {d.edge};")
    return "\n".join(lines) + "\n"
