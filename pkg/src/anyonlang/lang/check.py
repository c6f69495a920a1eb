"""Name resolution and well-formedness checks for parsed programs."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from ..anyon_data import AnyonModel, LevelOutOfRange, ModelVerificationError, MissingSymbol, UnknownLabel, load_model, named_model
from ..fusion_space import Boundary, dim_by_fusion_matrices
from .diagnostics import Diagnostic, DiagnosticError, Span
from .syntax import ApplyStmt, GateDecl, MeasureStmt, Program, StartDecl, Word

__all__ = ["TypedProgram", "typecheck", "MAX_DIM", "MAX_STRANDS"]

MAX_DIM = 4096
MAX_STRANDS = 64


@dataclass(frozen=True)
class TypedProgram:
    program: Program
    model: AnyonModel
    boundary: Boundary
    dim: int
    dims: tuple[int, ...]  # one per statement; transport never leaves the boundary


class _Checker:
    def __init__(self, program: Program, base_dir: Path | None):
        self.program = program
        self.base_dir = base_dir
        self.diags: list[Diagnostic] = []

    def err(self, code: str, message: str, span: Span):
        self.diags.append(Diagnostic(code, message, span))

    def resolve_model(self) -> AnyonModel | None:
        decl = self.program.model
        if decl.name is not None:
            try:
                return named_model(decl.name)
            except (KeyError, LevelOutOfRange):
                self.err("E101", f"unknown model {decl.name!r}", decl.span)
                return None
        path = Path(decl.path)
        if not path.is_absolute() and self.base_dir is not None:
            path = self.base_dir / path
        if not path.is_file():
            self.err("E101", f"model file {decl.path!r} not found", decl.span)
            return None
        try:
            return load_model(path)
        except (ModelVerificationError, MissingSymbol, ValueError) as exc:
            self.err("E104", f"model {decl.path!r} rejected: {exc}", decl.span)
            return None

    def resolve_label(self, model: AnyonModel, label) -> int | None:
        try:
            return model.label(label.text)
        except UnknownLabel:
            self.err("E101", f"unknown label {label.text!r} in model {model.name!r}", label.span)
            return None

    def check_word(self, word: Word, n: int, gates: set[str]):
        for atom in word.atoms:
            if atom.generator is not None:
                if not 1 <= atom.generator <= n - 1:
                    self.err("E102", f"generator s{atom.generator} out of range 1..{n - 1} for {n} anyons", atom.span)
            elif atom.name not in gates:
                self.err("E101", f"undefined gate {atom.name!r}", atom.span)

    def run(self) -> TypedProgram:
        model = self.resolve_model()
        if model is None:
            raise DiagnosticError(self.diags)
        config = self.program.config
        n = config.count
        species = self.resolve_label(model, config.species)
        total = self.resolve_label(model, config.total)
        if n < 1:
            self.err("E103", "a configuration needs at least one anyon", config.count_span)
        elif n > MAX_STRANDS:
            self.err("E103", f"at most {MAX_STRANDS} anyons are supported", config.count_span)
        if self.diags:
            raise DiagnosticError(self.diags)

        boundary = Boundary(model, (species,) * n, total)
        d = dim_by_fusion_matrices(boundary)
        if d == 0:
            self.err(
                "E103",
                f"no fusion tree: {n} x {config.species.text} cannot fuse to {config.total.text}",
                config.span,
            )
        elif d > MAX_DIM:
            self.err("E103", f"state space dimension {d} exceeds {MAX_DIM}", config.span)

        gates: set[str] = set()
        for decl in self.program.decls:
            if isinstance(decl, GateDecl):
                self.check_word(decl.word, n, gates)
                gates.add(decl.name)
            elif isinstance(decl, ApplyStmt):
                self.check_word(decl.word, n, gates)
            elif isinstance(decl, StartDecl):
                if d and not decl.index < d:
                    self.err("E102", f"basis index {decl.index} out of range 0..{d - 1}", decl.span)
            elif isinstance(decl, MeasureStmt):
                if not 1 <= decl.edge <= n - 2:
                    hint = f"1..{n - 2}" if n > 2 else "none"
                    self.err("E102", f"edge {decl.edge} out of range (internal edges: {hint})", decl.span)
        if self.diags:
            raise DiagnosticError(self.diags)
        dims = tuple(d for _ in self.program.statements)
        return TypedProgram(self.program, model, boundary, d, dims)


def typecheck(program: Program, base_dir: str | Path | None = None) -> TypedProgram:
    """Resolve the model, labels and gates of ``program``.

    Raises :class:`DiagnosticError` carrying E101-E104 diagnostics. Relative
    model paths are resolved against ``base_dir``.
    """
    return _Checker(program, None if base_dir is None else Path(base_dir)).run()
