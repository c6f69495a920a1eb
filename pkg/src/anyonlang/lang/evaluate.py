"""Deterministic evaluation of typechecked programs."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..braiding import BraidWord, braid_unitary
from ..fusion_space import StateVector, basis_state, enumerate_trees
from .check import TypedProgram
from .syntax import ApplyStmt, EmitStmt, GateDecl, MeasureStmt, StartDecl, Word

__all__ = [
    "UnitaryEmission",
    "StateEmission",
    "MeasureEmission",
    "evaluate",
    "word_unitary",
    "expand_word",
]


@dataclass(frozen=True, eq=False)
class UnitaryEmission:
    unitary: np.ndarray
    kind = "unitary"


@dataclass(frozen=True, eq=False)
class StateEmission:
    state: StateVector
    kind = "state"


@dataclass(frozen=True)
class MeasureEmission:
    """Born distribution of internal edge ``edge``: ``(label, probability)`` pairs sorted by label id."""

    edge: int
    distribution: tuple[tuple[int, float], ...]
    kind = "measure"


def _power(u: np.ndarray, k: int) -> np.ndarray:
    if k >= 0:
        return np.linalg.matrix_power(u, k)
    return np.linalg.matrix_power(u.conj().T, -k)


def word_unitary(tp: TypedProgram, word: Word, gates: dict[str, np.ndarray]) -> np.ndarray:
    """Unitary of a surface word; ``g^k`` is computed as a matrix power, not expanded."""
    n = tp.boundary.n
    u = np.eye(tp.dim, dtype=complex)
    for atom in word.atoms:
        if atom.generator is not None:
            base = braid_unitary(tp.boundary, BraidWord(n, ((atom.generator, 1),)))
        else:
            base = gates[atom.name]
        u = _power(base, atom.power) @ u
    return u


def expand_word(word: Word, gates: dict[str, BraidWord], n: int) -> BraidWord:
    """Literal braid word of a surface word, expanding gate references and exponents."""
    out = BraidWord(n)
    for atom in word.atoms:
        base = BraidWord(n, ((atom.generator, 1),)) if atom.generator is not None else gates[atom.name]
        out = out + base.power(atom.power)
    return out


def _measure(tp: TypedProgram, state: StateVector, edge: int) -> MeasureEmission:
    probs: dict[int, float] = {}
    weights = np.abs(state.amplitudes) ** 2
    total = float(np.sum(weights))
    for tree, w in zip(enumerate_trees(tp.boundary), weights):
        probs[tree[edge - 1]] = probs.get(tree[edge - 1], 0.0) + float(w)
    return MeasureEmission(edge, tuple((label, p / total) for label, p in sorted(probs.items())))


def evaluate(tp: TypedProgram) -> list:
    """Run the statements of ``tp`` in order and return the emissions.

    The state starts at basis tree 0 (or the index given by ``start``) and the
    accumulated unitary at the identity; ``apply`` updates both.  Measurement
    reports a Born distribution and leaves the state untouched.
    """
    gates: dict[str, np.ndarray] = {}
    state = basis_state(tp.boundary, 0)
    acc = np.eye(tp.dim, dtype=complex)
    out = []
    for decl in tp.program.decls:
        if isinstance(decl, GateDecl):
            gates[decl.name] = word_unitary(tp, decl.word, gates)
        elif isinstance(decl, StartDecl):
            state = basis_state(tp.boundary, decl.index)
        elif isinstance(decl, ApplyStmt):
            u = word_unitary(tp, decl.word, gates)
            acc = u @ acc
            state = StateVector(tp.boundary, u @ state.amplitudes)
        elif isinstance(decl, EmitStmt):
            if decl.kind == "unitary":
                out.append(UnitaryEmission(acc.copy()))
            else:
                out.append(StateEmission(state))
        elif isinstance(decl, MeasureStmt):
            out.append(_measure(tp, state, decl.edge))
    return out
