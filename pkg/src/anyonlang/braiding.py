"""Braid words and their unitary action on fusion-tree spaces.

Words are read left to right in application order: the word ``w1 + w2``
applies ``w1`` first, so ``U(w1 + w2) = U(w2) @ U(w1)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .fusion_space import (
    Boundary,
    BoundaryMismatch,
    IndexOutOfRange,
    StateVector,
    enumerate_trees,
)

__all__ = [
    "BraidWord",
    "EmptyType",
    "MixedSpecies",
    "RelationReport",
    "sigma_matrix",
    "braid_unitary",
    "transport",
    "relation_residuals",
    "unitarity_defect",
    "unitary_to_json",
    "unitary_from_json",
]


class EmptyType(ValueError):
    """The boundary has no admissible fusion tree."""


class MixedSpecies(ValueError):
    """Exchanging two different anyon species would change the boundary."""


@dataclass(frozen=True)
class BraidWord:
    """A word in the Artin generators: ``letters`` are ``(i, sign)`` pairs, ``1 <= i < strand_count``."""

    strand_count: int
    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        letters = tuple((int(i), int(s)) for i, s in self.letters)
        for i, s in letters:
            if not 1 <= i < self.strand_count:
                raise IndexOutOfRange(f"generator s{i} needs 1 <= i < {self.strand_count}")
            if s not in (1, -1):
                raise ValueError(f"sign must be +1 or -1, got {s}")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def from_string(cls, strand_count: int, text: str) -> "BraidWord":
        """Parse ``"s1 s2^-1 s1"``-style words (exponents expand)."""
        letters = []
        for tok in text.split():
            base, _, exp = tok.partition("^")
            i = int(base.lstrip("s"))
            k = int(exp) if exp else 1
            letters.extend([(i, 1 if k > 0 else -1)] * abs(k))
        return cls(strand_count, tuple(letters))

    def __len__(self):
        return len(self.letters)

    def __add__(self, other: "BraidWord") -> "BraidWord":
        if self.strand_count != other.strand_count:
            raise ValueError("strand counts differ")
        return BraidWord(self.strand_count, self.letters + other.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strand_count, tuple((i, -s) for i, s in reversed(self.letters)))

    def reduced(self) -> "BraidWord":
        """Free reduction: cancel adjacent ``s_i s_i^-1`` pairs until none remain."""
        out: list[tuple[int, int]] = []
        for letter in self.letters:
            if out and out[-1] == (letter[0], -letter[1]):
                out.pop()
            else:
                out.append(letter)
        return BraidWord(self.strand_count, tuple(out))

    def power(self, k: int) -> "BraidWord":
        base = self if k >= 0 else self.inverse()
        return BraidWord(self.strand_count, base.letters * abs(k))

    def __str__(self):
        if not self.letters:
            return "()"
        return " ".join(f"s{i}" if s > 0 else f"s{i}^-1" for i, s in self.letters)


def sigma_matrix(boundary: Boundary, i: int, sign: int = 1) -> np.ndarray:
    """Matrix of the elementary exchange of strands ``i`` and ``i+1``.

    The returned array is read-only and shared between calls.
    """
    if not 1 <= i < boundary.n:
        raise IndexOutOfRange(f"generator s{i} needs 1 <= i < {boundary.n}")
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    return _sigma(boundary, i, sign)


@lru_cache(maxsize=4096)
def _sigma(boundary: Boundary, i: int, sign: int) -> np.ndarray:
    if sign == -1:
        m = _sigma(boundary, i, 1).conj().T.copy()
        m.flags.writeable = False
        return m
    model = boundary.model
    ext = boundary.externals
    trees = enumerate_trees(boundary)
    if not trees:
        raise EmptyType("boundary has dimension 0")
    a, b = ext[i - 1], ext[i]
    if a != b:
        raise MixedSpecies(f"s{i} exchanges labels {a} and {b}")
    n = len(trees)
    m = np.zeros((n, n), dtype=complex)

    def charges(tree):
        return (ext[0], *tree, boundary.total)

    if i == 1:
        for t, tree in enumerate(trees):
            m[t, t] = model.r_symbol(a, b, charges(tree)[1])
    else:
        # F-move to (x (a b)_f), braid in channel f, F-move back
        index = {tree: t for t, tree in enumerate(trees)}
        for t, tree in enumerate(trees):
            c = charges(tree)
            x, y, z = c[i - 2], c[i - 1], c[i]
            rows, cols = model.f_block_indices(x, a, b, z)
            for y2 in rows:
                target = list(c)
                target[i - 1] = y2
                t2 = index[tuple(target[1:-1])]
                m[t2, t] = sum(
                    model.f_symbol(x, a, b, z, y2, f).conjugate()
                    * model.r_symbol(a, b, f)
                    * model.f_symbol(x, a, b, z, y, f)
                    for f in cols
                )
    m.flags.writeable = False
    return m


def braid_unitary(boundary: Boundary, word: BraidWord) -> np.ndarray:
    if word.strand_count != boundary.n:
        raise BoundaryMismatch(f"word on {word.strand_count} strands, boundary has {boundary.n}")
    trees = enumerate_trees(boundary)
    if not trees:
        raise EmptyType("boundary has dimension 0")
    u = np.eye(len(trees), dtype=complex)
    for i, s in word.letters:
        u = sigma_matrix(boundary, i, s) @ u
    return u


def transport(state: StateVector, word: BraidWord) -> StateVector:
    """Move ``state`` along ``word``; the boundary is unchanged."""
    if word.strand_count != state.boundary.n:
        raise BoundaryMismatch(f"word on {word.strand_count} strands, state has {state.boundary.n}")
    if not word.letters:
        return state
    return StateVector(state.boundary, braid_unitary(state.boundary, word) @ state.amplitudes)


def unitarity_defect(u: np.ndarray) -> float:
    u = np.asarray(u)
    return float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0])), initial=0.0))


@dataclass(frozen=True)
class RelationReport:
    yang_baxter: float
    far_commutation: float
    unitarity: float

    @property
    def worst(self) -> float:
        return max(self.yang_baxter, self.far_commutation, self.unitarity)


def relation_residuals(boundary: Boundary) -> RelationReport:
    """Max-entry residuals of the braid relations on ``boundary``."""
    if boundary.n < 2:
        raise ValueError("braid relations need at least two strands")
    n = boundary.n
    s = {i: sigma_matrix(boundary, i) for i in range(1, n)}
    yb = far = 0.0
    for i in range(1, n - 1):
        lhs = s[i] @ s[i + 1] @ s[i]
        rhs = s[i + 1] @ s[i] @ s[i + 1]
        yb = max(yb, float(np.max(np.abs(lhs - rhs))))
    for i, j in itertools.combinations(range(1, n), 2):
        if j - i >= 2:
            far = max(far, float(np.max(np.abs(s[i] @ s[j] - s[j] @ s[i]))))
    unit = max(unitarity_defect(m) for m in s.values())
    return RelationReport(yb, far, unit)


def unitary_to_json(u: np.ndarray) -> dict:
    u = np.asarray(u)
    return {
        "dim": int(u.shape[0]),
        "entries": [[float(z.real), float(z.imag)] for z in u.ravel()],
    }


def unitary_from_json(doc: dict) -> np.ndarray:
    n = int(doc["dim"])
    entries = doc["entries"]
    if len(entries) != n * n:
        raise ValueError(f"expected {n * n} entries, got {len(entries)}")
    return np.array([complex(float(re), float(im)) for re, im in entries]).reshape(n, n)
