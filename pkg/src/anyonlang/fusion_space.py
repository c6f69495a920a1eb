"""Fusion-tree state spaces over a fixed anyon configuration.

A :class:`Boundary` fixes the classical data (model, ordered external anyons,
total charge).  Its state space has one basis vector per left-comb fusion tree
``(((a1 a2)_{e1} a3)_{e2} ... aN)_total``, ordered lexicographically by the
internal charges ``(e1, ..., e_{N-2})``.  Positions carry no geometry: only
the count, species and order of the anyons enter.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .anyon_data import AnyonModel, UnknownLabel

__all__ = [
    "Boundary",
    "StateVector",
    "BoundaryMismatch",
    "IndexOutOfRange",
    "enumerate_trees",
    "dim",
    "dim_by_fusion_matrices",
    "basis_state",
    "inner_product",
    "state_to_json",
]


class BoundaryMismatch(ValueError):
    pass


class IndexOutOfRange(IndexError):
    pass


@dataclass(frozen=True)
class Boundary:
    model: AnyonModel
    externals: tuple[int, ...]
    total: int

    def __post_init__(self):
        object.__setattr__(self, "externals", tuple(int(a) for a in self.externals))
        if len(self.externals) < 1:
            raise ValueError("a boundary needs at least one anyon")
        for a in (*self.externals, self.total):
            if a not in self.model.labels:
                raise UnknownLabel(a)

    @property
    def n(self) -> int:
        return len(self.externals)

    def to_json(self) -> dict:
        name = self.model.label_name
        return {
            "model": self.model.name,
            "externals": [name(a) for a in self.externals],
            "total": name(self.total),
        }


def enumerate_trees(boundary: Boundary) -> tuple[tuple[int, ...], ...]:
    """All admissible internal-charge sequences, lexicographically sorted."""
    return _trees(boundary.model, boundary.externals, boundary.total)


@lru_cache(maxsize=1024)
def _trees(model: AnyonModel, externals: tuple[int, ...], total: int):
    n = len(externals)
    if n == 1:
        return ((),) if externals[0] == total else ()
    out = []

    def extend(prefix: list[int], charge: int, pos: int):
        # charge: fusion of externals[:pos]; pos is the next anyon to fuse in
        if pos == n - 1:
            if model.N(charge, externals[pos], total):
                out.append(tuple(prefix))
            return
        for e in model.fuse(charge, externals[pos]):
            prefix.append(e)
            extend(prefix, e, pos + 1)
            prefix.pop()

    extend([], externals[0], 1)
    out.sort()
    return tuple(out)


def dim(boundary: Boundary) -> int:
    return len(enumerate_trees(boundary))


def dim_by_fusion_matrices(boundary: Boundary) -> int:
    """Dimension from the product of fusion matrices, independent of tree enumeration."""
    rules = boundary.model.rules
    v = np.zeros(len(rules.labels), dtype=np.int64)
    v[rules.index(boundary.externals[0])] = 1
    for a in boundary.externals[1:]:
        v = v @ rules.fusion_matrix(a).astype(np.int64)
    return int(v[rules.index(boundary.total)])


@dataclass(frozen=True, eq=False)
class StateVector:
    boundary: Boundary
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.shape != (dim(self.boundary),):
            raise ValueError(f"expected {dim(self.boundary)} amplitudes, got shape {amps.shape}")
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def __eq__(self, other):
        if not isinstance(other, StateVector):
            return NotImplemented
        return self.boundary == other.boundary and np.array_equal(self.amplitudes, other.amplitudes)

    __hash__ = None

    def __repr__(self):
        b = self.boundary
        ext = ",".join(b.model.label_name(a) for a in b.externals)
        return f"StateVector({b.model.name}; {ext}; total {b.model.label_name(b.total)}; {self.amplitudes!r})"


def basis_state(boundary: Boundary, index: int) -> StateVector:
    n = dim(boundary)
    if not 0 <= index < n:
        raise IndexOutOfRange(f"basis index {index} outside 0..{n - 1}")
    amps = np.zeros(n, dtype=complex)
    amps[index] = 1.0
    return StateVector(boundary, amps)


def inner_product(x: StateVector, y: StateVector) -> complex:
    """``<x|y>``, conjugate-linear in ``x``."""
    if x.boundary != y.boundary:
        raise BoundaryMismatch("states live over different boundaries")
    return complex(np.vdot(x.amplitudes, y.amplitudes))


def state_to_json(state: StateVector) -> dict:
    return {
        "boundary": state.boundary.to_json(),
        "amplitudes": [[float(z.real), float(z.imag)] for z in state.amplitudes],
    }
