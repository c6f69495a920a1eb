"""Braid-word synthesis of target unitaries.

:func:`brute_force_synth` is an exhaustive iterative-deepening search over
words in ``s1, s1^-1, s2, s2^-1, ...`` (in that order) that never places a
letter next to its own inverse.  Words are visited by length, then
lexicographically.  The search returns the first word within ``tol`` of the
target, otherwise the earliest word whose distance is within
``TIE_EPS`` of the best distance seen.  Both rules depend only on the visit
order, so splitting the work across threads cannot change the answer.

:func:`sk_refine` improves a qubit-sector approximation with the
Solovay-Kitaev group-commutator recursion, using the brute-force search as
its base case.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .braiding import BraidWord, braid_unitary, sigma_matrix
from .fusion_space import Boundary, dim

__all__ = [
    "SynthResult",
    "DimensionMismatch",
    "NotAQubitSector",
    "SeedTooCoarse",
    "distance",
    "brute_force_synth",
    "sk_refine",
    "preset",
    "PRESETS",
    "MAX_LEN",
    "SK_THRESHOLD",
]

MAX_LEN = 14
SK_THRESHOLD = 0.5
TIE_EPS = 1e-12
# 1 - |tr|/n below this is rounding noise; sqrt would inflate it to ~1e-8
_NOISE_FLOOR = 1e-14
_SUFFIX_LEN = 5


class DimensionMismatch(ValueError):
    pass


class NotAQubitSector(ValueError):
    pass


class SeedTooCoarse(ValueError):
    pass


@dataclass(frozen=True)
class SynthResult:
    word: BraidWord
    distance: float
    explored: int
    depth_reached: int


def distance(u: np.ndarray, v: np.ndarray) -> float:
    """Phase-invariant distance ``sqrt(1 - |tr(U^dag V)| / n)``."""
    u, v = np.asarray(u), np.asarray(v)
    if u.shape != v.shape or u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise DimensionMismatch(f"shapes {u.shape} and {v.shape}")
    n = u.shape[0]
    gap = 1.0 - abs(np.vdot(u, v)) / n
    return 0.0 if gap <= _NOISE_FLOOR else math.sqrt(gap)


PRESETS = {
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
    "H": np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2),
    "iX": np.array([[0, 1j], [1j, 0]], dtype=complex),
}


def preset(name: str) -> np.ndarray:
    return PRESETS[name].copy()


# ---------------------------------------------------------------------------
# brute force


def _letters(boundary: Boundary) -> np.ndarray:
    """Generator matrices in alphabet order: index ``2(i-1)`` is ``s_i``, ``2(i-1)+1`` its inverse."""
    mats = []
    for i in range(1, boundary.n):
        mats.append(sigma_matrix(boundary, i, 1))
        mats.append(sigma_matrix(boundary, i, -1))
    return np.array(mats)


def _extend(words: np.ndarray, mats: np.ndarray, letters: np.ndarray):
    """All one-letter extensions, kept in lexicographic order, without inverse cancellations."""
    k = len(letters)
    count = len(words)
    new_words = np.repeat(words, k, axis=0)
    new_words = np.concatenate([new_words, np.tile(np.arange(k), count)[:, None]], axis=1)
    # application order: the new letter acts last
    new_mats = np.einsum("kij,mjl->mkil", letters, mats).reshape(count * k, *mats.shape[1:])
    if words.shape[1]:
        keep = new_words[:, -1] != (new_words[:, -2] ^ 1)
        new_words, new_mats = new_words[keep], new_mats[keep]
    return new_words, new_mats


def _all_words(length: int, letters: np.ndarray, n: int):
    words = np.zeros((1, 0), dtype=np.int64)
    mats = np.eye(n, dtype=complex)[None]
    for _ in range(length):
        words, mats = _extend(words, mats, letters)
    return words, mats


@dataclass
class _Chunk:
    hit: int | None  # first index with distance <= tol
    best: float
    candidates: list  # (index, value) with value <= chunk best + TIE_EPS
    explored: int


def _gaps_to_distance(fid: np.ndarray, n: int) -> np.ndarray:
    gap = 1.0 - np.abs(fid) / n
    return np.where(gap <= _NOISE_FLOOR, 0.0, np.sqrt(np.maximum(gap, 0.0)))


def _scan(prefix_words, prefix_mats, suffix_tables, n, tol, start):
    """Evaluate every prefix followed by every allowed suffix, in visit order."""
    best = math.inf
    candidates = []
    explored = 0
    for p in range(len(prefix_mats)):
        last = int(prefix_words[p, -1]) if prefix_words.shape[1] else -1
        flat = suffix_tables[last]
        # tr(T^dag S P) = sum_ij (T^dag S)_ij P_ji
        fid = flat @ prefix_mats[p].T.reshape(n * n)
        dist = _gaps_to_distance(fid, n)
        explored += len(dist)
        hits = np.flatnonzero(dist <= tol)
        if hits.size:
            # count visits only up to the hit so serial and threaded runs agree
            explored += int(hits[0]) + 1 - len(dist)
            return _Chunk((start + p, int(hits[0])), best, candidates, explored)
        m = float(dist.min())
        if m < best:
            best = m
            candidates = [c for c in candidates if c[2] <= best + TIE_EPS]
        close = np.flatnonzero(dist <= best + TIE_EPS)
        candidates.extend((start + p, int(j), float(dist[j])) for j in close)
    return _Chunk(None, best, candidates, explored)


def brute_force_synth(
    boundary: Boundary,
    target: np.ndarray,
    max_len: int,
    tol: float = 1e-9,
    workers: int = 1,
) -> SynthResult:
    """Shortest, then lexicographically first, braid word approximating ``target``.

    ``workers > 1`` splits each depth across threads; the result is identical
    to the serial search.
    """
    target = np.asarray(target, dtype=complex)
    d = dim(boundary)
    if target.shape != (d, d):
        raise DimensionMismatch(f"target is {target.shape}, sector has dimension {d}")
    if not 0 <= max_len <= MAX_LEN:
        raise ValueError(f"max_len must be in 0..{MAX_LEN}")
    n_strands = boundary.n
    identity = np.eye(d, dtype=complex)
    explored = 1
    d0 = distance(target, identity)
    best_word, best_dist = (), d0
    if d0 <= tol or n_strands < 2:
        return _result(boundary, target, best_word, explored, 0)

    letters = _letters(boundary)
    target_dag = target.conj().T
    depth = 0
    for length in range(1, max_len + 1):
        depth = length
        s_len = min(length, _SUFFIX_LEN)
        prefix_words, prefix_mats = _all_words(length - s_len, letters, d)
        suffix_words, suffix_mats = _all_words(s_len, letters, d)
        flat = (target_dag @ suffix_mats).reshape(len(suffix_mats), d * d)
        tables, table_words = {}, {}
        for last in ([-1] if length == s_len else range(len(letters))):
            keep = suffix_words[:, 0] != (last ^ 1) if last >= 0 else slice(None)
            tables[last], table_words[last] = flat[keep], suffix_words[keep]

        bounds = np.linspace(0, len(prefix_mats), max(1, min(workers, len(prefix_mats))) + 1).astype(int)
        jobs = [(prefix_words[a:b], prefix_mats[a:b], tables, d, tol, a) for a, b in zip(bounds[:-1], bounds[1:])]
        if len(jobs) > 1:
            with ThreadPoolExecutor(max_workers=len(jobs)) as pool:
                chunks = list(pool.map(lambda job: _scan(*job), jobs))
        else:
            chunks = [_scan(*jobs[0])]

        def word_of(p, j):
            prefix = prefix_words[p]
            last = int(prefix[-1]) if len(prefix) else -1
            return tuple(int(x) for x in prefix) + tuple(int(x) for x in table_words[last][j])

        for chunk in chunks:
            explored += chunk.explored
            if chunk.hit is not None:
                return _result(boundary, target, word_of(*chunk.hit), explored, depth)
        level_best = min(c.best for c in chunks)
        if level_best < best_dist - TIE_EPS:
            best_dist = level_best
            first = next(
                (p, j) for c in chunks for p, j, v in c.candidates if v <= level_best + TIE_EPS
            )
            best_word = word_of(*first)
    return _result(boundary, target, best_word, explored, depth)


def _to_braid(n_strands: int, word: tuple[int, ...]) -> BraidWord:
    return BraidWord(n_strands, tuple((k // 2 + 1, -1 if k % 2 else 1) for k in word))


def _result(boundary, target, word, explored, depth) -> SynthResult:
    braid = _to_braid(boundary.n, word)
    return SynthResult(braid, distance(target, braid_unitary(boundary, braid)), explored, depth)


# ---------------------------------------------------------------------------
# Solovay-Kitaev

_PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def _to_su2(u: np.ndarray) -> np.ndarray:
    v = u / np.sqrt(np.linalg.det(u))
    # fix the sign so the rotation angle lies in [0, pi]
    return -v if np.trace(v).real < 0 else v


def _axis_angle(u: np.ndarray) -> tuple[np.ndarray, float]:
    """``u = cos(t/2) I - i sin(t/2) n.sigma`` for ``u`` in SU(2)."""
    u = _to_su2(u)
    c = float(np.clip(np.trace(u).real / 2, -1.0, 1.0))
    theta = 2 * math.acos(c)
    axis = np.array([(1j * np.trace(u @ p)).real / 2 for p in _PAULI])
    norm = np.linalg.norm(axis)
    if norm < 1e-15:
        return np.array([0.0, 0.0, 1.0]), 0.0
    return axis / norm, theta


def _rotation(axis: np.ndarray, theta: float) -> np.ndarray:
    gen = sum(a * p for a, p in zip(axis, _PAULI))
    return math.cos(theta / 2) * np.eye(2) - 1j * math.sin(theta / 2) * gen


def _align(src: np.ndarray, dst: np.ndarray) -> np.ndarray:
    """An SU(2) element whose adjoint action rotates axis ``src`` onto ``dst``."""
    cross = np.cross(src, dst)
    s, c = np.linalg.norm(cross), float(np.dot(src, dst))
    if s < 1e-12:
        if c > 0:
            return np.eye(2, dtype=complex)
        perp = np.cross(src, [1.0, 0.0, 0.0])
        if np.linalg.norm(perp) < 1e-6:
            perp = np.cross(src, [0.0, 1.0, 0.0])
        return _rotation(perp / np.linalg.norm(perp), math.pi)
    return _rotation(cross / s, math.atan2(s, c))


def _group_commutator(delta: np.ndarray, gauge: float = 0.0) -> tuple[np.ndarray, np.ndarray]:
    """Balanced ``V, W`` with ``V W V^dag W^dag = delta`` up to phase.

    ``gauge`` rotates the pair about the axis of ``delta``; every value gives
    the same commutator but different braid approximations.
    """
    axis, theta = _axis_angle(delta)
    # sin(theta/2) = 2 sin^2(phi/2) sqrt(1 - sin^4(phi/2))
    phi = 2 * math.asin((0.5 - 0.5 * math.sqrt(max(0.0, 1 - math.sin(theta / 2) ** 2))) ** 0.25)
    v = _rotation(np.array([1.0, 0.0, 0.0]), phi)
    w = _rotation(np.array([0.0, 1.0, 0.0]), phi)
    comm_axis, _ = _axis_angle(v @ w @ v.conj().T @ w.conj().T)
    s = _rotation(axis, gauge) @ _align(comm_axis, axis)
    return s @ v @ s.conj().T, s @ w @ s.conj().T


_GAUGES = tuple(k * math.pi / 4 for k in range(8))


def sk_refine(
    boundary: Boundary,
    target: np.ndarray,
    base: dict | None = None,
    depth: int = 1,
) -> SynthResult:
    """Solovay-Kitaev refinement seeded by :func:`brute_force_synth`.

    ``base`` holds the keyword arguments of the seed search (``max_len``,
    ``tol``, ``workers``); ``depth`` is the recursion depth (at most 3).  At
    every level the balanced commutator correction is tried together with a
    direct correction by the residual; if neither improves the distance,
    gauge-rotated commutators are tried in a fixed order.  A correction is
    kept only if it improves the distance, so the result is never worse than
    the seed.
    """
    base = {"max_len": 8, "tol": 1e-9, **(base or {})}
    target = np.asarray(target, dtype=complex)
    if dim(boundary) != 2 or target.shape != (2, 2):
        raise NotAQubitSector(f"sector dimension {dim(boundary)}, target shape {target.shape}")
    if not 0 <= depth <= 3:
        raise ValueError("depth must be in 0..3")
    cache: dict[bytes, SynthResult] = {}

    def seed(u):
        key = np.round(u, 14).tobytes()
        if key not in cache:
            cache[key] = brute_force_synth(boundary, u, **base)
        return cache[key]

    first = seed(target)
    if depth == 0:
        return first
    if first.distance >= SK_THRESHOLD:
        raise SeedTooCoarse(f"seed distance {first.distance:.3f} >= {SK_THRESHOLD}")

    explored = [0]

    def recurse(u, level) -> BraidWord:
        if level == 0:
            res = seed(u)
            explored[0] += res.explored
            return res.word
        prev = recurse(u, level - 1)
        prev_u = braid_unitary(boundary, prev)
        delta = u @ prev_u.conj().T
        best, best_d = prev, distance(u, prev_u)

        def consider(cand):
            nonlocal best, best_d
            d = distance(u, braid_unitary(boundary, cand))
            if d < best_d - TIE_EPS:
                best, best_d = cand, d

        for k, gauge in enumerate(_GAUGES):
            v, w = _group_commutator(delta, gauge)
            vw, ww = recurse(v, level - 1), recurse(w, level - 1)
            # V W V^dag W^dag U_prev in application order
            consider((prev + ww.inverse() + vw.inverse() + ww + vw).reduced())
            if k == 0:
                # direct corrections by the residual, applied after or before
                consider((prev + recurse(delta, level - 1)).reduced())
                consider((recurse(prev_u.conj().T @ u, level - 1) + prev).reduced())
            if best is not prev:
                break
        return best

    word = recurse(target, depth)
    return SynthResult(word, distance(target, braid_unitary(boundary, word)), explored[0], depth)
