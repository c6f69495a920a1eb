import itertools
import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from anyonlang.anyon_data import fibonacci_model, ising_model
from anyonlang.braiding import BraidWord, braid_unitary
from anyonlang.fusion_space import Boundary
from anyonlang.synth import (
    PRESETS,
    DimensionMismatch,
    NotAQubitSector,
    SeedTooCoarse,
    brute_force_synth,
    distance,
    sk_refine,
)

from conftest import GOLDENS

FIB4 = Boundary(fibonacci_model(), (1,) * 4, 0)
GOLDEN = json.loads((GOLDENS / "synth_fibonacci.json").read_text())


def haar_unitary(n, rng):
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def reduced_words(n_strands, length):
    """All words of ``length`` in alphabet order with no letter next to its inverse."""
    alphabet = [(i, s) for i in range(1, n_strands) for s in (1, -1)]
    for w in itertools.product(alphabet, repeat=length):
        if all(not (a[0] == b[0] and a[1] == -b[1]) for a, b in zip(w, w[1:])):
            yield BraidWord(n_strands, w)


def naive_best(boundary, target, max_len):
    best_w, best_d = BraidWord(boundary.n), distance(target, np.eye(len(target)))
    for length in range(1, max_len + 1):
        for w in reduced_words(boundary.n, length):
            d = distance(target, braid_unitary(boundary, w))
            if d < best_d - 1e-12:
                best_w, best_d = w, d
    return best_w, best_d


def test_distance_examples():
    rng = np.random.default_rng(1)
    u = haar_unitary(3, rng)
    assert distance(u, u) == 0.0
    assert distance(np.eye(2), np.exp(1.2345j) * np.eye(2)) == 0.0
    assert abs(distance(np.eye(2), PRESETS["X"]) - 1) < 1e-15
    v = haar_unitary(3, rng)
    assert abs(distance(u, v) - distance(v, u)) < 1e-15
    with pytest.raises(DimensionMismatch):
        distance(np.eye(2), np.eye(3))


def test_identity_target_returns_empty_word():
    r = brute_force_synth(FIB4, np.eye(2), 5)
    assert r.word == BraidWord(4) and r.distance == 0.0 and r.depth_reached == 0


def test_single_generator_recovered():
    target = braid_unitary(FIB4, BraidWord(4, ((1, 1),)))
    r = brute_force_synth(FIB4, target, 3)
    assert r.word.letters == ((1, 1),)
    assert r.distance == 0.0


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        brute_force_synth(FIB4, np.eye(3), 3)


@pytest.mark.parametrize("seed", range(4))
def test_matches_naive_enumeration(seed):
    target = haar_unitary(2, np.random.default_rng(seed))
    r = brute_force_synth(FIB4, target, 4)
    w, d = naive_best(FIB4, target, 4)
    assert r.word == w
    assert abs(r.distance - d) < 1e-12


def test_short_words_recovered_exactly():
    # a shorter or earlier word may realise the same unitary up to phase
    for length in range(4):
        for w in itertools.islice(reduced_words(4, length), 0, None, 7):
            r = brute_force_synth(FIB4, braid_unitary(FIB4, w), 3)
            assert r.distance == 0.0
            assert len(r.word) <= len(w)


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_monotone_in_max_len(name):
    ds = [brute_force_synth(FIB4, PRESETS[name], n).distance for n in (2, 4, 6, 8)]
    assert all(b <= a for a, b in zip(ds, ds[1:]))


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_serial_equals_parallel(name):
    a = brute_force_synth(FIB4, PRESETS[name], 7)
    b = brute_force_synth(FIB4, PRESETS[name], 7, workers=4)
    assert a == b


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 5))
def test_soundness(seed, max_len):
    target = haar_unitary(2, np.random.default_rng(seed))
    r = brute_force_synth(FIB4, target, max_len)
    assert abs(r.distance - distance(target, braid_unitary(FIB4, r.word))) < 1e-12
    assert len(r.word) <= max_len


def test_inverse_closure():
    for name in ("X", "H"):
        u = PRESETS[name]
        a = brute_force_synth(FIB4, u, 6)
        b = brute_force_synth(FIB4, u.conj().T, 6)
        d = distance(np.eye(2), braid_unitary(FIB4, a.word + b.word))
        assert d <= 2 * (a.distance + b.distance) + 1e-9


def test_goldens_brute_force():
    for g in GOLDEN["brute_force"]:
        if g["max_len"] > 8:
            continue
        r = brute_force_synth(FIB4, PRESETS[g["preset"]], g["max_len"])
        assert str(r.word) == g["word"]
        assert abs(r.distance - g["distance"]) < 1e-12
        assert r.explored == g["explored"]


def test_goldens_sk_refine():
    for g in GOLDEN["sk_refine"]:
        r = sk_refine(FIB4, PRESETS[g["preset"]], {"max_len": g["max_len"]}, g["depth"])
        assert len(r.word) == g["length"]
        assert abs(r.distance - g["distance"]) < 1e-12


def test_sk_depth_zero_is_seed():
    seed = brute_force_synth(FIB4, PRESETS["H"], 6)
    assert sk_refine(FIB4, PRESETS["H"], {"max_len": 6}, 0) == seed


@pytest.mark.parametrize("name", ["X", "H", "iX"])
def test_sk_depth_one_improves(name):
    seed = brute_force_synth(FIB4, PRESETS[name], 6)
    assert 0 < seed.distance < 0.5
    r = sk_refine(FIB4, PRESETS[name], {"max_len": 6}, 1)
    assert r.distance < seed.distance
    assert abs(r.distance - distance(PRESETS[name], braid_unitary(FIB4, r.word))) < 1e-12


def test_sk_random_targets_never_worse():
    # strict improvement is not guaranteed for arbitrary targets with a short base search
    rng = np.random.default_rng(7)
    improved = 0
    for _ in range(8):
        u = haar_unitary(2, rng)
        seed = brute_force_synth(FIB4, u, 6)
        prev = seed.distance
        for depth in (1, 2):
            r = sk_refine(FIB4, u, {"max_len": 6}, depth)
            assert r.distance <= prev
            assert len(r.word) <= 5**depth * 6
            prev = r.distance
        improved += prev < seed.distance
    assert improved >= 6


def test_sk_errors():
    with pytest.raises(NotAQubitSector):
        sk_refine(Boundary(fibonacci_model(), (1,) * 5, 0), np.eye(3))
    with pytest.raises(NotAQubitSector):
        sk_refine(Boundary(ising_model(), (1, 1), 0), np.eye(1))
    with pytest.raises(SeedTooCoarse):
        sk_refine(FIB4, PRESETS["X"], {"max_len": 0}, 1)
    with pytest.raises(ValueError):
        sk_refine(FIB4, PRESETS["X"], {"max_len": 6}, 4)
