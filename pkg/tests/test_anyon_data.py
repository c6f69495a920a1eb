import cmath
import dataclasses
import itertools
import math

import numpy as np
import pytest

from anyonlang.anyon_data import (
    LevelOutOfRange,
    MissingSymbol,
    ModelVerificationError,
    UnknownLabel,
    fibonacci_model,
    ising_model,
    model_from_json,
    model_to_json,
    named_model,
    quantum_dimension,
    su2k_model,
    trivial_model,
    verify_hexagon,
    verify_pentagon,
    verify_unitarity,
)

from conftest import named_models

PHI = (1 + math.sqrt(5)) / 2


def test_su2k_level_1_fusion():
    m = su2k_model(1)
    assert m.labels == (0, 1)
    assert m.N(1, 1, 0) == 1
    assert m.N(1, 1, 1) == 0
    assert m.N(1, 1, 2) == 0  # no label 2 at level 1


def test_su2k_level_2_fusion():
    m = su2k_model(2)
    assert m.labels == (0, 1, 2)
    assert m.N(1, 1, 0) == m.N(1, 1, 2) == 1
    assert m.N(1, 1, 1) == 0


def test_su2k_level_3_truncation():
    # |2-2| <= c <= min(4, 6-4) with c even
    m = su2k_model(3)
    assert [c for c in m.labels if m.N(2, 2, c)] == [0, 2]


@pytest.mark.parametrize("k", [0, -1, 17, 100])
def test_su2k_level_out_of_range(k):
    with pytest.raises(LevelOutOfRange):
        su2k_model(k)


@pytest.mark.parametrize("k", range(1, 9))
def test_su2k_fusion_rule_axioms(k):
    m = su2k_model(k)
    rules = m.rules
    for a, b, c in itertools.product(m.labels, repeat=3):
        assert rules.N(a, b, c) == rules.N(b, a, c)
        expected = abs(a - b) <= c <= min(a + b, 2 * k - a - b) and (a + b + c) % 2 == 0
        assert rules.N(a, b, c) == int(expected)
    for a, c in itertools.product(m.labels, repeat=2):
        assert rules.N(a, 0, c) == (a == c)
        assert rules.N(0, a, c) == (a == c)
        assert rules.N(a, c, 0) == (c == rules.dual[a])


def test_su2_2_fusion_ring_matches_ising():
    su2, ising = su2k_model(2), ising_model()
    relabel = {0: 0, 1: 1, 2: 2}  # 0<->1, 1<->sigma, 2<->psi
    for a, b, c in itertools.product(range(3), repeat=3):
        assert su2.N(a, b, c) == ising.N(relabel[a], relabel[b], relabel[c])


@pytest.mark.parametrize("model", named_models(), ids=lambda m: m.name)
def test_named_models_are_coherent(model):
    assert verify_pentagon(model).residual < 1e-9
    assert verify_hexagon(model).residual < 1e-9
    assert verify_unitarity(model).residual < 1e-9
    for v in model.R.values():
        assert abs(abs(v) - 1) < 1e-12


@pytest.mark.parametrize("model", named_models(), ids=lambda m: m.name)
def test_unit_index_blocks_are_identity(model):
    for a, b, c, d in itertools.product(model.labels, repeat=4):
        if model.unit not in (a, b, c, d):
            continue
        block = model.f_block(a, b, c, d)
        if block.size:
            np.testing.assert_allclose(block, np.eye(len(block)), atol=1e-12)


def test_fibonacci_f_block():
    m = fibonacci_model()
    block = m.f_block(1, 1, 1, 1)
    assert block.shape == (2, 2)
    expected = np.array([[1 / PHI, PHI ** -0.5], [PHI ** -0.5, -1 / PHI]])
    np.testing.assert_allclose(block, expected, atol=1e-15)
    assert verify_pentagon(m).residual < 1e-12


def _fib_with_r(r1, rt):
    m = fibonacci_model()
    R = dict(m.R)
    R[1, 1, 0], R[1, 1, 1] = r1, rt
    return dataclasses.replace(m, R=R)


def test_fibonacci_r_symbols_solve_hexagon():
    # oracle: enumerate 20th roots of unity for both phases, keep the hexagon solutions
    roots = [cmath.exp(2j * math.pi * m / 20) for m in range(20)]
    solutions = {
        (i, j)
        for (i, r1), (j, rt) in itertools.product(enumerate(roots), repeat=2)
        if verify_hexagon(_fib_with_r(r1, rt)).residual < 1e-9
    }
    # exp(4 pi i/5) = root 8, exp(-3 pi i/5) = root 14; the conjugate pair is (12, 6)
    assert solutions == {(8, 14), (12, 6)}
    m = fibonacci_model()
    assert abs(m.R[1, 1, 0] - cmath.exp(4j * math.pi / 5)) < 1e-15
    assert abs(m.R[1, 1, 1] - cmath.exp(-3j * math.pi / 5)) < 1e-15


def test_ising_data():
    m = ising_model()
    assert m.N(1, 1, 1) == 0
    h = 1 / math.sqrt(2)
    np.testing.assert_allclose(m.f_block(1, 1, 1, 1), [[h, h], [h, -h]], atol=1e-15)
    assert verify_pentagon(m).residual < 1e-12
    ratio = m.R[1, 1, 2] / m.R[1, 1, 0]
    assert abs(ratio - cmath.exp(1j * math.pi / 2)) < 1e-15


def test_pentagon_detects_perturbation():
    m = fibonacci_model()
    F = dict(m.F)
    F[1, 1, 1, 1, 0, 0] += 0.1
    report = verify_pentagon(dataclasses.replace(m, F=F), 1e-9)
    assert not report.passed
    assert report.residual > 0.01


def test_hexagon_detects_sign_flip():
    m = ising_model()
    R = dict(m.R)
    R[1, 1, 0] = -R[1, 1, 0]
    assert not verify_hexagon(dataclasses.replace(m, R=R)).passed


def test_trivial_model_exact_zero(trivial):
    assert verify_pentagon(trivial).residual == 0.0
    assert verify_hexagon(trivial).residual == 0.0
    assert verify_pentagon(trivial).passed


def test_missing_symbol():
    m = fibonacci_model()
    F = dict(m.F)
    del F[1, 1, 1, 1, 1, 0]
    with pytest.raises(MissingSymbol):
        verify_pentagon(dataclasses.replace(m, F=F))
    R = dict(m.R)
    del R[1, 1, 1]
    with pytest.raises(MissingSymbol):
        verify_hexagon(dataclasses.replace(m, R=R))


def test_verifiers_are_deterministic():
    m = su2k_model(4)
    assert verify_pentagon(m) == verify_pentagon(m)
    assert verify_hexagon(m) == verify_hexagon(m)


def test_quantum_dimensions():
    fib, ising = fibonacci_model(), ising_model()
    assert quantum_dimension(fib, 0) == 1.0
    assert abs(quantum_dimension(fib, 1) - (1 + math.sqrt(5)) / 2) < 1e-12
    assert abs(quantum_dimension(ising, 1) - math.sqrt(2)) < 1e-12
    assert abs(quantum_dimension(ising, 2) - 1.0) < 1e-12
    with pytest.raises(UnknownLabel):
        quantum_dimension(fib, 7)


@pytest.mark.parametrize("k", range(1, 9))
def test_su2k_quantum_dimensions(k):
    # closed form sin((a+1)pi/(k+2)) / sin(pi/(k+2))
    m = su2k_model(k)
    for a in m.labels:
        expected = math.sin((a + 1) * math.pi / (k + 2)) / math.sin(math.pi / (k + 2))
        d = quantum_dimension(m, a)
        assert abs(d - expected) < 1e-10
        assert d >= 1 - 1e-12


def test_json_round_trip():
    for m in (fibonacci_model(), ising_model(), su2k_model(3)):
        back = model_from_json(model_to_json(m))
        assert back.rules == m.rules
        assert back.F == m.F and back.R == m.R
        assert back.level == m.level


def test_json_import_rejects_inconsistent(fib_model_doc):
    doc = dict(fib_model_doc)
    doc["R"] = [dict(x) for x in doc["R"]]
    for x in doc["R"]:
        if (x["a"], x["b"], x["c"]) == (1, 1, 1):
            x["im"] = -x["im"]
    with pytest.raises(ModelVerificationError):
        model_from_json(doc)
    with pytest.raises(ModelVerificationError):
        model_from_json({"labels": [0]})


def test_named_model_lookup():
    assert named_model("fibonacci") is named_model("fibonacci")
    assert named_model("su2_3").level == 3
    with pytest.raises(KeyError):
        named_model("su2_")
    with pytest.raises(LevelOutOfRange):
        named_model("su2_40")
    assert trivial_model().labels == (0,)
