import json
from pathlib import Path

import pytest

from anyonlang.anyon_data import fibonacci_model, ising_model, su2k_model, trivial_model

CORPUS = Path(__file__).parent / "corpus"
POSITIVE = sorted((CORPUS / "positive").glob("*.tqp"))
NEGATIVE = sorted((CORPUS / "negative").glob("*.tqp"))
GOLDENS = Path(__file__).parent / "goldens"


def expected_code(path: Path) -> str:
    first = path.read_bytes().split(b"\n", 1)[0].decode()
    assert first.startswith("// expect: "), path
    return first.split(":", 1)[1].strip()


def named_models():
    return [fibonacci_model(), ising_model()] + [su2k_model(k) for k in range(1, 7)]


@pytest.fixture(scope="session")
def fib():
    return fibonacci_model()


@pytest.fixture(scope="session")
def ising():
    return ising_model()


@pytest.fixture(scope="session")
def trivial():
    return trivial_model()


@pytest.fixture(scope="session")
def fib_model_doc():
    return json.loads((CORPUS / "models" / "fibonacci.json").read_text())
