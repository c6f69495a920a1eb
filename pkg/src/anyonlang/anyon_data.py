"""Anyon models: fusion rules, F- and R-symbols, and their coherence checks.

A model is multiplicity-free: every fusion multiplicity ``N(a, b, c)`` is 0 or 1.
Labels are small non-negative integers; for ``su(2)_k`` a label is twice the
spin, so the admissible charges of level ``k`` are ``0, 1, ..., k``.

Conventions
-----------
``F[a, b, c, d, e, f]`` is the entry ``[F^{abc}_d]_{e f}`` relating the two
bracketings of three anyons with total charge ``d``::

    |(a b)_e c; d>  =  sum_f [F^{abc}_d]_{e f} |a (b c)_f; d>

``R[a, b, c]`` is the phase picked up by a counter-clockwise exchange of ``a``
and ``b`` fused to ``c``.  The Fibonacci model uses the chirality with
``R^{tau tau}_1 = exp(4 pi i / 5)``; ``su(2)_k`` uses
``R^{ab}_c = (-1)^{(a+b-c)/2} q^{(c(c+2) - a(a+2) - b(b+2))/8}``.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from pathlib import Path

import numpy as np

__all__ = [
    "AnyonError",
    "LevelOutOfRange",
    "MissingSymbol",
    "UnknownLabel",
    "ModelVerificationError",
    "FusionRules",
    "AnyonModel",
    "ConsistencyReport",
    "su2k_model",
    "fibonacci_model",
    "ising_model",
    "trivial_model",
    "named_model",
    "MODEL_NAMES",
    "verify_pentagon",
    "verify_hexagon",
    "verify_unitarity",
    "quantum_dimension",
    "model_to_json",
    "model_from_json",
    "load_model",
    "DEFAULT_TOL",
    "MAX_LEVEL",
]

DEFAULT_TOL = 1e-9
MAX_LEVEL = 16


class AnyonError(Exception):
    """Base class for errors raised by the anyon-model layer."""


class LevelOutOfRange(AnyonError, ValueError):
    pass


class MissingSymbol(AnyonError, KeyError):
    pass


class UnknownLabel(AnyonError, KeyError):
    pass


class ModelVerificationError(AnyonError, ValueError):
    """An imported model failed its pentagon, hexagon or unitarity check."""


@dataclass(frozen=True)
class FusionRules:
    """Commutative multiplicity-free fusion rules.

    ``triples`` holds every ``(a, b, c)`` with ``N(a, b, c) = 1``.
    """

    labels: tuple[int, ...]
    unit: int
    dual: dict[int, int]
    triples: frozenset[tuple[int, int, int]]
    names: tuple[str, ...] = ()

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("duplicate labels")
        if self.unit not in self.labels:
            raise ValueError(f"unit {self.unit} is not a label")
        if not self.names:
            object.__setattr__(self, "names", tuple(str(a) for a in self.labels))
        if len(self.names) != len(self.labels):
            raise ValueError("names must align with labels")

    def __hash__(self):
        return hash((self.labels, self.unit, self.triples))

    def N(self, a: int, b: int, c: int) -> int:
        return 1 if (a, b, c) in self.triples else 0

    @cached_property
    def _products(self) -> dict[tuple[int, int], tuple[int, ...]]:
        out: dict[tuple[int, int], list[int]] = {}
        for a, b, c in sorted(self.triples):
            out.setdefault((a, b), []).append(c)
        return {key: tuple(v) for key, v in out.items()}

    def fuse(self, a: int, b: int) -> tuple[int, ...]:
        """Outcomes of fusing ``a`` with ``b``, sorted by label id."""
        return self._products.get((a, b), ())

    def index(self, a: int) -> int:
        try:
            return self.labels.index(a)
        except ValueError:
            raise UnknownLabel(a) from None

    def name(self, a: int) -> str:
        return self.names[self.index(a)]

    def fusion_matrix(self, a: int) -> np.ndarray:
        """``(N_a)_{bc} = N(a, b, c)`` over label positions."""
        n = len(self.labels)
        m = np.zeros((n, n))
        for b in self.labels:
            for c in self.fuse(a, b):
                m[self.index(b), self.index(c)] = 1.0
        return m


@dataclass(frozen=True, eq=False)
class AnyonModel:
    """Fusion rules together with F- and R-symbols.

    Instances are treated as immutable; equality and hashing are by identity,
    which lets models key the braid-matrix cache.
    """

    rules: FusionRules
    F: dict[tuple[int, int, int, int, int, int], complex]
    R: dict[tuple[int, int, int], complex]
    level: int | None = None
    name: str = ""
    aliases: dict[str, int] = field(default_factory=dict)

    @property
    def labels(self) -> tuple[int, ...]:
        return self.rules.labels

    @property
    def unit(self) -> int:
        return self.rules.unit

    def N(self, a: int, b: int, c: int) -> int:
        return self.rules.N(a, b, c)

    def fuse(self, a: int, b: int) -> tuple[int, ...]:
        return self.rules.fuse(a, b)

    def label(self, name: str) -> int:
        """Resolve a label by display name or alias."""
        if name in self.aliases:
            return self.aliases[name]
        if name in self.rules.names:
            return self.rules.labels[self.rules.names.index(name)]
        raise UnknownLabel(name)

    def label_name(self, a: int) -> str:
        return self.rules.name(a)

    def check_label(self, a: int) -> int:
        if a not in self.rules.labels:
            raise UnknownLabel(a)
        return a

    def f_block_indices(self, a, b, c, d) -> tuple[list[int], list[int]]:
        """Admissible row (``e``) and column (``f``) charges of ``F^{abc}_d``."""
        rows = [e for e in self.fuse(a, b) if self.N(e, c, d)]
        cols = [f for f in self.fuse(b, c) if self.N(a, f, d)]
        return rows, cols

    def f_block(self, a, b, c, d) -> np.ndarray:
        rows, cols = self.f_block_indices(a, b, c, d)
        m = np.zeros((len(rows), len(cols)), dtype=complex)
        for i, e in enumerate(rows):
            for j, f in enumerate(cols):
                m[i, j] = self.f_symbol(a, b, c, d, e, f)
        return m

    def f_symbol(self, a, b, c, d, e, f) -> complex:
        try:
            return self.F[a, b, c, d, e, f]
        except KeyError:
            raise MissingSymbol((a, b, c, d, e, f)) from None

    def r_symbol(self, a, b, c) -> complex:
        try:
            return self.R[a, b, c]
        except KeyError:
            raise MissingSymbol((a, b, c)) from None


@dataclass(frozen=True)
class ConsistencyReport:
    residual: float
    worst: tuple[int, ...] | None
    passed: bool
    tol: float


def _rules_from_triples(labels, unit, triples, names=()) -> FusionRules:
    triples = frozenset(triples)
    dual = {}
    for a in labels:
        duals = [b for b in labels if (a, b, unit) in triples]
        if len(duals) != 1:
            raise ValueError(f"label {a} has {len(duals)} duals")
        dual[a] = duals[0]
    return FusionRules(tuple(labels), unit, dual, triples, tuple(names))


def _admissible_tuples(model: AnyonModel):
    for a, b, c, d in itertools.product(model.labels, repeat=4):
        rows, cols = model.f_block_indices(a, b, c, d)
        for e in rows:
            for f in cols:
                yield a, b, c, d, e, f


# ---------------------------------------------------------------------------
# su(2)_k


def _su2k_admissible(k: int, a: int, b: int, c: int) -> bool:
    return abs(a - b) <= c <= min(a + b, 2 * k - a - b) and (a + b + c) % 2 == 0


def su2k_model(k: int) -> AnyonModel:
    """The ``su(2)_k`` anyon model with labels ``0..k`` (twice the spin).

    F-symbols are the unitary-normalised q-deformed 6j symbols at
    ``q = exp(2 pi i / (k + 2))``.
    """
    if not isinstance(k, (int, np.integer)) or k < 1 or k > MAX_LEVEL:
        raise LevelOutOfRange(f"level must be in 1..{MAX_LEVEL}, got {k!r}")
    k = int(k)
    labels = tuple(range(k + 1))
    triples = [
        (a, b, c)
        for a, b, c in itertools.product(labels, repeat=3)
        if _su2k_admissible(k, a, b, c)
    ]
    rules = _rules_from_triples(labels, 0, triples)

    # the Racah sum reaches [z+1]! with z+1 > k+1; those terms carry [k+2] = 0
    top = 2 * k + 4
    qint = [math.sin(math.pi * n / (k + 2)) / math.sin(math.pi / (k + 2)) for n in range(top)]
    qint[k + 2] = 0.0
    qfact = [1.0]
    for n in range(1, top):
        qfact.append(qfact[-1] * qint[n])

    def triangle(a, b, c):
        return math.sqrt(
            qfact[(a + b - c) // 2] * qfact[(a - b + c) // 2] * qfact[(b + c - a) // 2]
            / qfact[(a + b + c) // 2 + 1]
        )

    def six_j(j1, j2, j3, j4, j5, j6):
        # Racah sum; arguments in 2j units, triads (123) (156) (426) (453)
        tri = ((j1 + j2 + j3) // 2, (j1 + j5 + j6) // 2, (j4 + j2 + j6) // 2, (j4 + j5 + j3) // 2)
        quad = ((j1 + j2 + j4 + j5) // 2, (j2 + j3 + j5 + j6) // 2, (j3 + j1 + j6 + j4) // 2)
        total = 0.0
        for z in range(max(tri), min(quad) + 1):
            den = 1.0
            for t in tri:
                den *= qfact[z - t]
            for p in quad:
                den *= qfact[p - z]
            total += (-1) ** z * qfact[z + 1] / den
        return (
            triangle(j1, j2, j3) * triangle(j1, j5, j6)
            * triangle(j4, j2, j6) * triangle(j4, j5, j3) * total
        )

    model_stub = AnyonModel(rules, {}, {})
    F = {}
    for a, b, c, d in itertools.product(labels, repeat=4):
        rows, cols = model_stub.f_block_indices(a, b, c, d)
        for e in rows:
            for f in cols:
                sign = -1.0 if ((a + b + c + d) // 2) % 2 else 1.0
                F[a, b, c, d, e, f] = complex(
                    sign * math.sqrt(qint[e + 1] * qint[f + 1]) * six_j(a, b, e, c, d, f)
                )

    q = np.exp(2j * np.pi / (k + 2))
    R = {}
    for a, b, c in triples:
        sign = -1.0 if ((a + b - c) // 2) % 2 else 1.0
        R[a, b, c] = complex(sign * q ** ((c * (c + 2) - a * (a + 2) - b * (b + 2)) / 8))

    model = AnyonModel(rules, F, R, level=k, name=f"su2_{k}")
    if not verify_hexagon(model).passed:
        # the other chirality; F is real so conjugating R is the only freedom used
        model = AnyonModel(rules, F, {key: v.conjugate() for key, v in R.items()}, level=k, name=f"su2_{k}")
    return model


# ---------------------------------------------------------------------------
# named models

PHI = (1 + math.sqrt(5)) / 2


def fibonacci_model() -> AnyonModel:
    """Fibonacci anyons: labels ``1`` (id 0) and ``tau`` (id 1)."""
    one, tau = 0, 1
    triples = [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0), (1, 1, 1)]
    rules = _rules_from_triples((one, tau), one, triples, names=("1", "tau"))
    stub = AnyonModel(rules, {}, {})
    F = {key: 1.0 + 0j for key in _admissible_tuples(stub)}
    block = np.array([[1 / PHI, 1 / math.sqrt(PHI)], [1 / math.sqrt(PHI), -1 / PHI]])
    for i, e in enumerate((one, tau)):
        for j, f in enumerate((one, tau)):
            F[tau, tau, tau, tau, e, f] = complex(block[i, j])
    R = {
        (0, 0, 0): 1 + 0j,
        (0, 1, 1): 1 + 0j,
        (1, 0, 1): 1 + 0j,
        (1, 1, 0): complex(np.exp(4j * np.pi / 5)),
        (1, 1, 1): complex(np.exp(-3j * np.pi / 5)),
    }
    return AnyonModel(rules, F, R, level=None, name="fibonacci", aliases={"τ": tau, "one": one})


def ising_model() -> AnyonModel:
    """Ising anyons: ``1`` (id 0), ``sigma`` (id 1), ``psi`` (id 2)."""
    one, sigma, psi = 0, 1, 2
    triples = [
        (0, 0, 0), (0, 1, 1), (0, 2, 2), (1, 0, 1), (2, 0, 2),
        (1, 1, 0), (1, 1, 2), (1, 2, 1), (2, 1, 1), (2, 2, 0),
    ]
    rules = _rules_from_triples((one, sigma, psi), one, triples, names=("1", "sigma", "psi"))
    stub = AnyonModel(rules, {}, {})
    F = {key: 1.0 + 0j for key in _admissible_tuples(stub)}
    h = 1 / math.sqrt(2)
    for (i, e), (j, f) in itertools.product(enumerate((one, psi)), repeat=2):
        F[sigma, sigma, sigma, sigma, e, f] = complex(-h if (i, j) == (1, 1) else h)
    F[sigma, psi, sigma, psi, sigma, sigma] = -1 + 0j
    F[psi, sigma, psi, sigma, sigma, sigma] = -1 + 0j
    R = {key: 1 + 0j for key in triples if one in key[:2]}
    R[sigma, sigma, one] = complex(np.exp(-1j * np.pi / 8))
    R[sigma, sigma, psi] = complex(np.exp(3j * np.pi / 8))
    R[sigma, psi, sigma] = -1j
    R[psi, sigma, sigma] = -1j
    R[psi, psi, one] = -1 + 0j
    aliases = {"σ": sigma, "ψ": psi, "one": one}
    return AnyonModel(rules, F, R, level=2, name="ising", aliases=aliases)


def trivial_model() -> AnyonModel:
    """The single-label model (only the vacuum)."""
    rules = _rules_from_triples((0,), 0, [(0, 0, 0)], names=("1",))
    return AnyonModel(rules, {(0, 0, 0, 0, 0, 0): 1 + 0j}, {(0, 0, 0): 1 + 0j}, name="trivial")


MODEL_NAMES = ("fibonacci", "ising", "trivial", "su2_<k>")


@lru_cache(maxsize=None)
def named_model(name: str) -> AnyonModel:
    """Look up a built-in model: ``fibonacci``, ``ising``, ``trivial`` or ``su2_<k>``."""
    if name == "fibonacci":
        return fibonacci_model()
    if name == "ising":
        return ising_model()
    if name == "trivial":
        return trivial_model()
    for prefix in ("su2_", "su2k_", "su2k"):
        rest = name[len(prefix):]
        if name.startswith(prefix) and rest.isascii() and rest.isdigit() and len(rest) <= 3:
            return su2k_model(int(rest))
    raise KeyError(name)


# ---------------------------------------------------------------------------
# coherence checks


def _report(residual, worst, tol) -> ConsistencyReport:
    return ConsistencyReport(float(residual), worst, bool(residual <= tol), tol)


def verify_pentagon(model: AnyonModel, tol: float = DEFAULT_TOL) -> ConsistencyReport:
    """Largest violation of the pentagon identity over admissible tuples.

    For anyons ``a, b, c, d`` with total ``e``::

        F^{fcd}_e[g,l] F^{abl}_e[f,k] = sum_h F^{abc}_g[f,h] F^{ahd}_e[g,k] F^{bcd}_k[h,l]
    """
    F = model.f_symbol
    fuse = model.fuse
    residual, worst = 0.0, None
    for a, b, c, d in itertools.product(model.labels, repeat=4):
        for f in fuse(a, b):
            for g in fuse(f, c):
                for e in fuse(g, d):
                    for l in fuse(c, d):
                        if not model.N(f, l, e):
                            continue
                        for k in fuse(b, l):
                            if not model.N(a, k, e):
                                continue
                            lhs = F(f, c, d, e, g, l) * F(a, b, l, e, f, k)
                            rhs = 0j
                            for h in fuse(b, c):
                                if model.N(a, h, g) and model.N(h, d, k):
                                    rhs += F(a, b, c, g, f, h) * F(a, h, d, e, g, k) * F(b, c, d, k, h, l)
                            r = abs(lhs - rhs)
                            if r > residual:
                                residual, worst = r, (a, b, c, d, e, f, g, k, l)
    return _report(residual, worst, tol)


def verify_hexagon(model: AnyonModel, tol: float = DEFAULT_TOL) -> ConsistencyReport:
    """Largest violation of both hexagon identities.

    ``R^{ca}_e F^{acb}_d[e,g] R^{cb}_g = sum_f F^{cab}_d[e,f] R^{cf}_d F^{abc}_d[f,g]``
    and the same with every R replaced by its inverse.
    """
    F, R = model.f_symbol, model.r_symbol
    fuse = model.fuse
    residual, worst = 0.0, None
    for a, b, c, d in itertools.product(model.labels, repeat=4):
        for e in fuse(c, a):
            if not model.N(e, b, d):
                continue
            for g in fuse(c, b):
                if not model.N(a, g, d):
                    continue
                for chirality, op in ((1, lambda z: z), (-1, lambda z: z.conjugate())):
                    lhs = op(R(c, a, e)) * F(a, c, b, d, e, g) * op(R(c, b, g))
                    rhs = 0j
                    for f in fuse(a, b):
                        if model.N(c, f, d):
                            rhs += F(c, a, b, d, e, f) * op(R(c, f, d)) * F(a, b, c, d, f, g)
                    r = abs(lhs - rhs)
                    if r > residual:
                        residual, worst = r, (chirality, a, b, c, d, e, g)
    return _report(residual, worst, tol)


def verify_unitarity(model: AnyonModel, tol: float = DEFAULT_TOL) -> ConsistencyReport:
    """Unitarity defect of every F-block and of every R-phase."""
    residual, worst = 0.0, None
    for a, b, c, d in itertools.product(model.labels, repeat=4):
        rows, cols = model.f_block_indices(a, b, c, d)
        if not rows and not cols:
            continue
        if len(rows) != len(cols):
            return _report(math.inf, (a, b, c, d), tol)
        m = model.f_block(a, b, c, d)
        r = float(np.max(np.abs(m.conj().T @ m - np.eye(len(rows)))))
        if r > residual:
            residual, worst = r, (a, b, c, d)
    for key in sorted(model.rules.triples):
        r = abs(abs(model.r_symbol(*key)) - 1.0)
        if r > residual:
            residual, worst = r, key
    return _report(residual, worst, tol)


def quantum_dimension(model: AnyonModel, a: int) -> float:
    """Perron-Frobenius eigenvalue of the fusion matrix of ``a``."""
    model.check_label(a)
    if a == model.unit:
        return 1.0
    eig = np.linalg.eigvals(model.rules.fusion_matrix(a))
    return float(np.max(eig.real))


# ---------------------------------------------------------------------------
# JSON documents


def model_to_json(model: AnyonModel) -> dict:
    rules = model.rules
    return {
        "name": model.name,
        "level": model.level,
        "labels": list(rules.labels),
        "names": list(rules.names),
        "unit": rules.unit,
        "dual": [rules.dual[a] for a in rules.labels],
        "N": [list(t) for t in sorted(rules.triples)],
        "F": [
            {"a": a, "b": b, "c": c, "d": d, "e": e, "f": f, "re": v.real, "im": v.imag}
            for (a, b, c, d, e, f), v in sorted(model.F.items())
        ],
        "R": [
            {"a": a, "b": b, "c": c, "re": v.real, "im": v.imag}
            for (a, b, c), v in sorted(model.R.items())
        ],
    }


def model_from_json(doc: dict, tol: float = DEFAULT_TOL, verify: bool = True) -> AnyonModel:
    """Build a model from its JSON document, rejecting inconsistent data.

    Raises ``ModelVerificationError`` when pentagon, hexagon or unitarity
    residuals exceed ``tol``, and ``MissingSymbol`` on an incomplete table.
    """
    try:
        labels = tuple(int(a) for a in doc["labels"])
        triples = [tuple(int(x) for x in t) for t in doc["N"]]
        rules = FusionRules(
            labels,
            int(doc["unit"]),
            {a: int(d) for a, d in zip(labels, doc["dual"])},
            frozenset(triples),
            tuple(doc.get("names") or ()),
        )
        F = {
            tuple(int(x[k]) for k in "abcdef"): complex(float(x["re"]), float(x["im"]))
            for x in doc["F"]
        }
        R = {
            tuple(int(x[k]) for k in "abc"): complex(float(x["re"]), float(x["im"]))
            for x in doc["R"]
        }
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelVerificationError(f"malformed model document: {exc}") from exc
    level = doc.get("level")
    model = AnyonModel(rules, F, R, level=None if level is None else int(level), name=str(doc.get("name", "")))
    if verify:
        for check in (verify_unitarity, verify_pentagon, verify_hexagon):
            report = check(model, tol)
            if not report.passed:
                raise ModelVerificationError(
                    f"{check.__name__} failed: residual {report.residual:.3e} at {report.worst}"
                )
    return model


def load_model(name_or_path: str | Path, tol: float = DEFAULT_TOL) -> AnyonModel:
    """A built-in model by name, or a model JSON file by path."""
    try:
        return named_model(str(name_or_path))
    except KeyError:
        pass
    path = Path(name_or_path)
    if not path.is_file():
        raise KeyError(str(name_or_path))
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ModelVerificationError(f"cannot read model file {path}: {exc}") from exc
    return model_from_json(doc, tol)
