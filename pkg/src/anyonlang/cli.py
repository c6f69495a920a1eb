"""Command-line front end: ``anyonlang {model,check,run,synth}``.

Exit codes: 0 success, 1 domain error (diagnostics, failed verification,
unreadable input), 2 usage error.  JSON output is one document per line with
sorted keys and floats printed to 17 significant digits.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from pathlib import Path

import numpy as np

from . import anyon_data as ad
from .braiding import unitary_from_json, unitary_to_json
from .fusion_space import Boundary, dim, state_to_json
from .lang import DiagnosticError, StateEmission, UnitaryEmission, evaluate, parse, typecheck
from .synth import PRESETS, SeedTooCoarse, brute_force_synth, sk_refine

__all__ = ["main", "run_cli", "dumps"]


class _UsageError(Exception):
    pass


class _DomainError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def print_help(self, file=None):
        raise _HelpExit(self.format_help())

    def error(self, message):
        raise _UsageError(f"{self.format_usage()}{self.prog}: error: {message}\n")

    def exit(self, status=0, message=None):
        raise _UsageError(message or "") if status else _HelpExit(message or "")


class _HelpExit(Exception):
    pass


def _float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        raise ValueError("non-finite float in JSON output")
    return "%.17g" % x


def dumps(obj) -> str:
    """Compact JSON with sorted keys and 17-significant-digit floats."""
    if isinstance(obj, dict):
        items = sorted(obj.items())
        return "{" + ",".join(f"{json.dumps(str(k))}:{dumps(v)}" for k, v in items) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(dumps(v) for v in obj) + "]"
    if isinstance(obj, (bool, np.bool_)) or obj is None:
        return json.dumps(None if obj is None else bool(obj))
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _float(float(obj))
    return json.dumps(str(obj))


def _build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--output", default=None, help="write to this path instead of stdout")
    common.add_argument("--tol", type=float, default=ad.DEFAULT_TOL)

    parser = _Parser(prog="anyonlang", description="Topological quantum programs over su(2)_k anyons.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("model", parents=[common], help="inspect and verify an anyon model")
    p.add_argument("model", help="built-in name (fibonacci, ising, trivial, su2_<k>) or JSON path")
    p.add_argument("--export", action="store_true", help="print the model JSON document")

    p = sub.add_parser("check", parents=[common], help="parse and typecheck a .tqp program")
    p.add_argument("file", help="program path, or - for stdin")

    p = sub.add_parser("run", parents=[common], help="evaluate a .tqp program")
    p.add_argument("file", help="program path, or - for stdin")
    p.add_argument("--emit", choices=("unitary", "state", "measure"), default=None,
                   help="only print emissions of this kind")

    p = sub.add_parser("synth", parents=[common], help="find a braid word for a target gate")
    p.add_argument("--model", required=True)
    p.add_argument("--config", required=True, help='e.g. "4 of tau total 1"')
    target = p.add_mutually_exclusive_group(required=True)
    target.add_argument("--preset", choices=sorted(PRESETS))
    target.add_argument("--target", help="path to a unitary JSON document")
    p.add_argument("--max-len", type=int, default=8)
    p.add_argument("--sk-depth", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    return parser


def _read_source(path: str, stdin) -> tuple[bytes, Path | None, str]:
    if path == "-":
        data = stdin.buffer.read() if hasattr(stdin, "buffer") else stdin.read()
        return (data.encode() if isinstance(data, str) else data), None, "<stdin>"
    try:
        return Path(path).read_bytes(), Path(path).parent, path
    except OSError as exc:
        raise _DomainError(f"cannot read {path}: {exc.strerror}") from exc


def _load_model(name_or_path: str, tol: float) -> ad.AnyonModel:
    try:
        return ad.load_model(name_or_path, tol)
    except (KeyError, ad.LevelOutOfRange):
        raise _DomainError(f"unknown model {name_or_path!r}") from None
    except (ad.ModelVerificationError, ad.MissingSymbol) as exc:
        raise _DomainError(f"model {name_or_path!r} rejected: {exc}") from None


# ---------------------------------------------------------------------------
# subcommands


def _cmd_model(args, out: list[str], stdin):
    model = _load_model(args.model, args.tol)
    if args.export:
        out.append(dumps(ad.model_to_json(model)))
        return 0
    reports = {
        "pentagon": ad.verify_pentagon(model, args.tol),
        "hexagon": ad.verify_hexagon(model, args.tol),
        "unitarity": ad.verify_unitarity(model, args.tol),
    }
    names = [model.label_name(a) for a in model.labels]
    qdims = [ad.quantum_dimension(model, a) for a in model.labels]
    passed = all(r.passed for r in reports.values())
    if args.format == "json":
        out.append(dumps({
            "name": model.name,
            "level": model.level,
            "labels": names,
            "label_ids": list(model.labels),
            "unit": model.label_name(model.unit),
            "quantum_dimensions": dict(zip(names, qdims)),
            "residuals": {k: r.residual for k, r in reports.items()},
            "tol": args.tol,
            "pass": passed,
        }))
    else:
        out.append(f"model {model.name}" + (f" (level {model.level})" if model.level is not None else ""))
        out.append(f"{'id':>4}  {'label':<8}{'dual':<8}quantum dimension")
        for a, name, d in zip(model.labels, names, qdims):
            out.append(f"{a:>4}  {name:<8}{model.label_name(model.rules.dual[a]):<8}{d:.12f}")
        for key, r in reports.items():
            out.append(f"{key} residual {r.residual:.3e} {'ok' if r.passed else 'FAIL'}")
    return 0 if passed else 1


def _diagnostics(exc: DiagnosticError, name: str, fmt: str) -> list[str]:
    if fmt == "json":
        return [dumps({**d.to_json(), "file": name}) for d in exc.diagnostics]
    return [d.render(name) for d in exc.diagnostics]


def _compile(args, stdin):
    """Returns ``(typed_program, None)`` or ``(None, DiagnosticError)`` plus the display name."""
    data, base, name = _read_source(args.file, stdin)
    try:
        return typecheck(parse(data), base_dir=base), None, name
    except DiagnosticError as exc:
        return None, exc, name


def _cmd_check(args, out, stdin):
    _, err, name = _compile(args, stdin)
    if err is not None:
        out.extend(_diagnostics(err, name, args.format))
        return 1
    return 0


def _fmt_complex(z: complex) -> str:
    return f"{z.real:+.12f}{z.imag:+.12f}i"


def _emission_text(em, model) -> list[str]:
    if isinstance(em, UnitaryEmission):
        u = em.unitary
        return [f"unitary dim={u.shape[0]}"] + ["  " + " ".join(_fmt_complex(z) for z in row) for row in u]
    if isinstance(em, StateEmission):
        return [f"state dim={len(em.state.amplitudes)}"] + [
            f"  {i}: {_fmt_complex(z)}" for i, z in enumerate(em.state.amplitudes)
        ]
    probs = ", ".join(f"{model.label_name(a)}={p:.12f}" for a, p in em.distribution)
    return [f"measure edge {em.edge}: {probs}"]


def _emission_json(em, model) -> dict:
    if isinstance(em, UnitaryEmission):
        return {"kind": "unitary", **unitary_to_json(em.unitary)}
    if isinstance(em, StateEmission):
        return {"kind": "state", **state_to_json(em.state)}
    return {
        "kind": "measure",
        "edge": em.edge,
        "distribution": [{"label": model.label_name(a), "probability": p} for a, p in em.distribution],
    }


def _cmd_run(args, out, stdin):
    tp, err, name = _compile(args, stdin)
    if err is not None:
        raise _DomainError("\n".join(_diagnostics(err, name, "text")))
    for em in evaluate(tp):
        if args.emit and em.kind != args.emit:
            continue
        if args.format == "json":
            out.append(dumps(_emission_json(em, tp.model)))
        else:
            out.extend(_emission_text(em, tp.model))
    return 0


_CONFIG = re.compile(r"\s*(\d+)\s+of\s+(\S+)\s+total\s+(\S+)\s*\Z")


def _cmd_synth(args, out, stdin):
    m = _CONFIG.match(args.config)
    if not m:
        raise _UsageError(f"--config must look like '4 of tau total 1', got {args.config!r}\n")
    model = _load_model(args.model, args.tol)
    try:
        n = int(m.group(1))
        boundary = Boundary(model, (model.label(m.group(2)),) * n, model.label(m.group(3)))
    except (ad.UnknownLabel, ValueError) as exc:
        raise _DomainError(f"bad configuration {args.config!r}: {exc}") from None
    if dim(boundary) == 0:
        raise _DomainError(f"configuration {args.config!r} has an empty state space")
    if args.preset:
        target = PRESETS[args.preset]
    else:
        try:
            target = unitary_from_json(json.loads(Path(args.target).read_text(encoding="utf-8")))
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise _DomainError(f"cannot read target {args.target}: {exc}") from None
    try:
        if args.sk_depth:
            result = sk_refine(
                boundary, target, {"max_len": args.max_len, "tol": args.tol, "workers": args.workers}, args.sk_depth
            )
        else:
            result = brute_force_synth(boundary, target, args.max_len, args.tol, workers=args.workers)
    except (ValueError, SeedTooCoarse) as exc:
        raise _DomainError(str(exc)) from None
    letters = [[i, s] for i, s in result.word.letters]
    if args.format == "json":
        out.append(dumps({
            "word": str(result.word),
            "letters": letters,
            "length": len(result.word),
            "distance": result.distance,
            "explored": result.explored,
            "depth_reached": result.depth_reached,
        }))
    else:
        out.append(f"word      {result.word}")
        out.append(f"length    {len(result.word)}")
        out.append(f"distance  {result.distance:.17g}")
        out.append(f"explored  {result.explored}")
        out.append(f"depth     {result.depth_reached}")
    return 0


_COMMANDS = {"model": _cmd_model, "check": _cmd_check, "run": _cmd_run, "synth": _cmd_synth}


def run_cli(argv, stdin=None, stdout=None, stderr=None) -> int:
    """Run one command; returns the exit code instead of exiting."""
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(list(argv))
        out: list[str] = []
        code = _COMMANDS[args.command](args, out, stdin)
    except _HelpExit as exc:
        stdout.write(str(exc) or parser.format_help())
        return 0
    except _UsageError as exc:
        stderr.write(str(exc))
        return 2
    except _DomainError as exc:
        stderr.write(f"{exc}\n")
        return 1
    text = "".join(line + "\n" for line in out)
    if args.output:
        try:
            Path(args.output).write_text(text, encoding="utf-8")
        except OSError as exc:
            stderr.write(f"cannot write {args.output}: {exc.strerror}\n")
            return 1
    else:
        stdout.write(text)
    return code


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))
