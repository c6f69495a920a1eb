import io
import json
import subprocess
import sys

import pytest

from anyonlang.cli import dumps, run_cli

from conftest import CORPUS, NEGATIVE, POSITIVE, expected_code

MINIMAL = b"model fibonacci; config 4 of tau total 1; apply s1;\n"


class _Stdin(io.StringIO):
    def __init__(self, data: bytes):
        super().__init__()
        self.buffer = io.BytesIO(data)


def cli(*argv, stdin=b""):
    out, err = io.StringIO(), io.StringIO()
    code = run_cli([str(a) for a in argv], stdin=_Stdin(stdin), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_check_ok(tmp_path):
    path = tmp_path / "ok.tqp"
    path.write_bytes(MINIMAL)
    assert cli("check", path) == (0, "", "")


def test_check_bad(tmp_path):
    path = tmp_path / "bad.tqp"
    path.write_bytes(MINIMAL.replace(b"s1", b"s4"))
    code, out, _ = cli("check", path)
    assert code == 1
    (line,) = out.splitlines()
    assert "E102" in line and f"{path}:1:" in line


def test_check_json_diagnostic(tmp_path):
    path = tmp_path / "bad.tqp"
    path.write_bytes(MINIMAL.replace(b"s1", b"s4"))
    code, out, _ = cli("check", path, "--format", "json")
    doc = json.loads(out)
    assert code == 1 and doc["code"] == "E102" and doc["line"] == 1


def test_model_fibonacci_json():
    code, out, _ = cli("model", "fibonacci", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["labels"] == ["1", "tau"]
    assert abs(doc["quantum_dimensions"]["tau"] - 1.6180339887) < 1e-10
    assert all(v < 1e-9 for v in doc["residuals"].values())
    assert doc["pass"] is True


def test_model_text():
    code, out, _ = cli("model", "ising")
    assert code == 0
    assert "sigma" in out and "1.414213562373" in out and "pentagon residual" in out


def test_model_export_round_trip(tmp_path):
    code, out, _ = cli("model", "su2_3", "--export")
    assert code == 0
    path = tmp_path / "su2_3.json"
    path.write_text(out)
    code, out2, _ = cli("model", path, "--format", "json")
    assert code == 0 and json.loads(out2)["pass"] is True


def test_model_rejects_inconsistent_import():
    code, out, err = cli("model", CORPUS / "models" / "fibonacci_perturbed.json")
    assert code == 1 and "rejected" in err
    assert cli("model", "nonesuch")[0] == 1


def test_usage_errors():
    assert cli()[0] == 2
    assert cli("frobnicate")[0] == 2
    assert cli("check")[0] == 2
    assert cli("model", "fibonacci", "--bogus")[0] == 2
    assert cli("run", "x.tqp", "--emit", "everything")[0] == 2
    code, out, _ = cli("--help")
    assert code == 0 and "usage" in out


def test_run_stdin_json():
    src = b"model fibonacci; config 4 of tau total 1; apply s2; emit unitary; emit state; measure edge 1;"
    code, out, _ = cli("run", "-", "--format", "json", stdin=src)
    assert code == 0
    docs = [json.loads(line) for line in out.splitlines()]
    assert [d["kind"] for d in docs] == ["unitary", "state", "measure"]
    assert docs[0]["dim"] == 2
    assert abs(sum(p["probability"] for p in docs[2]["distribution"]) - 1) < 1e-12
    code, out, _ = cli("run", "-", "--format", "json", "--emit", "measure", stdin=src)
    assert [json.loads(line)["kind"] for line in out.splitlines()] == ["measure"]


def test_run_reports_diagnostics_on_stderr():
    code, out, err = cli("run", "-", stdin=MINIMAL.replace(b"s1", b"s9"))
    assert code == 1 and out == "" and "E102" in err


def test_missing_file():
    code, _, err = cli("check", "/nonexistent/file.tqp")
    assert code == 1 and "cannot read" in err


def test_output_flag(tmp_path):
    target = tmp_path / "out.json"
    code, out, _ = cli("model", "fibonacci", "--format", "json", "--output", target)
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["name"] == "fibonacci"


def test_synth_preset():
    code, out, _ = cli("synth", "--model", "fibonacci", "--config", "4 of tau total 1",
                       "--preset", "Z", "--max-len", "6", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["word"] == "s1 s1 s1 s1 s1" and doc["distance"] == 0


def test_synth_target_file_and_sk(tmp_path):
    target = tmp_path / "h.json"
    h = 2 ** -0.5
    target.write_text(json.dumps({"dim": 2, "entries": [[h, 0], [h, 0], [h, 0], [-h, 0]]}))
    code, out, _ = cli("synth", "--model", "fibonacci", "--config", "4 of tau total 1",
                       "--target", target, "--max-len", "6", "--sk-depth", "1", "--format", "json")
    assert code == 0
    assert json.loads(out)["distance"] < 0.0842


def test_synth_errors():
    base = ["synth", "--model", "fibonacci", "--preset", "X"]
    assert cli(*base, "--config", "four taus")[0] == 2
    assert cli(*base, "--config", "2 of tau total tau")[0] == 1  # dim 1 vs 2x2 target
    assert cli(*base, "--config", "2 of tau total 1", "--max-len", "99")[0] == 1
    assert cli(*base, "--config", "3 of tau total 1")[0] == 1


def test_dumps_format():
    assert dumps({"b": 0.1, "a": [1, True, None]}) == '{"a":[1,true,null],"b":0.10000000000000001}'


@pytest.mark.parametrize("path", POSITIVE, ids=lambda p: p.name)
def test_positive_corpus_exit_codes_and_stability(path):
    for argv in (["check", path], ["run", path], ["run", path, "--format", "json"]):
        first = cli(*argv)
        assert first[0] == 0, first
        assert cli(*argv) == first


@pytest.mark.parametrize("path", NEGATIVE, ids=lambda p: p.name)
def test_negative_corpus_exit_codes(path):
    code, out, _ = cli("check", path)
    assert code == 1 and expected_code(path) in out
    assert cli("run", path)[0] == 1


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "anyonlang", "model", "fibonacci", "--format", "json"],
        capture_output=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["labels"] == ["1", "tau"]
