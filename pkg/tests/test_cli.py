import json

import numpy as np
import pytest

from zxzw.cli import main
from zxzw.diagram import hadamard, identity, phase_gate, rgate, zspider
from zxzw.harness import example_derivation
from zxzw.phase import Phase
from zxzw.semantics import interpret, matrix_from_json, max_deviation
from zxzw.serialize import deserialize, serialize


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        p = tmp_path / name
        p.write_text(obj if isinstance(obj, str) else serialize(obj))
        return str(p)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def records(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def test_interpret(files, capsys):
    code, out, _ = run(capsys, "interpret", files("h.json", hadamard()))
    assert code == 0
    m = matrix_from_json(json.loads(out))
    assert max_deviation(m, interpret(hadamard())) == 0


def test_malformed_input_exits_2(files, capsys):
    assert run(capsys, "interpret", files("bad.json", "{not json"))[0] == 2
    assert run(capsys, "interpret", files("unk.json", '{"gen": "nope"}'))[0] == 2
    assert run(capsys, "interpret", "/nonexistent/file.json")[0] == 2
    assert run(capsys, "decompose", "-1")[0] == 2


def test_verify_equiv_and_pipeline(files, capsys):
    hh, i = files("hh.json", hadamard() >> hadamard()), files("id.json", identity())
    assert run(capsys, "verify-equiv", hh, i)[0] == 0
    code, out, _ = run(capsys, "pipeline", hh, i)
    assert code == 0
    recs = records(out)
    assert all(r["status"] == "pass" for r in recs)
    a = files("a.json", phase_gate(Phase.pi(1, 2)))
    b = files("b.json", phase_gate(Phase.pi(1, 3)))
    code, out, _ = run(capsys, "pipeline", a, b)
    assert code == 1
    assert any(r["status"] == "fail" for r in records(out))


def test_pipeline_arity_mismatch_is_input_error(files, capsys):
    code, _, _ = run(capsys, "verify-equiv", files("a.json", hadamard()), files("b.json", zspider(1, 2)))
    assert code == 2


def test_pipeline_is_deterministic(files, capsys):
    a = files("a.json", zspider(1, 1, Phase.real(0.4)) >> hadamard())
    b = files("b.json", hadamard() >> zspider(1, 1, Phase.real(0.4)))
    first = run(capsys, "pipeline", a, b, "--seed", "7")
    second = run(capsys, "pipeline", a, b, "--seed", "7")
    assert first == second


def test_seed_env_override(files, capsys, monkeypatch):
    a = files("a.json", hadamard())
    monkeypatch.setenv("ZXZW_SEED", "99")
    _, out, _ = run(capsys, "pipeline", a, a, "--seed", "1")
    cfg = records(out)[0]
    assert cfg.get("seed") == 99


def test_translate_and_roundtrip(files, capsys):
    code, out, _ = run(capsys, "translate", files("z.json", zspider(1, 2, Phase.real(0.3))), "--to", "zw")
    assert code == 0
    zw = deserialize(out)
    assert zw.calculus == "ZW"
    code, out, _ = run(capsys, "translate", files("r.json", rgate(1j)), "--to", "zx")
    assert code == 0 and deserialize(out).calculus == "ZX"
    assert run(capsys, "translate", files("r2.json", rgate(1j)), "--to", "zw")[0] == 2
    code, out, _ = run(capsys, "roundtrip", files("h.json", hadamard()))
    assert code == 0 and records(out)[0]["status"] == "pass"


def test_decompose(capsys):
    code, out, _ = run(capsys, "decompose", "2.5")
    assert code == 0
    d = deserialize(out)
    assert max_deviation(interpret(d), np.diag([1, 2.5])) <= 1e-9


def test_replay(files, capsys, tmp_path):
    doc = example_derivation().to_json()
    code, out, _ = run(capsys, "replay", files("d.json", json.dumps(doc)))
    assert code == 0 and records(out)[0]["steps_applied"] == 3
    doc["steps"][2]["site"] = [0, 2]
    code, out, _ = run(capsys, "replay", files("bad.json", json.dumps(doc)))
    assert code == 1 and records(out)[0]["failed_step"] == 2
    assert run(capsys, "replay", files("junk.json", '{"steps": []}'))[0] == 2


def test_check_rules_and_summary(capsys, tmp_path):
    out_file = tmp_path / "rules.jsonl"
    code, out, err = run(capsys, "check-rules", "zx", "--summary", "--out", str(out_file))
    assert code == 0 and out == ""
    recs = records(out_file.read_text())
    assert {r["rule"] for r in recs} >= {"S1", "AD", "TR14"}
    assert "PASS" in err


def test_tolerance_related_flag(capsys):
    # an impossible tolerance fails, and the failure is marked as float noise
    code, out, _ = run(capsys, "check-rules", "zx", "--tol", "1e-17")
    assert code == 1
    fails = [r for r in records(out) if r["status"] == "fail"]
    assert fails and all(r.get("tolerance_related") for r in fails)
