"""Acceptance criteria 1 to 9, one test each.

Each test prints a ``PASS criterion N`` or ``FAIL criterion N`` line (visible
without ``-s``) before asserting.
"""

import dataclasses
import time

import pytest

from zxzw.cli import main
from zxzw.diagram import ZW, ZX, hadamard, zspider
from zxzw.harness import (
    HarnessConfig,
    check_ad,
    check_generators,
    check_lambda,
    check_replay,
    check_rewrites,
    check_roundtrip,
    check_rules,
    check_translated_rules,
    check_translations,
)
from zxzw.phase import Phase
from zxzw.rules import DEFAULT_GRID, catalog, check_rule_soundness, mutate
from zxzw.serialize import serialize

CFG = HarnessConfig(seed=0)


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
        assert ok, detail

    return emit


def _worst(recs):
    return max((r["max_deviation"] or 0.0) for r in recs)


def _ok(recs):
    return all(r["status"] == "pass" for r in recs)


def test_criterion_1_generator_semantics(report):
    t = time.perf_counter()
    recs = check_generators()
    dt = time.perf_counter() - t
    kinds = {r["generator"] for r in recs}
    want = {"triangle", "lambda", "h", "rgate", "cross", "bw", "bpi", "cap", "cup", "swap", "empty"}
    ok = _ok(recs) and kinds == want and _worst(recs) <= 1e-15 and dt < 1.0
    report(1, ok, f"{len(recs)} generators, max deviation {_worst(recs):.1e}, {dt:.2f}s")


def test_criterion_2_rule_soundness_and_mutation(report):
    t = time.perf_counter()
    recs = check_rules(ZX, CFG) + check_rules(ZW, CFG)
    names = {r["rule"] for r in recs}
    survivors = []
    for rule in catalog(ZX) + catalog(ZW):
        if check_rule_soundness(mutate(rule), DEFAULT_GRID, 1e-9).passed:
            survivors.append(rule.name)
    dt = time.perf_counter() - t
    ok = _ok(recs) and len(names) == 65 and not survivors and dt < 30
    report(2, ok, f"{len(names)} rules sound (max {_worst(recs):.1e}), surviving mutants {survivors}, {dt:.1f}s")


def test_criterion_3_lambda_elimination(report):
    recs = check_lambda(dataclasses.replace(CFG, lambda_samples=100))
    edge = {0.0, 1.0, 0.999, 2.0, 2.5}
    ok = _ok(recs) and len(recs) == 105 and edge <= {r["value"] for r in recs} and _worst(recs) <= 1e-9
    report(3, ok, f"{len(recs)} values, max deviation {_worst(recs):.1e}")


def test_criterion_4_translation(report):
    recs = check_translations(dataclasses.replace(CFG, random_terms=500))
    ok = _ok(recs) and all(r["samples"] == 500 for r in recs) and _worst(recs) <= 1e-9
    report(4, ok, f"500 terms per calculus, max deviation {_worst(recs):.1e}")


def test_criterion_5_roundtrip(report):
    recs = check_roundtrip(dataclasses.replace(CFG, random_terms=500))
    semantic = [r for r in recs if r["level"] == "semantic"]
    syntactic = [r for r in recs if r["level"] == "syntactic"]
    ok = _ok(recs) and semantic[0]["max_deviation"] <= 1e-9 and len(syntactic) == 5
    report(5, ok, f"semantic max deviation {semantic[0]['max_deviation']:.1e}, structural generators recovered exactly")


def test_criterion_6_translated_zw_rules(report):
    recs = check_translated_rules(CFG)
    names = {r["rule"] for r in recs}
    ok = _ok(recs) and len(names) == 33 and _worst(recs) <= 1e-9
    report(6, ok, f"{len(names)} ZW rules hold after translation, max deviation {_worst(recs):.1e}")


def test_criterion_7_ad_arithmetic(report):
    recs = check_ad(dataclasses.replace(CFG, ad_samples=1000))
    r = recs[0]
    ok = _ok(recs) and r["samples"] >= 1000 and r["max_deviation"] <= 1e-12 and r["cancellation"][0] == 0.0
    report(7, ok, f"{r['samples']} samples, max deviation {r['max_deviation']:.1e}, cancellation gives lambda 0")


def test_criterion_8_rewrite_soundness(report):
    rw = check_rewrites(dataclasses.replace(CFG, rewrite_samples=200))
    rp = check_replay()
    corrupted = [r for r in rp if r["case"] == "corrupted-step"][0]
    ok = _ok(rw) and rw[0]["applications"] == 200 and _ok(rp) and corrupted["failed_step"] == 2
    report(8, ok, f"200 applications (max {rw[0]['max_deviation']:.1e}), replay ok, corruption caught at step 2")


def test_criterion_9_determinism(report, tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    a.write_text(serialize(zspider(1, 2, Phase.real(0.4)) >> (hadamard() @ hadamard())))
    b.write_text(serialize(hadamard() >> hadamard() >> zspider(1, 2, Phase.real(0.4)) >> (hadamard() @ hadamard())))
    outs = []
    for k in range(2):
        out = tmp_path / f"run{k}.jsonl"
        code = main(["pipeline", str(a), str(b), "--seed", "42", "--out", str(out)])
        outs.append((code, out.read_bytes()))
    capsys.readouterr()
    ok = outs[0] == outs[1] and outs[0][0] == 0 and len(outs[0][1]) > 0
    report(9, ok, f"two seeded pipeline runs, {len(outs[0][1])} bytes each, identical={outs[0] == outs[1]}")
