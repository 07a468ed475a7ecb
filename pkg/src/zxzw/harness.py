"""Verification harness: checks that emit deterministic JSON-lines records.

Every record has ``check``, ``anchor`` (the claim it exercises), ``status``
("pass" or "fail") and ``max_deviation``; failures carry a counterexample.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field

import numpy as np

from .diagram import ZW, ZX, Term
from .phase import Phase
from .random_terms import TermShape, random_terms
from .rules import DEFAULT_GRID, Grid, ad_compose, binding_to_json, catalog, check_rule_soundness, decompose_lambda
from .semantics import interpret, max_deviation, proportionality
from .serialize import term_to_json
from .translate import check_translated_zw_rules, roundtrip_zx, to_zw, to_zx

# a deviation this small is float noise, not a wrong rule
NOISE_FLOOR = 1e-9

ANCHORS = {
    "generator-semantics": "standard interpretation of each generator",
    "rule-soundness": "soundness of the rewrite rules",
    "lambda-elimination": "lambda boxes are expressible with Z and X phases",
    "translate-zx-zw": "ZX to ZW translation preserves interpretation",
    "translate-zw-zx": "ZW to ZX translation preserves interpretation",
    "roundtrip": "ZX to ZW and back recovers the diagram",
    "translated-zw-rules": "ZW rules still hold after translation to ZX",
    "ad-arithmetic": "addition rule side condition",
    "equivalence": "premise of completeness: equal interpretations",
    "pipeline": "completeness argument, step by step",
    "replay": "derivations as proofs",
    "rewrite-soundness": "rewriting with a sound rule preserves interpretation",
}


@dataclass
class HarnessConfig:
    tolerance: float = 1e-9
    grid: Grid = field(default_factory=lambda: DEFAULT_GRID)
    seed: int = 0
    random_terms: int = 500
    ad_samples: int = 1000
    lambda_samples: int = 100
    rewrite_samples: int = 200
    probe_vectors: int = 4
    shape: TermShape = field(default_factory=TermShape)
    out: str | None = None

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")

    @classmethod
    def from_env(cls, **kw) -> "HarnessConfig":
        """Like the constructor, but ``ZXZW_SEED`` overrides ``seed``."""
        env = os.environ.get("ZXZW_SEED")
        if env is not None and env.strip():
            kw["seed"] = int(env)
        return cls(**kw)


def record(check: str, status: bool, max_dev: float | None, **extra) -> dict:
    out = {"check": check, "anchor": ANCHORS[check], "status": "pass" if status else "fail", "max_deviation": max_dev}
    out.update(extra)
    return out


def dumps(records: list[dict]) -> str:
    return "".join(json.dumps(r, sort_keys=True) + "\n" for r in records)


def all_passed(records: list[dict]) -> bool:
    return all(r["status"] == "pass" for r in records)


def _dev(a: Term, b: Term) -> float:
    return max_deviation(interpret(a), interpret(b))


# individual checks


def check_rules(calculus: str, cfg: HarnessConfig) -> list[dict]:
    """One record per (rule, binding)."""
    out = []
    for rule in catalog(calculus):
        rep = check_rule_soundness(rule, cfg.grid, cfg.tolerance)
        for r in rep.records:
            rec = record("rule-soundness", r.passed, r.max_deviation, rule=rule.name, calculus=calculus, binding=binding_to_json(r.binding))
            rec["figure"] = rule.figure
            if not r.passed:
                rec["tolerance_related"] = r.max_deviation is not None and r.max_deviation <= NOISE_FLOOR
                if r.error:
                    rec["error"] = r.error
                else:
                    from .rules import instantiate

                    lhs, rhs = instantiate(rule, r.binding)
                    rec["counterexample"] = {"lhs": term_to_json(lhs), "rhs": term_to_json(rhs)}
            out.append(rec)
    return out


def check_translated_rules(cfg: HarnessConfig) -> list[dict]:
    rep = check_translated_zw_rules(cfg.tolerance, cfg.grid)
    out = []
    for name, r in rep.rules.items():
        rec = record("translated-zw-rules", r.passed, r.max_deviation, rule=name, bindings=len(r.records))
        if not r.passed:
            rec["failures"] = [f.to_json() for f in r.failures()[:3]]
        out.append(rec)
    return out


def check_lambda(cfg: HarnessConfig) -> list[dict]:
    rng = np.random.default_rng(cfg.seed)
    values = [0.0, 1.0, 0.999, 2.0, 2.5] + [float(x) for x in rng.uniform(0, 10, cfg.lambda_samples)]
    out = []
    for lam in values:
        d = decompose_lambda(lam)
        kinds = {g.kind for g in d.generators()}
        dev = max_deviation(interpret(d), np.diag([1, lam]).astype(complex))
        ok = dev <= cfg.tolerance and not kinds & {"lambda", "triangle"}
        rec = record("lambda-elimination", ok, dev, value=lam, size=d.size)
        if not ok:
            rec["counterexample"] = term_to_json(d)
        out.append(rec)
    return out


def check_translations(cfg: HarnessConfig) -> list[dict]:
    out = []
    for calc, check, fn in ((ZX, "translate-zx-zw", to_zw), (ZW, "translate-zw-zx", to_zx)):
        worst, bad = 0.0, None
        for d in random_terms(cfg.seed, cfg.random_terms, calc, cfg.shape):
            dev = _dev(d, fn(d))
            if dev > worst:
                worst = dev
            if dev > cfg.tolerance and bad is None:
                bad = d
        rec = record(check, bad is None, worst, samples=cfg.random_terms, seed=cfg.seed)
        if bad is not None:
            rec["counterexample"] = term_to_json(bad)
        out.append(rec)
    return out


def check_roundtrip(cfg: HarnessConfig) -> list[dict]:
    from .diagram import cap, cup, empty, identity, swap

    worst, bad = 0.0, None
    for d in random_terms(cfg.seed, cfg.random_terms, ZX, cfg.shape):
        _, rep = roundtrip_zx(d)
        worst = max(worst, rep.max_deviation)
        if rep.max_deviation > cfg.tolerance and bad is None:
            bad = d
    rec = record("roundtrip", bad is None, worst, samples=cfg.random_terms, seed=cfg.seed, level="semantic")
    if bad is not None:
        rec["counterexample"] = term_to_json(bad)
    out = [rec]
    for d in (identity(), swap(), cap(), cup(), empty()):
        _, rep = roundtrip_zx(d)
        out.append(record("roundtrip", rep.syntactic, rep.max_deviation, level="syntactic", generator=d.gen.kind))
    return out


def check_ad(cfg: HarnessConfig) -> list[dict]:
    rng = np.random.default_rng(cfg.seed)
    worst = 0.0
    cases = [(1.0, 0.0, 1.0, np.pi)]
    for _ in range(cfg.ad_samples):
        l1, l2 = rng.uniform(0, 5, 2)
        b, a = rng.uniform(0, 2 * np.pi, 2)
        cases.append((float(l1), float(b), float(l2), float(a)))
    for l1, b, l2, a in cases:
        lam, gamma = ad_compose(l1, Phase.real(b), l2, Phase.real(a))
        z = l1 * np.exp(1j * b) + l2 * np.exp(1j * a)
        worst = max(worst, abs(lam * gamma.exp() - z))
    lam0, gamma0 = ad_compose(1, Phase.zero(), 1, Phase.pi(1))
    ok = worst <= 1e-12 and lam0 == 0.0 and gamma0.is_zero()
    return [record("ad-arithmetic", ok, float(worst), samples=len(cases), cancellation=[lam0, gamma0.to_json()])]


def _grid_binding(rule, grid: Grid, rng) -> dict:
    out = {}
    for s, dom in rule.params:
        if s in rule.symbols:
            vals = grid.values(dom)
            out[s] = vals[int(rng.integers(len(vals)))]
    return out


def check_rewrites(cfg: HarnessConfig) -> list[dict]:
    """Random rule applications inside random contexts, compared by interpretation."""
    from .diagram import identity
    from .random_terms import random_layer
    from .graph import to_graph
    from .rewrite import LTR, RTL, _matchable, apply, find_matches
    from .rules import instantiate

    rng = np.random.default_rng(cfg.seed)
    rules = catalog(ZX) + catalog(ZW)
    worst, bad, done = 0.0, [], 0
    while done < cfg.rewrite_samples:
        rule = rules[int(rng.integers(len(rules)))]
        dirn = LTR
        if rng.random() < 0.5 and rule.side_condition is None:
            rhs = rule.template("rhs")
            if rhs is not None and _matchable(to_graph(rhs)):
                dirn = RTL
        src = "lhs" if dirn == LTR else "rhs"
        pattern = rule.template(src)
        binding = _grid_binding(rule, cfg.grid, rng)
        sides = instantiate(rule, binding)
        side = sides[0] if dirn == LTR else sides[1]
        k = int(rng.integers(0, 2))
        n, m = side.arity
        host = random_layer(rng, n + k, rule.calculus) >> (side @ identity(k)) >> random_layer(rng, m + k, rule.calculus)
        ms = find_matches(pattern, host)
        if not ms:
            # a matching failure on a planted site is itself a defect
            bad.append({"rule": rule.name, "dir": dirn, "binding": binding_to_json(binding), "error": "no match"})
            done += 1
            continue
        e = ms[int(rng.integers(len(ms)))]
        try:
            # the site fixes what it can; the sampled values fill the rest
            extra = {k: v for k, v in binding.items() if k not in e.bindings}
            out = apply(host, rule, dirn, e, extra)
            dev = _dev(host, out)
        except ValueError as exc:
            bad.append({"rule": rule.name, "dir": dirn, "site": list(e.nodes), "error": str(exc)})
            done += 1
            continue
        worst = max(worst, dev)
        if dev > cfg.tolerance:
            bad.append({"rule": rule.name, "dir": dirn, "site": list(e.nodes), "host": term_to_json(host), "deviation": dev})
        done += 1
    rec = record("rewrite-soundness", not bad, worst, applications=done)
    if bad:
        rec["counterexamples"] = bad[:5]
    return [rec]


def example_derivation():
    """Three steps: fuse two pi/2 spiders, drop a unit lambda box, cancel H.H."""
    from .diagram import hadamard, lambda_box, zspider
    from .rewrite import LTR, Derivation, Step

    start = zspider(1, 1, Phase.pi(1, 2)) >> zspider(1, 1, Phase.pi(1, 2)) >> lambda_box(1) >> hadamard() >> hadamard()
    steps = (Step("S1", LTR, (0, 1)), Step("L3", LTR, (1,)), Step("H2", LTR, (1, 2)))
    return Derivation(start, steps, zspider(1, 1, Phase.pi(1)))


def check_replay() -> list[dict]:
    import dataclasses

    from .rewrite import replay

    d = example_derivation()
    good = replay(d)
    bad_steps = list(d.steps)
    bad_steps[2] = dataclasses.replace(bad_steps[2], site=(0, 2))
    corrupt = replay(dataclasses.replace(d, steps=tuple(bad_steps)))
    return [
        record("replay", good.success, good.semantic_deviation, steps_applied=good.steps_applied, case="hand-built"),
        record(
            "replay",
            (not corrupt.success) and corrupt.failed_step == 2,
            None,
            case="corrupted-step",
            failed_step=corrupt.failed_step,
            error=corrupt.error,
        ),
    ]


def check_generators() -> list[dict]:
    from .diagram import black_pi, black_w, cap, crossing, cup, empty, hadamard, lambda_box, rgate, swap, triangle
    from .semantics import CAP_MATRIX, CROSS_MATRIX, CUP_MATRIX, H_MATRIX, PI_MATRIX, SWAP_MATRIX, TRIANGLE_MATRIX, W_MATRIX

    table = [
        ("triangle", triangle(), TRIANGLE_MATRIX),
        ("lambda", lambda_box(2.5), np.diag([1, 2.5])),
        ("h", hadamard(), H_MATRIX),
        ("rgate", rgate(1 - 2j), np.diag([1, 1 - 2j])),
        ("cross", crossing(), CROSS_MATRIX),
        ("bw", black_w(), W_MATRIX),
        ("bpi", black_pi(), PI_MATRIX),
        ("cap", cap(), CAP_MATRIX),
        ("cup", cup(), CUP_MATRIX),
        ("swap", swap(), SWAP_MATRIX),
        ("empty", empty(), np.ones((1, 1))),
    ]
    out = []
    for name, d, ref in table:
        dev = max_deviation(interpret(d), np.asarray(ref, dtype=complex))
        out.append(record("generator-semantics", dev <= 1e-15, dev, generator=name))
    return out


# commands on user diagrams


def verify_equiv(d1: Term, d2: Term, cfg: HarnessConfig) -> dict:
    if d1.arity != d2.arity:
        raise ValueError(f"arity mismatch: {d1.inputs}->{d1.outputs} vs {d2.inputs}->{d2.outputs}")
    a, b = interpret(d1), interpret(d2)
    dev = max_deviation(a, b)
    ok = dev <= cfg.tolerance
    rec = record("equivalence", ok, dev, verdict="equal" if ok else "not-equal")
    if not ok:
        c = proportionality(a, b, cfg.tolerance)
        rec["proportional_by"] = None if c is None else [c.real, c.imag]
        rec["counterexample"] = {"d1": term_to_json(d1), "d2": term_to_json(d2)}
    return rec


def pipeline(d1: Term, d2: Term, cfg: HarnessConfig) -> list[dict]:
    """The completeness argument as a chain of checks, one record per step."""
    for d in (d1, d2):
        if d.calculus == ZW:
            raise ValueError("pipeline expects ZX diagrams")
    if d1.arity != d2.arity:
        raise ValueError(f"arity mismatch: {d1.inputs}->{d1.outputs} vs {d2.inputs}->{d2.outputs}")
    tol = cfg.tolerance
    out = [{"check": "pipeline", "anchor": ANCHORS["pipeline"], "step": "config", "status": "pass",
            "max_deviation": None, "seed": cfg.seed, "tolerance": tol}]

    def step(name, ok, dev, **extra):
        rec = record("pipeline", ok, dev, step=name, **extra)
        if not ok:
            rec["counterexample"] = {"d1": term_to_json(d1), "d2": term_to_json(d2)}
        out.append(rec)
        return ok

    w1, w2 = to_zw(d1), to_zw(d2)
    step("to-zw d1", *_ok(_dev(d1, w1), tol))
    step("to-zw d2", *_ok(_dev(d2, w2), tol))
    equal = step("zw-equal", *_ok(_dev(w1, w2), tol))
    # seeded probe: the two ZW maps agree on random input vectors
    rng = np.random.default_rng(cfg.seed)
    m1, m2 = interpret(w1), interpret(w2)
    probe = 0.0
    for _ in range(cfg.probe_vectors):
        v = rng.normal(size=m1.shape[1]) + 1j * rng.normal(size=m1.shape[1])
        probe = max(probe, float(np.max(np.abs(m1 @ v - m2 @ v), initial=0.0)))
    step("zw-probe", probe <= tol * max(1.0, m1.shape[1]) * 10, probe, vectors=cfg.probe_vectors)
    x1, x2 = to_zx(w1), to_zx(w2)
    step("back-to-zx", *_ok(_dev(x1, x2), tol))
    for label, d in (("d1", d1), ("d2", d2)):
        _, rep = roundtrip_zx(d)
        step(f"roundtrip {label}", rep.max_deviation <= tol, rep.max_deviation, syntactic=rep.syntactic)
    out.append(record("pipeline", equal, _dev(d1, d2), step="verdict", verdict="equivalent" if equal else "not-equivalent"))
    return out


def _ok(dev: float, tol: float):
    return dev <= tol, dev


def suite(cfg: HarnessConfig) -> list[dict]:
    """Every harness check, in a fixed order."""
    out = check_generators()
    out += check_rules(ZX, cfg) + check_rules(ZW, cfg)
    out += check_lambda(cfg)
    out += check_translations(cfg)
    out += check_roundtrip(cfg)
    out += check_translated_rules(cfg)
    out += check_ad(cfg)
    out += check_rewrites(cfg)
    out += check_replay()
    return out


__all__ = [
    "HarnessConfig",
    "record",
    "dumps",
    "all_passed",
    "check_rules",
    "check_translated_rules",
    "check_lambda",
    "check_translations",
    "check_roundtrip",
    "check_ad",
    "check_generators",
    "check_rewrites",
    "check_replay",
    "example_derivation",
    "verify_equiv",
    "pipeline",
    "suite",
]
