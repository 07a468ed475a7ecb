"""Subgraph matching, rewrite application and derivation replay.

Matching works on graph forms. Spider legs are unordered within the inputs and
within the outputs; every other generator has ordered ports. Pattern
parameters that are ``Var`` are solved for during matching.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Mapping

from .diagram import SPIDER_KINDS, Generator, Term
from .graph import BOUNDARY, OpenGraph, from_graph, to_graph
from .phase import DomainError, Phase, Var
from .rules import RuleSchema, binding_to_json, complete_binding, get_rule

PARAM_TOL = 1e-12

LTR = "L->R"
RTL = "R->L"
_DIRS = {"L->R": LTR, "lr": LTR, "ltr": LTR, "->": LTR, "R->L": RTL, "rl": RTL, "rtl": RTL, "<-": RTL}


class RewriteError(ValueError):
    pass


class StaleEmbeddingError(RewriteError):
    pass


def direction(d: str) -> str:
    try:
        return _DIRS[d]
    except KeyError:
        raise RewriteError(f"unknown direction {d!r}") from None


@dataclass(frozen=True)
class Embedding:
    """Pattern node i sits at host node ``nodes[i]``.

    ``ports`` sends every pattern node port to a host port; ``boundary`` sends
    each pattern boundary point to the host port it is glued to.
    """

    nodes: tuple[int, ...]
    ports: tuple  # sorted ((pattern port, host port), ...)
    boundary: tuple  # sorted ((pattern boundary point, host port), ...)
    binding: tuple = ()  # sorted ((symbol, value), ...)

    @property
    def port_map(self) -> dict:
        return dict(self.ports)

    @property
    def boundary_map(self) -> dict:
        return dict(self.boundary)

    @property
    def bindings(self) -> dict:
        return dict(self.binding)


# parameter unification


def _same_value(a, b) -> bool:
    if isinstance(a, Phase) or isinstance(b, Phase):
        return isinstance(a, Phase) and isinstance(b, Phase) and a == b
    if a is None or b is None:
        return a is None and b is None
    return abs(complex(a) - complex(b)) <= PARAM_TOL


def _unify(pg: Generator, hg: Generator, env: dict) -> dict | None:
    if pg.kind != hg.kind or pg.n != hg.n or pg.m != hg.m:
        return None
    pv, hv = pg.param, hg.param
    if isinstance(pv, Var):
        if isinstance(hv, Var):
            return None
        if pv.name in env:
            return env if _same_value(env[pv.name], hv) else None
        out = dict(env)
        out[pv.name] = hv
        return out
    return env if _same_value(pv, hv) else None


# matching


def _bfs_order(g: OpenGraph) -> list[int]:
    partner = g.partner()
    seen: list[int] = []
    for start in range(len(g.nodes)):
        if start in seen:
            continue
        queue = [start]
        seen.append(start)
        while queue:
            nid = queue.pop(0)
            gen = g.nodes[nid]
            for side, count in (("in", gen.n), ("out", gen.m)):
                for i in range(count):
                    q = partner[(nid, side, i)]
                    if q[0] != BOUNDARY and q[0] not in seen:
                        seen.append(q[0])
                        queue.append(q[0])
    return seen


def _leg_maps(gen: Generator, hid: int, pid: int):
    """Candidate port assignments for a pattern node placed on host node ``hid``."""
    if gen.kind in SPIDER_KINDS:
        in_perms = itertools.permutations(range(gen.n))
        out_perms = list(itertools.permutations(range(gen.m)))
    else:
        in_perms = [tuple(range(gen.n))]
        out_perms = [tuple(range(gen.m))]
    for pi in in_perms:
        for po in out_perms:
            m = {(pid, "in", i): (hid, "in", pi[i]) for i in range(gen.n)}
            m.update({(pid, "out", j): (hid, "out", po[j]) for j in range(gen.m)})
            yield m


def _search(P: OpenGraph, G: OpenGraph, env: dict, exact: bool):
    """Yield ``(node_map, port_map, env)`` for every embedding of P in G."""
    if exact and (len(P.nodes) != len(G.nodes) or P.n_in != G.n_in or P.n_out != G.n_out):
        return
    pp, hp = P.partner(), G.partner()
    order = _bfs_order(P)
    node_map: dict[int, int] = {}
    port_map: dict = {}

    def consistent(new: dict) -> bool:
        for p_port, h_port in new.items():
            q = pp[p_port]
            if q[0] == BOUNDARY:
                if exact and hp[h_port] != q:
                    return False
                continue
            target = new.get(q, port_map.get(q))
            if target is None:
                continue
            if hp[h_port] != target:
                return False
        return True

    def rec(k: int, env: dict):
        if k == len(order):
            yield dict(node_map), dict(port_map), env
            return
        pid = order[k]
        pgen = P.nodes[pid]
        used = set(node_map.values())
        for hid, hgen in enumerate(G.nodes):
            if hid in used:
                continue
            env2 = _unify(pgen, hgen, env)
            if env2 is None:
                continue
            for legs in _leg_maps(pgen, hid, pid):
                if not consistent(legs):
                    continue
                node_map[pid] = hid
                port_map.update(legs)
                yield from rec(k + 1, env2)
                del node_map[pid]
                for key in legs:
                    del port_map[key]

    yield from rec(0, env)


def _boundary_edges(g: OpenGraph) -> set:
    return {e for e in g.edges if e[0][0] == BOUNDARY and e[1][0] == BOUNDARY}


def _matchable(P: OpenGraph) -> bool:
    return len(P.nodes) > 0 and not _boundary_edges(P)


def find_matches(pattern: Term, host: Term, binding: Mapping | None = None) -> list[Embedding]:
    """Every embedding of ``pattern`` into ``host``, ordered by host node ids.

    Embeddings that differ only in how spider legs are paired are reported
    once. Patterns with no nodes or with a wire running straight through are
    not matchable and give no embeddings.
    """
    if pattern.calculus and host.calculus and pattern.calculus != host.calculus:
        return []
    P, G = to_graph(pattern), to_graph(host)
    if not _matchable(P) or G.loops < P.loops:
        return []
    env0 = dict(binding or {})
    seen: dict[tuple, Embedding] = {}
    pp = P.partner()
    for nmap, pmap, env in _search(P, G, env0, exact=False):
        key = tuple(nmap[i] for i in range(len(P.nodes)))
        if key in seen:
            continue
        bmap = {}
        for p_port, h_port in pmap.items():
            q = pp[p_port]
            if q[0] == BOUNDARY:
                bmap[q] = h_port
        seen[key] = Embedding(
            nodes=key,
            ports=tuple(sorted(pmap.items())),
            boundary=tuple(sorted(bmap.items())),
            binding=tuple(sorted((k, v) for k, v in env.items() if k not in env0)),
        )
    return [seen[k] for k in sorted(seen)]


def iso_check(a: Term, b: Term) -> bool:
    """Graph isomorphism respecting boundaries, kinds, params and spider legs."""
    if a.arity != b.arity:
        return False
    if a.calculus and b.calculus and a.calculus != b.calculus:
        return False
    A, B = to_graph(a), to_graph(b)
    if A.loops != B.loops or len(A.nodes) != len(B.nodes):
        return False
    if _boundary_edges(A) != _boundary_edges(B):
        return False
    if sorted(g.kind for g in A.nodes) != sorted(g.kind for g in B.nodes):
        return False
    for _ in _search(A, B, {}, exact=True):
        return True
    return False


# application


def _sides(rule: RuleSchema, dirn: str) -> tuple[str, str]:
    return ("lhs", "rhs") if dirn == LTR else ("rhs", "lhs")


def _check_embedding(P: OpenGraph, G: OpenGraph, e: Embedding, env0: dict) -> dict:
    """Re-validate ``e`` against the current host; returns the solved binding."""
    if len(e.nodes) != len(P.nodes) or len(set(e.nodes)) != len(e.nodes):
        raise StaleEmbeddingError("embedding does not fit the pattern")
    env = dict(env0)
    for pid, hid in enumerate(e.nodes):
        if not 0 <= hid < len(G.nodes):
            raise StaleEmbeddingError(f"host has no node {hid}")
        env2 = _unify(P.nodes[pid], G.nodes[hid], env)
        if env2 is None:
            raise StaleEmbeddingError(f"host node {hid} ({G.nodes[hid]!r}) does not match {P.nodes[pid]!r}")
        env = env2
    pp, hp = P.partner(), G.partner()
    pmap = e.port_map
    valid = set(G.ports())
    for p_port, h_port in pmap.items():
        if h_port not in valid or h_port[0] != e.nodes[p_port[0]]:
            raise StaleEmbeddingError(f"port {h_port} is not on the matched node")
        q = pp[p_port]
        if q[0] != BOUNDARY and hp[h_port] != pmap.get(q):
            raise StaleEmbeddingError(f"host wiring at {h_port} no longer matches the pattern")
    if len(set(pmap.values())) != len(pmap):
        raise StaleEmbeddingError("embedding maps two pattern ports to one host port")
    return env


def rewrite_graph(G: OpenGraph, P: OpenGraph, e: Embedding, R: OpenGraph) -> OpenGraph:
    """Replace the image of P in G by R, gluing boundary point by boundary point."""
    hp = G.partner()
    removed = set(e.nodes)
    pmap = e.port_map
    iface_of = {h: b for b, h in e.boundary}  # host port -> pattern boundary point

    # new node ids: surviving host nodes in order, R's nodes inserted at the first removed slot
    insert_at = min(removed)
    new_id: dict = {}
    nodes: list[Generator] = []
    for hid, g in enumerate(G.nodes):
        if hid == insert_at:
            for rid, rg in enumerate(R.nodes):
                new_id[("r", rid)] = len(nodes)
                nodes.append(rg)
        if hid in removed:
            continue
        new_id[("h", hid)] = len(nodes)
        nodes.append(g)

    def host_pt(p):
        return p if p[0] == BOUNDARY else (new_id[("h", p[0])], p[1], p[2])

    def r_pt(p):
        return ("iface", p) if p[0] == BOUNDARY else (new_id[("r", p[0])], p[1], p[2])

    adj: dict = {}

    def link(a, b):
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)

    matched_ports = set(pmap.values())
    done = set()
    for a, b in G.edges:
        a_in, b_in = a in matched_ports, b in matched_ports
        if not a_in and not b_in:
            link(host_pt(a), host_pt(b))
            continue
        for x, y in ((a, b), (b, a)):
            if x in matched_ports and x in iface_of and (x, y) not in done:
                done.add((x, y))
                done.add((y, x))
                other = ("iface", iface_of[y]) if y in iface_of else host_pt(y)
                if y in matched_ports and y not in iface_of:  # pragma: no cover - validated embedding
                    raise StaleEmbeddingError("interface port wired into the pattern interior")
                link(("iface", iface_of[x]), other)
    for a, b in R.edges:
        link(r_pt(a), r_pt(b))

    edges, visited = [], set()
    for start in list(adj):
        if start[0] == "iface" or start in visited:
            continue
        prev, cur = start, adj[start][0]
        while cur[0] == "iface":
            nxt = [x for x in adj[cur] if x != prev]
            if not nxt:  # iface point glued to itself
                nxt = [prev]
            prev, cur = cur, nxt[0]
        visited.add(start)
        visited.add(cur)
        edges.append(tuple(sorted((start, cur))))
    # remaining cycles made only of interface points are closed loops
    iface_seen = set()
    loops = 0
    for pt in adj:
        if pt[0] != "iface" or pt in iface_seen:
            continue
        comp, stack, has_real = set(), [pt], False
        while stack:
            x = stack.pop()
            if x in comp:
                continue
            comp.add(x)
            for y in adj[x]:
                if y[0] == "iface":
                    stack.append(y)
                else:
                    has_real = True
        iface_seen |= comp
        if not has_real:
            loops += 1
    loops += G.loops - P.loops + R.loops
    return OpenGraph(tuple(nodes), tuple(sorted(set(edges))), G.n_in, G.n_out, loops)


def apply(host: Term, rule: RuleSchema, dirn: str, e: Embedding, binding: Mapping | None = None) -> Term:
    """Rewrite ``host`` at ``e`` with ``rule`` in direction ``dirn``.

    The binding solved by matching is merged with ``binding``; params that the
    matched side does not determine must be supplied there.
    """
    dirn = direction(dirn)
    src, dst = _sides(rule, dirn)
    pattern = rule.template(src)
    if pattern is None:
        raise RewriteError(f"{rule.name}: the {src} cannot be used as a pattern")
    P, G = to_graph(pattern), to_graph(host)
    if not _matchable(P):
        raise RewriteError(f"{rule.name}: the {src} has no nodes to match")
    env = _check_embedding(P, G, e, {})
    if G.loops < P.loops:
        raise StaleEmbeddingError("host lacks the loops the pattern removes")
    given = dict(binding or {})
    for k, v in env.items():
        given.setdefault(k, v)
    free = {s: given[s] for s in rule.symbols if s in given}
    try:
        full = complete_binding(rule, free)
    except DomainError as exc:
        raise RewriteError(str(exc)) from exc
    for k, v in env.items():
        if not _same_value(full[k], v):
            raise RewriteError(f"{rule.name}: binding {k}={full[k]!r} disagrees with the site ({v!r})")
    replacement = (rule.rhs if dst == "rhs" else rule.lhs)(full)
    R = to_graph(replacement)
    return from_graph(rewrite_graph(G, P, e, R))


def rule_matches(rule: RuleSchema, host: Term, dirn: str = LTR) -> list[Embedding]:
    pattern = rule.template(_sides(rule, direction(dirn))[0])
    if pattern is None:
        return []
    return find_matches(pattern, host)


# derivations


@dataclass(frozen=True)
class Step:
    rule: str
    dir: str
    site: tuple[int, ...]
    binding: tuple = ()

    def to_json(self) -> dict:
        return {"rule": self.rule, "dir": self.dir, "site": list(self.site), "binding": binding_to_json(dict(self.binding))}


@dataclass(frozen=True)
class Derivation:
    start: Term
    steps: tuple[Step, ...]
    end: Term

    def to_json(self) -> dict:
        from .serialize import term_to_json

        return {
            "start": term_to_json(self.start),
            "steps": [s.to_json() for s in self.steps],
            "end": term_to_json(self.end),
        }

    @classmethod
    def from_json(cls, doc: dict) -> "Derivation":
        from .serialize import term_from_json

        if not isinstance(doc, dict) or not {"start", "steps", "end"} <= set(doc):
            raise ValueError("derivation needs start, steps and end")
        steps = []
        for k, s in enumerate(doc["steps"]):
            try:
                steps.append(
                    Step(
                        rule=s["rule"],
                        dir=s.get("dir", LTR),
                        site=tuple(int(x) for x in s.get("site", [])),
                        binding=tuple(sorted(s.get("binding", {}).items())),
                    )
                )
            except (KeyError, TypeError, AttributeError) as exc:
                raise ValueError(f"step {k}: {exc}") from exc
        return cls(term_from_json(doc["start"]), tuple(steps), term_from_json(doc["end"]))


@dataclass
class ReplayReport:
    success: bool
    steps_applied: int
    failed_step: int | None = None
    error: str | None = None
    isomorphic_end: bool = False
    semantic_deviation: float | None = None
    trace: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "success": self.success,
            "steps_applied": self.steps_applied,
            "failed_step": self.failed_step,
            "error": self.error,
            "isomorphic_end": self.isomorphic_end,
            "semantic_deviation": self.semantic_deviation,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _rule_for(name: str, calculus):
    return get_rule(name, calculus) if calculus else get_rule(name)


def apply_step(current: Term, step: Step) -> Term:
    rule = _rule_for(step.rule, current.calculus)
    dirn = direction(step.dir)
    pattern = rule.template(_sides(rule, dirn)[0])
    if pattern is None:
        raise RewriteError(f"{rule.name}: the {_sides(rule, dirn)[0]} cannot be used as a pattern")
    binding = dict(step.binding)
    matches = [e for e in find_matches(pattern, current) if e.nodes == tuple(step.site)]
    if not matches:
        raise RewriteError(f"no match of {rule.name} ({dirn}) at site {list(step.site)}")
    return apply(current, rule, dirn, matches[0], binding)


def replay(d: Derivation) -> ReplayReport:
    """Apply every step in order and compare the result with ``d.end``."""
    from .semantics import interpret, max_deviation

    current = d.start
    report = ReplayReport(success=False, steps_applied=0)
    for k, step in enumerate(d.steps):
        try:
            current = apply_step(current, step)
        except (RewriteError, KeyError, ValueError) as exc:
            report.failed_step = k
            report.error = f"step {k}: {exc}"
            return report
        report.steps_applied = k + 1
    report.isomorphic_end = iso_check(current, d.end)
    try:
        report.semantic_deviation = max_deviation(interpret(d.start), interpret(d.end))
    except ValueError as exc:
        report.error = str(exc)
    report.success = report.isomorphic_end
    if not report.success and report.error is None:
        report.error = "replayed diagram is not isomorphic to the claimed end"
    return report


# a convenience strategy; not part of any proof system

FUSE_RULES = {"ZX": ("S1", "S2", "H2", "L3"), "ZW": ("inv", "loop", "rng1", "reix2")}


def greedy_fuse(d: Term, max_steps: int = 1000) -> tuple[Term, list[Step]]:
    """Apply simple shrinking rules at the first match until none applies."""
    calc = d.calculus or "ZX"
    steps: list[Step] = []
    for _ in range(max_steps):
        for name in FUSE_RULES[calc]:
            rule = get_rule(name, calc)
            ms = rule_matches(rule, d)
            if ms:
                d = apply(d, rule, LTR, ms[0])
                steps.append(Step(name, LTR, ms[0].nodes, ms[0].binding))
                break
        else:
            return d, steps
    return d, steps


__all__ = [
    "Embedding",
    "find_matches",
    "iso_check",
    "apply",
    "rule_matches",
    "Step",
    "Derivation",
    "ReplayReport",
    "replay",
    "apply_step",
    "greedy_fuse",
    "LTR",
    "RTL",
]
