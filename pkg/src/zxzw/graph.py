"""Boundary-ordered graph form of a term.

Every generator that is not pure wiring becomes a node; node ids follow the
term's left-to-right, top-to-bottom traversal order. Ports are triples
``(node, "in"|"out", index)`` and the diagram boundary uses node ``-1``:
``(-1, "in", i)`` is the i-th input, ``(-1, "out", j)`` the j-th output.
Each port is the endpoint of exactly one undirected edge. Closed wire loops
carry no ports and are only counted.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import (
    Gen,
    Generator,
    Par,
    Seq,
    Term,
    cap,
    compose,
    cup,
    empty,
    identity,
    tensor,
    wire_permutation,
)

BOUNDARY = -1

Port = tuple  # (node, side, index)


class MalformedGraphError(ValueError):
    pass


@dataclass(frozen=True)
class OpenGraph:
    nodes: tuple[Generator, ...]
    edges: tuple[tuple[Port, Port], ...]
    n_in: int
    n_out: int
    loops: int = 0

    @property
    def calculus(self):
        for g in self.nodes:
            if g.calculus:
                return g.calculus
        return None

    def ports(self):
        for nid, g in enumerate(self.nodes):
            for i in range(g.n):
                yield (nid, "in", i)
            for j in range(g.m):
                yield (nid, "out", j)
        for i in range(self.n_in):
            yield (BOUNDARY, "in", i)
        for j in range(self.n_out):
            yield (BOUNDARY, "out", j)

    def partner(self) -> dict:
        out = {}
        for a, b in self.edges:
            out[a] = b
            out[b] = a
        return out

    def validate(self) -> None:
        seen: dict = {}
        for a, b in self.edges:
            for p in (a, b):
                if p in seen:
                    raise MalformedGraphError(f"port {p} has more than one edge")
                seen[p] = True
        for p in self.ports():
            if p not in seen:
                raise MalformedGraphError(f"dangling port {p}")
        valid = set(self.ports())
        for p in seen:
            if p not in valid:
                raise MalformedGraphError(f"edge refers to unknown port {p}")
        if self.loops < 0:
            raise MalformedGraphError("negative loop count")


def _edge(a: Port, b: Port) -> tuple[Port, Port]:
    return (a, b) if a <= b else (b, a)


class _UnionFind:
    def __init__(self):
        self.parent: list[int] = []

    def make(self) -> int:
        self.parent.append(len(self.parent))
        return len(self.parent) - 1

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def to_graph(d: Term) -> OpenGraph:
    """Graph form of ``d``; identities, swaps, caps, cups and empties become wiring."""
    uf = _UnionFind()
    attached: dict[int, list[Port]] = {}
    nodes: list[Generator] = []

    def attach(seg: int, port: Port):
        attached.setdefault(seg, []).append(port)

    def walk(t: Term) -> tuple[list[int], list[int]]:
        if isinstance(t, Gen):
            g = t.gen
            k = g.kind
            if k == "id":
                s = uf.make()
                return [s], [s]
            if k == "swap":
                a, b = uf.make(), uf.make()
                return [a, b], [b, a]
            if k == "cap":
                s = uf.make()
                return [], [s, s]
            if k == "cup":
                s = uf.make()
                return [s, s], []
            if k == "empty":
                return [], []
            nid = len(nodes)
            nodes.append(g)
            ins, outs = [], []
            for i in range(g.n):
                s = uf.make()
                attach(s, (nid, "in", i))
                ins.append(s)
            for j in range(g.m):
                s = uf.make()
                attach(s, (nid, "out", j))
                outs.append(s)
            return ins, outs
        if isinstance(t, Seq):
            ins, mid = walk(t.upper)
            mid2, outs = walk(t.lower)
            for a, b in zip(mid, mid2):
                uf.union(a, b)
            return ins, outs
        if isinstance(t, Par):
            i1, o1 = walk(t.left)
            i2, o2 = walk(t.right)
            return i1 + i2, o1 + o2
        raise TypeError(f"not a diagram: {t!r}")

    ins, outs = walk(d)
    for i, s in enumerate(ins):
        attach(s, (BOUNDARY, "in", i))
    for j, s in enumerate(outs):
        attach(s, (BOUNDARY, "out", j))

    groups: dict[int, list[Port]] = {}
    for seg in range(len(uf.parent)):
        groups.setdefault(uf.find(seg), [])
    for seg, ports in attached.items():
        groups[uf.find(seg)].extend(ports)
    edges, loops = [], 0
    for ports in groups.values():
        if len(ports) == 0:
            loops += 1
        elif len(ports) == 2:
            edges.append(_edge(ports[0], ports[1]))
        else:  # pragma: no cover - impossible for well-typed terms
            raise MalformedGraphError(f"wire with {len(ports)} endpoints: {ports}")
    return OpenGraph(tuple(nodes), tuple(sorted(edges)), d.inputs, d.outputs, loops)


def from_graph(g: OpenGraph) -> Term:
    """Rebuild a term by sweeping nodes in id order.

    Each slice holds one generator padded with identities; wires that must run
    upwards (input-to-input or output-to-output connections and feedback) are
    made with caps placed just before they are needed and cups placed as soon
    as both ends exist.
    """
    g.validate()
    partner = g.partner()
    placed: set = set()
    wires: list[Port] = []  # each live wire is named by the port still waiting for it
    slices: list[Term] = []

    def width() -> int:
        return len(wires)

    def emit(term: Term):
        slices.append(term)

    def bring_to_front(targets: list[Port]):
        # move the wires waiting for ``targets`` (in that order) to positions 0..k-1
        order = [wires.index(t) for t in targets]
        rest = [i for i in range(width()) if i not in order]
        new_order = order + rest
        perm = [0] * width()
        for new_pos, old in enumerate(new_order):
            perm[old] = new_pos
        if perm != list(range(width())):
            emit(wire_permutation(perm))
        wires[:] = [wires[i] for i in new_order]

    def take_inputs(ports: list[Port]):
        # ensure a live wire exists for each port; create caps for unplaced partners
        fresh = []
        for p in ports:
            q = partner[p]
            if q not in placed and q not in fresh:
                fresh.append(p)
        if fresh:
            emit(identity(width()) @ tensor(*[cap()] * len(fresh)) if width() else tensor(*[cap()] * len(fresh)))
            for p in fresh:
                # one leg feeds p now, the other waits for p's partner
                wires.append(p)
                wires.append(partner[p])
        bring_to_front(ports)
        del wires[: len(ports)]

    def give_outputs(ports: list[Port]):
        wires[:0] = [partner[p] for p in ports]
        # a partner that is already waiting for one of these ports closes with a cup
        pairs = []
        for p in ports:
            if p in wires and (p, partner[p]) not in pairs:
                pairs.append((partner[p], p))
        if pairs:
            targets = []
            for a, b in pairs:
                targets += [a, b]
            bring_to_front(targets)
            del wires[: len(targets)]
            emit(tensor(*[cup()] * len(pairs)) @ identity(width()) if width() else tensor(*[cup()] * len(pairs)))

    # the diagram inputs behave like the outputs of a source node
    give_outputs([(BOUNDARY, "in", i) for i in range(g.n_in)])
    placed.update((BOUNDARY, "in", i) for i in range(g.n_in))
    if not slices:
        slices.append(identity(width()))

    for nid, gen in enumerate(g.nodes):
        in_ports = [(nid, "in", i) for i in range(gen.n)]
        out_ports = [(nid, "out", j) for j in range(gen.m)]
        take_inputs(in_ports)
        placed.update(in_ports)
        emit(Gen(gen) @ identity(width()) if width() else Gen(gen))
        placed.update(out_ports)
        give_outputs(out_ports)

    out_ports = [(BOUNDARY, "out", j) for j in range(g.n_out)]
    take_inputs(out_ports)
    placed.update(out_ports)
    # every wire has been consumed: the outputs now sit in order
    wires[:0] = [partner[p] for p in out_ports]
    assert len(wires) == g.n_out, wires

    body = _chain(slices, g.n_in)
    if g.loops:
        body = body @ tensor(*[cap() >> cup() for _ in range(g.loops)])
    return body


def _chain(slices: list[Term], n_in: int) -> Term:
    # drop pure identities so the layering stays readable
    kept = [s for s in slices if not _is_identity(s)]
    if not kept:
        return identity(n_in) if n_in else empty()
    return compose(*kept)


def _is_identity(t: Term) -> bool:
    return all(g.kind in ("id", "empty") for g in t.generators())


def graph_size(g: OpenGraph) -> int:
    return len(g.nodes)
