"""Standard interpretation of diagrams as complex matrices.

A diagram ``n -> m`` becomes a ``2**m x 2**n`` array; the leftmost wire is the
most significant bit of the row/column index.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .diagram import Gen, Generator, Par, Seq, Term
from .phase import Phase, Var

SQRT2 = np.sqrt(2)

H_MATRIX = np.array([[1, 1], [1, -1]], dtype=complex) / SQRT2
TRIANGLE_MATRIX = np.array([[1, 1], [0, 1]], dtype=complex)
SWAP_MATRIX = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex)
CROSS_MATRIX = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, -1]], dtype=complex)
W_MATRIX = np.array([[0, 1], [1, 0], [1, 0], [0, 0]], dtype=complex)
PI_MATRIX = np.array([[0, 1], [1, 0]], dtype=complex)
CAP_MATRIX = np.array([[1], [0], [0], [1]], dtype=complex)
CUP_MATRIX = np.array([[1, 0, 0, 1]], dtype=complex)
ID_MATRIX = np.eye(2, dtype=complex)
EMPTY_MATRIX = np.ones((1, 1), dtype=complex)


class SymbolicParameterError(ValueError):
    pass


def _spider(n: int, m: int, top: complex) -> np.ndarray:
    out = np.zeros((2**m, 2**n), dtype=complex)
    out[0, 0] += 1
    out[-1, -1] += top
    return out


@lru_cache(maxsize=None)
def generator_matrix(g: Generator) -> np.ndarray:
    if isinstance(g.param, Var):
        raise SymbolicParameterError(f"cannot interpret metavariable in {g!r}")
    k = g.kind
    if k == "zspider":
        out = _spider(g.n, g.m, g.phase.exp())
    elif k == "wspider":
        out = _spider(g.n, g.m, 1)
    elif k == "phase":
        out = np.diag([1, g.phase.exp()]).astype(complex)
    elif k == "h":
        out = H_MATRIX
    elif k == "lambda":
        out = np.diag([1, g.lam]).astype(complex)
    elif k == "triangle":
        out = TRIANGLE_MATRIX
    elif k == "rgate":
        out = np.diag([1, g.r]).astype(complex)
    elif k == "cross":
        out = CROSS_MATRIX
    elif k == "bpi":
        out = PI_MATRIX
    elif k == "bw":
        out = W_MATRIX
    elif k == "id":
        out = ID_MATRIX
    elif k == "swap":
        out = SWAP_MATRIX
    elif k == "cap":
        out = CAP_MATRIX
    elif k == "cup":
        out = CUP_MATRIX
    elif k == "empty":
        out = EMPTY_MATRIX
    else:  # pragma: no cover - Generator validates kinds
        raise ValueError(k)
    out = np.array(out, dtype=complex)
    out.setflags(write=False)
    return out


@lru_cache(maxsize=200_000)
def interpret(d: Term) -> np.ndarray:
    """Matrix of ``d``: Kronecker product for ``@``, matrix product for ``>>``."""
    if isinstance(d, Gen):
        return generator_matrix(d.gen)
    if isinstance(d, Seq):
        out = interpret(d.lower) @ interpret(d.upper)
    elif isinstance(d, Par):
        out = np.kron(interpret(d.left), interpret(d.right))
    else:
        raise TypeError(f"not a diagram: {d!r}")
    out.setflags(write=False)
    return out


def matrices_equal(a: np.ndarray, b: np.ndarray, tol: float = 1e-9) -> bool:
    """Exact (not up-to-scalar) entrywise comparison."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    a, b = np.asarray(a), np.asarray(b)
    if a.shape != b.shape:
        return False
    return bool(np.max(np.abs(a - b), initial=0.0) <= tol)


def max_deviation(a: np.ndarray, b: np.ndarray) -> float:
    a, b = np.asarray(a), np.asarray(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return float(np.max(np.abs(a - b), initial=0.0))


def proportionality(a: np.ndarray, b: np.ndarray, tol: float = 1e-9) -> complex | None:
    """Best-fit ``c`` with ``a ~ c*b``; None when ``a`` is not proportional to ``b``."""
    a, b = np.asarray(a).ravel(), np.asarray(b).ravel()
    if a.shape != b.shape:
        return None
    nb = np.vdot(b, b)
    if abs(nb) < tol:
        return None if np.max(np.abs(a), initial=0.0) > tol else 0j
    c = np.vdot(b, a) / nb
    if np.max(np.abs(a - c * b), initial=0.0) > tol * max(1.0, abs(c)):
        return None
    return complex(c)


def matrix_to_json(mat: np.ndarray) -> dict:
    mat = np.asarray(mat)
    return {
        "rows": int(mat.shape[0]),
        "cols": int(mat.shape[1]),
        "data": [[[float(z.real), float(z.imag)] for z in row] for row in mat],
    }


def matrix_from_json(doc: dict) -> np.ndarray:
    data = np.array([[complex(re, im) for re, im in row] for row in doc["data"]], dtype=complex)
    data = data.reshape(doc["rows"], doc["cols"])
    return data


# independent evaluation path: contract the graph form as a tensor network


def _node_tensor(g: Generator) -> np.ndarray:
    mat = generator_matrix(g)
    return mat.reshape((2,) * (g.m + g.n))


def contract_graph(graph) -> np.ndarray:
    """Evaluate an ``OpenGraph`` by pairwise einsum contraction.

    Index layout of a node tensor: outputs first, then inputs. Wires running
    straight between two boundary points become delta tensors.
    """
    from .graph import BOUNDARY

    label_of: dict = {}
    next_label = [0]

    def fresh():
        next_label[0] += 1
        return next_label[0] - 1

    for a, b in graph.edges:
        lab = fresh()
        label_of[a] = lab
        label_of[b] = lab

    operands: list[tuple[np.ndarray, list[int]]] = []
    for nid, g in enumerate(graph.nodes):
        labels = [label_of[(nid, "out", j)] for j in range(g.m)]
        labels += [label_of[(nid, "in", i)] for i in range(g.n)]
        operands.append((_node_tensor(g), labels))

    # boundary points get their own labels; boundary-to-boundary wires need a delta
    out_labels = [None] * graph.n_out
    in_labels = [None] * graph.n_in
    for a, b in graph.edges:
        if a[0] == BOUNDARY and b[0] == BOUNDARY:
            la, lb = fresh(), fresh()
            operands.append((np.eye(2, dtype=complex), [la, lb]))
            for pt, lab in ((a, la), (b, lb)):
                (out_labels if pt[1] == "out" else in_labels)[pt[2]] = lab
        else:
            for pt in (a, b):
                if pt[0] == BOUNDARY:
                    (out_labels if pt[1] == "out" else in_labels)[pt[2]] = label_of[pt]
    open_labels = out_labels + in_labels

    scalar = complex(2**graph.loops)
    if not operands:
        return np.full((1, 1), scalar)

    # grow one connected blob at a time, always absorbing a neighbour when possible
    remaining = list(range(len(operands)))
    tensor, labels = operands[remaining.pop(0)]
    while remaining:
        pick = 0
        for idx, k in enumerate(remaining):
            if set(operands[k][1]) & set(labels):
                pick = idx
                break
        t2, l2 = operands[remaining.pop(pick)]
        tensor, labels = _contract_pair(tensor, labels, t2, l2, open_labels)
    # final pass: traces on repeated labels and ordering
    tensor, labels = _contract_pair(tensor, labels, np.ones(()), [], open_labels)
    perm = [labels.index(lab) for lab in open_labels]
    tensor = np.transpose(tensor, perm) if perm else tensor
    rows, cols = 2**graph.n_out, 2**graph.n_in
    return scalar * np.asarray(tensor).reshape(rows, cols)


def _contract_pair(t1, l1, t2, l2, keep):
    counts: dict[int, int] = {}
    for lab in l1 + l2:
        counts[lab] = counts.get(lab, 0) + 1
    keep_set = set(keep)
    out = []
    for lab in l1 + l2:
        if (lab in keep_set or counts[lab] == 1) and lab not in out:
            out.append(lab)
    local = {}
    for lab in l1 + l2 + out:
        local.setdefault(lab, len(local))
    res = np.einsum(t1, [local[x] for x in l1], t2, [local[x] for x in l2], [local[x] for x in out])
    return res, out
