"""ZX and ZW diagrams: terms, matrix semantics, rule catalogs, rewriting and translation."""

from .diagram import (
    ZW,
    ZX,
    ArityError,
    CalculusError,
    Gen,
    Generator,
    Par,
    Seq,
    Term,
    black_pi,
    black_w,
    cap,
    compose,
    crossing,
    cup,
    elaborate,
    empty,
    hadamard,
    identity,
    lambda_box,
    par,
    phase_gate,
    rgate,
    seq,
    swap,
    tensor,
    transpose,
    triangle,
    wspider,
    xspider,
    zspider,
)
from .graph import OpenGraph, from_graph, to_graph
from .phase import PI, ZERO, DomainError, Phase, Var
from .rewrite import Derivation, Embedding, Step, apply, find_matches, greedy_fuse, iso_check, replay
from .rules import (
    DEFAULT_GRID,
    Grid,
    RuleSchema,
    ad_compose,
    catalog,
    check_rule_soundness,
    decompose_lambda,
    get_rule,
    instantiate,
    mutate,
)
from .semantics import interpret, matrices_equal, max_deviation
from .serialize import deserialize, serialize
from .translate import check_translated_zw_rules, polar, roundtrip_zx, to_zw, to_zx

__version__ = "0.1.0"
