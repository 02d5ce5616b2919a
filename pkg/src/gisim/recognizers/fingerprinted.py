"""Shared second round for the three-round protocols.

All multiset claims of a run are folded into one field element per node:

    R(v) = prod_{a in A(v)} (s - a) / prod_{b in B(v)} (s - b) * prod_{children c} R(c)

with every element tagged by the sub-check it belongs to. The root compares
R against the product over the known target multisets (the ranges a
permutation check must cover). Tags keep sub-checks from mixing, so the one
comparison holds iff every individual multiset identity holds, up to the
usual polynomial-identity error.
"""

from __future__ import annotations

from typing import Callable, Iterable, Sequence

from ..blocks import EncodingOverflow, aggregate_ok, eval_point, field_record, is_root, ratio, tree_products
from ..engine import Certs, NodeView, ProverStrategy, SharedRandomness, Stack
from ..graph import Graph

FP = "fp"
FP_LAYOUT = ((FP, ("R",)),)

# (numerator, denominator) encodings contributed by one node
Contribution = Callable[[Certs, int], tuple[list[int], list[int]]]
# target encodings the root expects, given the claimed n
Targets = Callable[[int], Iterable[int]]


def round2_prover(contribution: Contribution) -> Callable[[Graph, SharedRandomness, "list[Stack] | None"], list[Stack]]:
    def round2(g: Graph, rand: SharedRandomness, r1: Sequence[Stack] | None) -> list[Stack]:
        assert r1 is not None
        s = eval_point(rand.field_point)
        own = []
        for v in range(g.n):
            certs = {r.tag: r.values() for r in r1[v]}
            try:
                num, den = contribution(certs, certs["tree"]["n"])
                own.append(ratio(num, den, s))
            except (EncodingOverflow, KeyError, ZeroDivisionError):
                own.append(0)
        R = tree_products(g, own)
        return [(field_record(FP, R=R[v]),) for v in range(g.n)]

    return round2


def fingerprint_verify(view: NodeView, contribution: Contribution, targets: Targets, n: int) -> str | None:
    assert view.point is not None
    s = eval_point(view.point)
    try:
        num, den = contribution(view.own, n)
        own = ratio(num, den, s)
    except EncodingOverflow:
        return "fingerprint:encoding-overflow"
    if not aggregate_ok(view, FP, "R", own):
        return "fingerprint:aggregate-mismatch"
    if is_root(view):
        target = ratio(targets(n), (), s)
        if view.own[FP]["R"] != target:
            return "fingerprint:root-mismatch"
    return None


def with_round2(label: str, stacks: list[Stack], contribution: Contribution) -> ProverStrategy:
    return ProverStrategy(label, lambda _g: stacks, round2_prover(contribution))
