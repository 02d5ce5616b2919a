"""One-round proof-labeling scheme for trapezoid graphs."""

from __future__ import annotations

from collections import Counter
from typing import Sequence

from ..blocks import claimed_n, path_layout, path_records, path_verify, tree_layout, tree_records, tree_verify
from ..engine import Certs, NodeView, Protocol, ProverStrategy, Schedule, Stack, record, width_for
from ..graph import Graph
from ..models import ModelFit, TrapezoidModel, is_proper_model, trapezoids_intersect
from .common import ModelNotProper, shortest_path_between, sub_reason
from .permutation import next_free

TAG = "trap"
PATHS = ("path_t", "path_b")
COORDS = ("t1", "t2", "b1", "b2")
LAYOUT = (tree_layout(), (TAG, COORDS + ("p", "q")), path_layout(PATHS[0]), path_layout(PATHS[1]))


def certify(g: Graph, traps: Sequence[Sequence[int]], claimed: int | None = None) -> list[Stack]:
    n = g.n
    tree = tree_records(g, claimed)
    paths = []
    for lo, hi in ((0, 1), (2, 3)):
        s = min(range(n), key=lambda v: traps[v][lo])
        t = max(range(n), key=lambda v: traps[v][hi])
        paths.append(shortest_path_between(g, s, t))
    pt = path_records(g, paths[0], PATHS[0])
    pb = path_records(g, paths[1], PATHS[1])
    wc = width_for(max(2 * n - 1, *(c for t in traps for c in t)))
    ws = width_for(2 * n)
    out = []
    for v in range(n):
        t1, t2, b1, b2 = traps[v]
        top = {c for u in g.adj[v] for c in traps[u][:2]}
        bot = {c for u in g.adj[v] for c in traps[u][2:]}
        p = next_free(t2, top, 2 * n)
        q = next_free(b2, bot, 2 * n)
        rec = record(TAG, ("t1", t1, wc), ("t2", t2, wc), ("b1", b1, wc), ("b2", b2, wc), ("p", p, ws), ("q", q, ws))
        out.append((tree[v], rec, pt[v], pb[v]))
    return out


def honest(g: Graph, model: TrapezoidModel) -> ProverStrategy:
    if is_proper_model(g, model) is not ModelFit.PROPER:
        raise ModelNotProper("trapezoid model is not proper for this graph")
    stacks = certify(g, model.traps)
    return ProverStrategy("honest", lambda _g: stacks)


def f_counts(me: Certs, nbrs: Sequence[Certs]) -> tuple[int, int]:
    """Positions left of t1 (resp. b1) held by non-neighbours, given full coverage."""
    f_t = me["t1"] - sum(1 for w in nbrs for c in (w["t1"], w["t2"]) if c < me["t1"])
    f_b = me["b1"] - sum(1 for w in nbrs for c in (w["b1"], w["b2"]) if c < me["b1"])
    return f_t, f_b


def _trap(c: Certs) -> tuple[int, int, int, int]:
    return c["t1"], c["t2"], c["b1"], c["b2"]


def verify(view: NodeView) -> str | None:
    why = tree_verify(view)
    if why:
        return sub_reason("a", why)
    n = claimed_n(view)
    me = view.own[TAG]
    for tag, lo, hi in ((PATHS[0], "t1", "t2"), (PATHS[1], "b1", "b2")):
        why = path_verify(view, lambda c, a=lo: c[TAG][a] == 0, lambda c, b=hi: c[TAG][b] == 2 * n - 1, tag)
        if why:
            return sub_reason("b", why)
    if not (me["t1"] < me["t2"] < 2 * n and me["b1"] < me["b2"] < 2 * n and me["p"] <= 2 * n and me["q"] <= 2 * n):
        return "c:range"
    nbrs = [c[TAG] for c in view.nbrs.values()]
    if not all(trapezoids_intersect(_trap(me), _trap(w)) for w in nbrs):
        return "d:disjoint-neighbour"
    top = {w[c] for w in nbrs for c in ("t1", "t2")}
    bot = {w[c] for w in nbrs for c in ("b1", "b2")}
    if not (set(range(me["t1"] + 1, me["t2"])) <= top and set(range(me["b1"] + 1, me["b2"])) <= bot):
        return "e:interior"
    if not (me["t2"] < me["p"] and me["b2"] < me["q"]):
        return "f:order"
    if me["p"] != next_free(me["t2"], top, 2 * n) or me["q"] != next_free(me["b2"], bot, 2 * n):
        return "pq:self-check"
    top_count = Counter(w[c] for w in nbrs for c in ("t1", "t2"))
    bot_count = Counter(w[c] for w in nbrs for c in ("b1", "b2"))
    for w in nbrs:
        # p_w must be a vertex of a neighbour of v other than w itself
        if w["p"] < me["t2"] and top_count[w["p"]] - (w["p"] in (w["t1"], w["t2"])) < 1:
            return "g:gap"
        if w["q"] < me["b2"] and bot_count[w["q"]] - (w["q"] in (w["b1"], w["b2"])) < 1:
            return "h:gap"
    f_t, f_b = f_counts(me, nbrs)
    if f_t != f_b:
        return "i:balance"
    return None


PROTOCOL = Protocol("trapezoid-pls", Schedule.DM, LAYOUT, (), verify)


def rows_of(model: TrapezoidModel) -> list[list[int]]:
    return model.assign()


def certify_rows(g: Graph, rows: Sequence[Sequence[int]], claimed: int | None = None) -> list[Stack]:
    return certify(g, rows, claimed)
