"""One-round proof-labeling scheme for permutation graphs."""

from __future__ import annotations

from typing import Sequence

from ..blocks import claimed_n, path_layout, path_records, path_verify, tree_layout, tree_records, tree_verify
from ..engine import NodeView, Protocol, ProverStrategy, Schedule, Stack, record, width_for
from ..graph import Graph
from ..models import ModelFit, PermutationModel, is_inversion, is_proper_model
from .common import ModelNotProper, shortest_path_between, sub_reason

TAG = "perm"
PATHS = ("path1", "path2")
LAYOUT = (tree_layout(), (TAG, ("l1", "l2", "p", "q")), path_layout(PATHS[0]), path_layout(PATHS[1]))


def next_free(start: int, taken: set[int], limit: int) -> int:
    """Smallest value above ``start`` and below ``limit`` outside ``taken``; ``limit`` if none."""
    k = start + 1
    while k < limit and k in taken:
        k += 1
    return k


def certify(g: Graph, l1: Sequence[int], l2: Sequence[int], claimed: int | None = None) -> list[Stack]:
    """Certificates for the given positions, computed as an honest prover would."""
    n = g.n
    tree = tree_records(g, claimed)
    paths = []
    for line in (l1, l2):
        s = min(range(n), key=lambda v: line[v])
        t = max(range(n), key=lambda v: line[v])
        paths.append(shortest_path_between(g, s, t))
    p1 = path_records(g, paths[0], PATHS[0])
    p2 = path_records(g, paths[1], PATHS[1])
    wl = width_for(max(n - 1, *l1, *l2))
    ws = width_for(n)
    out = []
    for v in range(n):
        p = next_free(l1[v], {l1[u] for u in g.adj[v]}, n)
        q = next_free(l2[v], {l2[u] for u in g.adj[v]}, n)
        perm = record(TAG, ("l1", l1[v], wl), ("l2", l2[v], wl), ("p", p, ws), ("q", q, ws))
        out.append((tree[v], perm, p1[v], p2[v]))
    return out


def honest(g: Graph, model: PermutationModel) -> ProverStrategy:
    if is_proper_model(g, model) is not ModelFit.PROPER:
        raise ModelNotProper("permutation model is not proper for this graph")
    stacks = certify(g, model.l1, model.l2)
    return ProverStrategy("honest", lambda _g: stacks)


def degree_split(l1v: int, nbr_l1: Sequence[int]) -> tuple[int, int]:
    plus = sum(1 for x in nbr_l1 if x > l1v)
    return plus, len(nbr_l1) - plus


def _gap_ok(view: NodeView, line: str, gap: str) -> bool:
    me = view.own[TAG]
    mine = {c[TAG][line] for c in view.nbrs.values()}
    for c in view.nbrs.values():
        w = c[TAG]
        if w[line] < w[gap] < me[line] and w[gap] not in mine:
            return False
    return True


def _self_ok(view: NodeView, line: str, gap: str, n: int) -> bool:
    me = view.own[TAG]
    return me[gap] == next_free(me[line], {c[TAG][line] for c in view.nbrs.values()}, n)


def verify(view: NodeView) -> str | None:
    why = tree_verify(view)
    if why:
        return sub_reason("a", why)
    n = claimed_n(view)
    me = view.own[TAG]
    for tag, line in zip(PATHS, ("l1", "l2")):
        why = path_verify(view, lambda c, ln=line: c[TAG][ln] == 0, lambda c, ln=line: c[TAG][ln] == n - 1, tag)
        if why:
            return sub_reason("b", why)
    if not (me["l1"] < n and me["l2"] < n and me["p"] <= n and me["q"] <= n):
        return "c:range"
    nbrs = [c[TAG] for c in view.nbrs.values()]
    if not all(is_inversion(me["l1"], me["l2"], w["l1"], w["l2"]) for w in nbrs):
        return "d:non-inversion"
    plus, minus = degree_split(me["l1"], [w["l1"] for w in nbrs])
    if me["l1"] + plus != me["l2"] + minus:
        return "e:balance"
    if not _self_ok(view, "l1", "p", n) or not _self_ok(view, "l2", "q", n):
        return "pq:self-check"
    if not _gap_ok(view, "l1", "p"):
        return "f:gap"
    if not _gap_ok(view, "l2", "q"):
        return "g:gap"
    return None


PROTOCOL = Protocol("permutation-pls", Schedule.DM, LAYOUT, (), verify)


def rows_of(model: PermutationModel) -> list[list[int]]:
    return model.assign()


def certify_rows(g: Graph, rows: Sequence[Sequence[int]], claimed: int | None = None) -> list[Stack]:
    return certify(g, [r[0] for r in rows], [r[1] for r in rows], claimed)
