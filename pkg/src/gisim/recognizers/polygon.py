"""Three-round (dMAM) protocol for k-polygon-circle graphs."""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Sequence

from ..blocks import claimed_n, encode, pair_code, tree_layout, tree_records, tree_verify
from ..engine import Certs, Layout, NodeView, Protocol, ProverStrategy, Schedule, Stack, record, width_for
from ..graph import Graph
from ..models import ModelFit, PolygonModel, is_proper_model, polygons_intersect
from .common import ModelNotProper, ranks, sub_reason, successor_values
from .fingerprinted import FP_LAYOUT, fingerprint_verify, with_round2

TAG = "poly"
COP = "cop"

# fingerprint tags; the sigma check runs over 2n virtual nodes, two per real node
T_VERTS, T_PI_1, T_PI_K, T_SIGMA, T_COP_1, T_COP_K, T_COP_S = range(7)


def vertex_names(k: int) -> tuple[str, ...]:
    return tuple(f"p{i}" for i in range(1, k + 1))


def layout(k: int) -> Layout:
    return (
        tree_layout(),
        (TAG, vertex_names(k) + ("pi_1", "pi_k", "sigma_1", "sigma_k")),
        (COP, ("y1", "yk", "ys1", "ysk")),
    )


def certify(g: Graph, polys: Sequence[Sequence[int]], k: int, claimed: int | None = None) -> list[Stack]:
    n = g.n
    first = [p[0] for p in polys]
    last = [p[-1] for p in polys]
    pi_1, pi_k = ranks(first), ranks(last)
    sigma = ranks(first + last)  # rank among the 2n endpoint positions
    sigma_1, sigma_k = sigma[:n], sigma[n:]
    y1 = successor_values(first, pi_1, n)
    yk = successor_values(last, pi_k, n)
    ys = successor_values(first + last, sigma, 2 * n)
    tree = tree_records(g, claimed)
    wv = width_for(max(k * n - 1, *(x for p in polys for x in p)))
    wp = width_for(n - 1)
    ws = width_for(2 * n - 1)
    names = vertex_names(k)
    out = []
    for v in range(n):
        verts = tuple((name, x, wv) for name, x in zip(names, polys[v]))
        poly = record(TAG, *verts, ("pi_1", pi_1[v], wp), ("pi_k", pi_k[v], wp), ("sigma_1", sigma_1[v], ws), ("sigma_k", sigma_k[v], ws))
        cop = record(COP, ("y1", y1[v], wv), ("yk", yk[v], wv), ("ys1", ys[v], wv), ("ysk", ys[n + v], wv))
        out.append((tree[v], poly, cop))
    return out


def _ends(me: Certs, k: int) -> tuple[int, int]:
    return me["p1"], me[f"p{k}"]


def contribution_for(k: int):
    names = vertex_names(k)

    def contribution(c: Certs, n: int) -> tuple[list[int], list[int]]:
        me, cop = c[TAG], c[COP]
        p1, pk = _ends(me, k)
        num = [encode(T_VERTS, me[x]) for x in names]
        num += [
            encode(T_PI_1, me["pi_1"]),
            encode(T_PI_K, me["pi_k"]),
            encode(T_SIGMA, me["sigma_1"]),
            encode(T_SIGMA, me["sigma_k"]),
            encode(T_COP_1, pair_code(p1, me["pi_1"], n)),
            encode(T_COP_K, pair_code(pk, me["pi_k"], n)),
            encode(T_COP_S, pair_code(p1, me["sigma_1"], 2 * n)),
            encode(T_COP_S, pair_code(pk, me["sigma_k"], 2 * n)),
        ]
        den = [
            encode(T_COP_1, pair_code(cop["y1"], (me["pi_1"] + 1) % n, n)),
            encode(T_COP_K, pair_code(cop["yk"], (me["pi_k"] + 1) % n, n)),
            encode(T_COP_S, pair_code(cop["ys1"], (me["sigma_1"] + 1) % (2 * n), 2 * n)),
            encode(T_COP_S, pair_code(cop["ysk"], (me["sigma_k"] + 1) % (2 * n), 2 * n)),
        ]
        return num, den

    return contribution


def targets_for(k: int):
    def targets(n: int) -> Iterator[int]:
        for i in range(k * n):
            yield encode(T_VERTS, i)
        for i in range(n):
            yield encode(T_PI_1, i)
            yield encode(T_PI_K, i)
        for i in range(2 * n):
            yield encode(T_SIGMA, i)

    return targets


def alpha_beta(me: Certs, nbrs: Sequence[Certs], n: int, k: int) -> tuple[int, int]:
    """|alpha(v)| and |beta_1(v)| from v's own record and its neighbours' records.

    The outside region is strict: positions below p_1(v) or above p_k(v).
    beta_1 counts non-neighbours only, so neighbours whose p_1 lies outside
    are subtracted from the rank-based count.
    """
    p1, pk = _ends(me, k)
    names = vertex_names(k)
    n1k = sum(1 for w in nbrs for x in names if w[x] < p1 or w[x] > pk)
    alpha = k * n - pk + p1 - 1 - n1k
    outside_nbrs = sum(1 for w in nbrs if w["p1"] < p1 or w["p1"] > pk)
    beta1 = n - me["sigma_k"] + me["pi_k"] + me["pi_1"] - outside_nbrs
    return alpha, beta1


def make_verifier(k: int):
    names = vertex_names(k)
    contribution = contribution_for(k)
    targets = targets_for(k)

    def verify(view: NodeView) -> str | None:
        why = tree_verify(view)
        if why:
            return sub_reason("size", why)
        n = claimed_n(view)
        me, cop = view.own[TAG], view.own[COP]
        verts = [me[x] for x in names]
        if any(a >= b for a, b in zip(verts, verts[1:])) or verts[-1] >= k * n:
            return "range"
        if not (me["pi_1"] < n and me["pi_k"] < n and me["sigma_1"] < 2 * n and me["sigma_k"] < 2 * n):
            return "range"
        if not all(cop[y] < k * n for y in ("y1", "yk", "ys1", "ysk")):
            return "range"
        p1, pk = verts[0], verts[-1]
        if me["pi_1"] < n - 1 and not p1 < cop["y1"]:
            return "order-violation"
        if me["pi_k"] < n - 1 and not pk < cop["yk"]:
            return "order-violation"
        if me["sigma_1"] < 2 * n - 1 and not p1 < cop["ys1"]:
            return "order-violation"
        if me["sigma_k"] < 2 * n - 1 and not pk < cop["ysk"]:
            return "order-violation"
        why = fingerprint_verify(view, contribution, targets, n)
        if why:
            return why
        nbrs = [c[TAG] for c in view.nbrs.values()]
        if not all(polygons_intersect(verts, [w[x] for x in names]) for w in nbrs):
            return "a:disjoint-neighbour"
        alpha, beta1 = alpha_beta(me, nbrs, n, k)
        if alpha != k * beta1:
            return "b:alpha-beta"
        return None

    return verify


@lru_cache(maxsize=None)
def protocol(k: int) -> Protocol:
    if k < 2:
        raise ValueError("polygon protocol needs k >= 2")
    return Protocol(f"polygon-dmam(k={k})", Schedule.DMAM, layout(k), FP_LAYOUT, make_verifier(k))


def round2_strategy(label: str, stacks: list[Stack], k: int) -> ProverStrategy:
    return with_round2(label, stacks, contribution_for(k))


def honest(g: Graph, model: PolygonModel) -> ProverStrategy:
    if is_proper_model(g, model) is not ModelFit.PROPER:
        raise ModelNotProper("polygon model is not proper for this graph")
    return round2_strategy("honest", certify(g, model.polys, model.k), model.k)


def rows_of(model: PolygonModel) -> list[list[int]]:
    return model.assign()
