"""Three-round (dMAM) protocol for circle graphs."""

from __future__ import annotations

from typing import Iterator, Sequence

from ..blocks import claimed_n, encode, pair_code, tree_layout, tree_records, tree_verify
from ..engine import Certs, NodeView, Protocol, ProverStrategy, Schedule, Stack, record, width_for
from ..graph import Graph
from ..models import ChordModel, ModelFit, chords_cross, is_proper_model
from .common import ModelNotProper, ranks, sub_reason, successor_values
from .fingerprinted import FP_LAYOUT, fingerprint_verify, with_round2

TAG = "chord"
COP = "cop"
LAYOUT = (tree_layout(), (TAG, ("m", "M", "pi_m", "pi_M")), (COP, ("ym", "yM")))

# fingerprint tags
T_ENDS, T_PI_M, T_PI_BIG, T_COP_M, T_COP_BIG = range(5)


def certify(g: Graph, chords: Sequence[Sequence[int]], claimed: int | None = None) -> list[Stack]:
    n = g.n
    ms = [c[0] for c in chords]
    Ms = [c[1] for c in chords]
    pi_m, pi_M = ranks(ms), ranks(Ms)
    ym, yM = successor_values(ms, pi_m, n), successor_values(Ms, pi_M, n)
    tree = tree_records(g, claimed)
    wc = width_for(max(2 * n - 1, *ms, *Ms))
    wp = width_for(n - 1)
    return [
        (
            tree[v],
            record(TAG, ("m", ms[v], wc), ("M", Ms[v], wc), ("pi_m", pi_m[v], wp), ("pi_M", pi_M[v], wp)),
            record(COP, ("ym", ym[v], wc), ("yM", yM[v], wc)),
        )
        for v in range(n)
    ]


def contribution(c: Certs, n: int) -> tuple[list[int], list[int]]:
    me, cop = c[TAG], c[COP]
    num = [
        encode(T_ENDS, me["m"]),
        encode(T_ENDS, me["M"]),
        encode(T_PI_M, me["pi_m"]),
        encode(T_PI_BIG, me["pi_M"]),
        encode(T_COP_M, pair_code(me["m"], me["pi_m"], n)),
        encode(T_COP_BIG, pair_code(me["M"], me["pi_M"], n)),
    ]
    den = [
        encode(T_COP_M, pair_code(cop["ym"], (me["pi_m"] + 1) % n, n)),
        encode(T_COP_BIG, pair_code(cop["yM"], (me["pi_M"] + 1) % n, n)),
    ]
    return num, den


def targets(n: int) -> Iterator[int]:
    for i in range(2 * n):
        yield encode(T_ENDS, i)
    for i in range(n):
        yield encode(T_PI_M, i)
        yield encode(T_PI_BIG, i)


def round2_strategy(label: str, stacks: list[Stack]) -> ProverStrategy:
    return with_round2(label, stacks, contribution)


def honest(g: Graph, model: ChordModel) -> ProverStrategy:
    if is_proper_model(g, model) is not ModelFit.PROPER:
        raise ModelNotProper("chord model is not proper for this graph")
    return round2_strategy("honest", certify(g, model.chords))


def circle_counts(me: Certs, nbrs: Sequence[Certs]) -> tuple[int, int]:
    """(n_m, n_M): neighbours whose lower (upper) end lies in [m, M]."""
    n_m = sum(1 for w in nbrs if me["m"] <= w["m"] <= me["M"])
    n_M = sum(1 for w in nbrs if me["m"] <= w["M"] <= me["M"])
    return n_m, n_M


def balance_holds(me: Certs, nbrs: Sequence[Certs]) -> bool:
    n_m, n_M = circle_counts(me, nbrs)
    return 2 * (me["pi_M"] + me["pi_m"]) == me["M"] + me["m"] - 1 + n_M - n_m


def verify(view: NodeView) -> str | None:
    why = tree_verify(view)
    if why:
        return sub_reason("size", why)
    n = claimed_n(view)
    me, cop = view.own[TAG], view.own[COP]
    if not (me["m"] < me["M"] < 2 * n and me["pi_m"] < n and me["pi_M"] < n and cop["ym"] < 2 * n and cop["yM"] < 2 * n):
        return "range"
    if me["pi_m"] < n - 1 and not me["m"] < cop["ym"]:
        return "order-violation"
    if me["pi_M"] < n - 1 and not me["M"] < cop["yM"]:
        return "order-violation"
    why = fingerprint_verify(view, contribution, targets, n)
    if why:
        return why
    nbrs = [c[TAG] for c in view.nbrs.values()]
    if not all(chords_cross((me["m"], me["M"]), (w["m"], w["M"])) for w in nbrs):
        return "a:non-crossing"
    if not balance_holds(me, nbrs):
        return "b:balance"
    return None


PROTOCOL = Protocol("circle-dmam", Schedule.DMAM, LAYOUT, FP_LAYOUT, verify)


def rows_of(model: ChordModel) -> list[list[int]]:
    return model.assign()


def certify_rows(g: Graph, rows: Sequence[Sequence[int]], claimed: int | None = None) -> list[Stack]:
    return certify(g, rows, claimed)
