"""Toolbox sub-protocols: spanning tree and size, s,t-paths, multiset fingerprints.

Every helper here is written from the point of view of one node. Host
protocols embed the records under their own tags and call the verifiers
from their node-verifier.
"""

from __future__ import annotations

from typing import Any, Callable, Iterable, Sequence

from .engine import (
    P,
    Certs,
    NodeView,
    Protocol,
    ProverStrategy,
    Record,
    Schedule,
    SharedRandomness,
    Stack,
    record,
    run,
    width_for,
)
from .graph import ID_BITS, Graph

FIELD_BITS = 61
TAG_SHIFT = 40
EVAL_OFFSET = 2**48  # evaluation points sit above every encoding, so s - b is never 0


class EncodingOverflow(ValueError):
    pass


# ---------------------------------------------------------------------------
# field arithmetic


def fingerprint(values: Iterable[int], s: int, p: int = P) -> int:
    """Characteristic polynomial of a multiset evaluated at ``s``: prod (s - v) mod p."""
    acc = 1
    for v in values:
        if not 0 <= v < p:
            raise EncodingOverflow(f"value {v} does not fit the field")
        acc = acc * (s - v) % p
    return acc


def encode(tag: int, value: int) -> int:
    if not 0 <= value < 1 << TAG_SHIFT or not 0 <= tag < 256:
        raise EncodingOverflow(f"cannot encode ({tag}, {value})")
    return tag << TAG_SHIFT | value


def eval_point(field_point: int) -> int:
    return EVAL_OFFSET + field_point % (P - EVAL_OFFSET)


def ratio(num: Iterable[int], den: Iterable[int], s: int) -> int:
    """prod (s - a) / prod (s - b) in F_p; the caller guarantees s exceeds every b."""
    top = fingerprint(num, s)
    bottom = fingerprint(den, s)
    return top * pow(bottom, P - 2, P) % P


# ---------------------------------------------------------------------------
# spanning tree and size

TREE = "tree"
TREE_FIELDS = ("root", "parent", "dist", "count", "n")


def tree_layout(tag: str = TREE) -> tuple[str, tuple[str, ...]]:
    return tag, TREE_FIELDS


def bfs_tree(g: Graph) -> tuple[int, list[int], list[int | None]]:
    """BFS tree rooted at the smallest identifier: (root, dist, parent)."""
    root = min(range(g.n), key=lambda v: g.ids[v])
    dist, parent = g.bfs(root)
    return root, dist, parent


def subtree_totals(g: Graph, parent: Sequence[int | None], dist: Sequence[int], own: Sequence[int], combine) -> list[int]:
    acc = list(own)
    for v in sorted(range(g.n), key=lambda x: -dist[x]):
        p = parent[v]
        if p is not None:
            acc[p] = combine(acc[p], acc[v])
    return acc


def tree_records(g: Graph, claimed_n: int | None = None, tag: str = TREE) -> list[Record]:
    n = g.n if claimed_n is None else claimed_n
    root, dist, parent = bfs_tree(g)
    counts = subtree_totals(g, parent, dist, [1] * g.n, lambda a, b: a + b)
    wn = width_for(max(n, g.n))
    return [
        record(
            tag,
            ("root", g.ids[root], ID_BITS),
            ("parent", 0 if parent[v] is None else g.ids[parent[v]], ID_BITS),
            ("dist", dist[v], width_for(max(g.n - 1, dist[v]))),
            ("count", counts[v], wn),
            ("n", n, wn),
        )
        for v in range(g.n)
    ]


def tree_children(view: NodeView, tag: str = TREE) -> list[Certs]:
    return [c for c in view.nbrs.values() if c[tag]["parent"] == view.node_id]


def is_root(view: NodeView, tag: str = TREE) -> bool:
    return view.own[tag]["root"] == view.node_id


def claimed_n(view: NodeView, tag: str = TREE) -> int:
    return view.own[tag]["n"]


def tree_verify(view: NodeView, tag: str = TREE) -> str | None:
    me = view.own[tag]
    for c in view.nbrs.values():
        if c[tag]["root"] != me["root"] or c[tag]["n"] != me["n"]:
            return "n-disagreement"
    if me["n"] < 1:
        return "n-disagreement"
    kids = tree_children(view, tag)
    if me["count"] != 1 + sum(c[tag]["count"] for c in kids):
        return "count-mismatch"
    if is_root(view, tag):
        if me["parent"] != 0 or me["dist"] != 0:
            return "orphan-root"
        if me["count"] != me["n"]:
            return "count-mismatch"
        return None
    if me["parent"] == 0:
        return "orphan-root"
    if me["parent"] == view.node_id:
        return "tree-cycle"
    par = view.nbrs.get(me["parent"])
    if par is None:
        return "parent-dist"
    if par[tag]["parent"] == view.node_id:
        return "tree-cycle"
    if par[tag]["dist"] != me["dist"] - 1:
        return "parent-dist"
    return None


# ---------------------------------------------------------------------------
# s,t-path: positions along the path plus tree-aggregated endpoint counts

PATH_FIELDS = ("on", "pos", "end", "starts", "ends")


def path_layout(tag: str) -> tuple[str, tuple[str, ...]]:
    return tag, PATH_FIELDS


def path_records(g: Graph, path: Sequence[int], tag: str) -> list[Record]:
    _, dist, parent = bfs_tree(g)
    pos = {v: i for i, v in enumerate(path)}
    starts = subtree_totals(g, parent, dist, [int(pos.get(v) == 0) for v in range(g.n)], lambda a, b: a + b)
    ends = subtree_totals(g, parent, dist, [int(v == path[-1]) for v in range(g.n)], lambda a, b: a + b)
    wp = width_for(g.n - 1)
    return [
        record(
            tag,
            ("on", int(v in pos), 1),
            ("pos", pos.get(v, 0), wp),
            ("end", int(v == path[-1]), 1),
            ("starts", starts[v], 1),
            ("ends", ends[v], 1),
        )
        for v in range(g.n)
    ]


def path_verify(
    view: NodeView,
    s_pred: Callable[[Certs], bool],
    t_pred: Callable[[Certs], bool],
    tag: str,
    tree_tag: str = TREE,
) -> str | None:
    me = view.own[tag]
    kids = tree_children(view, tree_tag)
    is_start = me["on"] == 1 and me["pos"] == 0
    is_end = me["on"] == 1 and me["end"] == 1
    if me["on"] == 0 and (me["pos"] != 0 or me["end"] != 0):
        return "pos-gap"
    if me["starts"] != int(is_start) + sum(c[tag]["starts"] for c in kids):
        return "pos-gap"
    if me["ends"] != int(is_end) + sum(c[tag]["ends"] for c in kids):
        return "pos-gap"
    if is_root(view, tree_tag) and (me["starts"] != 1 or me["ends"] != 1):
        return "endpoint-missing"
    if is_start and not s_pred(view.own):
        return "endpoint-missing"
    if is_end and not t_pred(view.own):
        return "endpoint-missing"
    if me["on"] == 1 and me["pos"] > 0:
        if not any(c[tag]["on"] == 1 and c[tag]["pos"] == me["pos"] - 1 for c in view.nbrs.values()):
            return "pred-not-neighbor"
    return None


# ---------------------------------------------------------------------------
# aggregation of field products along the tree


def tree_products(g: Graph, own: Sequence[int]) -> list[int]:
    _, dist, parent = bfs_tree(g)
    return subtree_totals(g, parent, dist, own, lambda a, b: a * b % P)


def aggregate_ok(view: NodeView, tag: str, name: str, own_factor: int, tree_tag: str = TREE) -> bool:
    value = view.own[tag][name]
    if value >= P:
        return False
    acc = own_factor
    for c in tree_children(view, tree_tag):
        acc = acc * c[tag][name] % P
    return value == acc


def field_record(tag: str, **values: int) -> Record:
    return record(tag, *((k, v, FIELD_BITS) for k, v in values.items()))


def pair_code(x: int, pi: int, n: int) -> int:
    """Injective encoding of (x, pi) with pi in [n]."""
    return x * n + pi


# ---------------------------------------------------------------------------
# stand-alone toolbox protocols; node inputs travel in Protocol.labels

EQ = "eq"


def equality_protocol(a: Sequence[int], b: Sequence[int]) -> Protocol:
    def verify(view: NodeView) -> str | None:
        why = tree_verify(view)
        if why:
            return why
        s = view.point
        assert s is not None
        la, lb = view.label
        if not aggregate_ok(view, EQ, "A", (s - la) % P) or not aggregate_ok(view, EQ, "B", (s - lb) % P):
            return "aggregate-mismatch"
        if is_root(view) and view.own[EQ]["A"] != view.own[EQ]["B"]:
            return "root-mismatch"
        return None

    return Protocol(
        "equality-dam",
        Schedule.DAM,
        (),
        (tree_layout(), (EQ, ("A", "B"))),
        verify,
        labels=list(zip(a, b)),
    )


def equality_prover(a: Sequence[int], b: Sequence[int], tamper: int = 0) -> ProverStrategy:
    """Honest aggregation; ``tamper`` is added to the root's B product (a cheating aggregate)."""

    def round2(g: Graph, rand: SharedRandomness, _r1: Any) -> list[Stack]:
        s = rand.field_point
        A = tree_products(g, [(s - x) % P for x in a])
        B = tree_products(g, [(s - x) % P for x in b])
        root, _, _ = bfs_tree(g)
        B[root] = (B[root] + tamper) % P
        tree = tree_records(g)
        return [(tree[v], field_record(EQ, A=A[v], B=B[v])) for v in range(g.n)]

    return ProverStrategy("tampered-aggregate" if tamper else "honest", None, round2)


def equality_certify_and_verify(g: Graph, a: Sequence[int], b: Sequence[int], seed: int = 0) -> list[str | None]:
    return list(run(equality_protocol(a, b), g, equality_prover(a, b), seed).verdicts)


PERM = "perm_fp"


def permutation_protocol(values: Sequence[Sequence[int]], m: int) -> Protocol:
    """Checks that the listed values (``m`` per node) form exactly [m*n]."""

    def verify(view: NodeView) -> str | None:
        why = tree_verify(view)
        if why:
            return why
        s = view.point
        assert s is not None
        if len(view.label) != m:
            return "arity-mismatch"
        try:
            own = fingerprint(view.label, s)
        except EncodingOverflow:
            return "encoding-overflow"
        if not aggregate_ok(view, PERM, "F", own):
            return "aggregate-mismatch"
        if is_root(view) and view.own[PERM]["F"] != fingerprint(range(m * claimed_n(view)), s):
            return "root-target-mismatch"
        return None

    return Protocol(
        "permutation-dmam", Schedule.DMAM, (tree_layout(),), ((PERM, ("F",)),), verify, labels=[tuple(v) for v in values]
    )


def permutation_prover(values: Sequence[Sequence[int]]) -> ProverStrategy:
    def round1(g: Graph) -> list[Stack]:
        return [(r,) for r in tree_records(g)]

    def round2(g: Graph, rand: SharedRandomness, _r1: Any) -> list[Stack]:
        s = rand.field_point
        F = tree_products(g, [fingerprint(v, s) for v in values])
        return [(field_record(PERM, F=F[v]),) for v in range(g.n)]

    return ProverStrategy("honest", round1, round2)


def permutation_check(g: Graph, values: Sequence[Sequence[int]], m: int, seed: int = 0) -> list[str | None]:
    return list(run(permutation_protocol(values, m), g, permutation_prover(values), seed).verdicts)


COP = "cop"
COP_FP = "cop_fp"


def cop_protocol(x: Sequence[int], pi: Sequence[int], N: int) -> Protocol:
    """Corresponding order: pi is a bijection onto [n] and x is ordered like pi."""

    def verify(view: NodeView) -> str | None:
        why = tree_verify(view)
        if why:
            return why
        s = view.point
        assert s is not None
        n = claimed_n(view)
        xv, pv = view.label
        y = view.own[COP]["y"]
        if not (0 <= xv < N and 0 <= y < N and 0 <= pv < n):
            return "out-of-range"
        if pv < n - 1 and not xv < y:
            return "order-violation"
        a = pair_code(xv, pv, n)
        b = pair_code(y, (pv + 1) % n, n)
        if a >= P or b >= P:
            return "encoding-overflow"
        if not (
            aggregate_ok(view, COP_FP, "perm", (s - pv) % P)
            and aggregate_ok(view, COP_FP, "A", (s - a) % P)
            and aggregate_ok(view, COP_FP, "B", (s - b) % P)
        ):
            return "aggregate-mismatch"
        if is_root(view):
            me = view.own[COP_FP]
            if me["perm"] != fingerprint(range(n), s):
                return "root-target-mismatch"
            if me["A"] != me["B"]:
                return "root-mismatch"
        return None

    return Protocol(
        "cop-dmam",
        Schedule.DMAM,
        (tree_layout(), (COP, ("y",))),
        ((COP_FP, ("perm", "A", "B")),),
        verify,
        labels=list(zip(x, pi)),
    )


def cop_successors(x: Sequence[int], pi: Sequence[int]) -> list[int]:
    """Honest y: the x of the node ranked next, wrapping to the rank-0 node."""
    by_rank = {p: xv for xv, p in zip(x, pi)}
    n = len(x)
    return [by_rank.get((p + 1) % n, 0) for p in pi]


def cop_prover(x: Sequence[int], pi: Sequence[int], N: int, y: Sequence[int] | None = None) -> ProverStrategy:
    ys = list(cop_successors(x, pi) if y is None else y)
    wN = width_for(max(N - 1, max(ys, default=0)))

    def round1(g: Graph) -> list[Stack]:
        tree = tree_records(g)
        return [(tree[v], record(COP, ("y", ys[v], wN))) for v in range(g.n)]

    def round2(g: Graph, rand: SharedRandomness, _r1: Any) -> list[Stack]:
        s = rand.field_point
        n = g.n
        perm = tree_products(g, [(s - p) % P for p in pi])
        A = tree_products(g, [(s - pair_code(xv, p, n)) % P for xv, p in zip(x, pi)])
        B = tree_products(g, [(s - pair_code(yv, (p + 1) % n, n)) % P for yv, p in zip(ys, pi)])
        return [(field_record(COP_FP, perm=perm[v], A=A[v], B=B[v]),) for v in range(n)]

    return ProverStrategy("honest" if y is None else "chosen-y", round1, round2)


def cop_verify(
    g: Graph, x: Sequence[int], pi: Sequence[int], N: int, y: Sequence[int] | None = None, seed: int = 0
) -> list[str | None]:
    return list(run(cop_protocol(x, pi, N), g, cop_prover(x, pi, N, y), seed).verdicts)
