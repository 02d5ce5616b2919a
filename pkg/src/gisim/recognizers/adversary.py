"""Cheating provers.

Each strategy builds certificates the way the honest prover would, from some
model of the graph, and then applies one named corruption. On a graph outside
the class no model is proper, so even the uncorrupted strategies
(reverse-semi-proper, best-semi-proper, stale-model) are cheats.
"""

from __future__ import annotations

import dataclasses
import re
from typing import Sequence

from ..blocks import TREE, bfs_tree, path_records
from ..engine import Field, ProverStrategy, Record, Stack
from ..graph import Graph
from ..models import AnyModel, ModelFit, PermutationModel, is_proper_model
from ..oracle import BudgetExceeded, NoSemiProperModel, find_semi_proper_model, semi_proper_models
from .registry import Recognizer

STRATEGIES = (
    "wrong-n",
    "broken-tree",
    "broken-path",
    "duplicate-label",
    "reverse-semi-proper",
    "best-semi-proper",
    "bit-flip",
    "tampered-aggregate",
    "stale-model",
)


class StrategyInapplicable(ValueError):
    pass


def parse(spec: str) -> tuple[str, int | None]:
    """``"wrong-n(-2)"`` -> ("wrong-n", -2); ``"bit-flip"`` -> ("bit-flip", None)."""
    m = re.fullmatch(r"([a-z-]+)(?:\(([+-]?\d+)\))?", spec.strip())
    if not m or m.group(1) not in STRATEGIES:
        raise ValueError(f"unknown strategy {spec!r}; choose from {', '.join(STRATEGIES)}")
    return m.group(1), None if m.group(2) is None else int(m.group(2))


def all_related_rows(cls: str, n: int, k: int | None) -> list[list[int]]:
    """A model in which every pair is related: semi-proper for any graph."""
    if cls == "permutation":
        return [[i, n - 1 - i] for i in range(n)]
    if cls == "trapezoid":
        return [[2 * i, 2 * i + 1, 2 * (n - 1 - i), 2 * (n - 1 - i) + 1] for i in range(n)]
    if cls == "circle":
        return [[i, n + i] for i in range(n)]
    assert k is not None
    return [[i] + [n + (k - 1) * i + j for j in range(k - 1)] for i in range(n)]


def _semi_proper_rows(g: Graph, rec: Recognizer) -> list[list[int]] | None:
    assert rec.cls is not None
    try:
        if rec.cls == "permutation":
            for m in semi_proper_models(g, "permutation"):
                if is_proper_model(g, m) is ModelFit.SEMI_PROPER_ONLY:
                    return m.assign()
            return None
        return find_semi_proper_model(g, rec.cls, rec.k).assign()
    except (BudgetExceeded, NoSemiProperModel):
        return None


def base_rows(g: Graph, rec: Recognizer, base: AnyModel | None = None) -> list[list[int]]:
    if base is not None:
        return base.assign()
    if rec.cls is None:
        return []
    if rec.cls != "permutation":
        rows = _semi_proper_rows(g, rec)
        if rows is not None:
            return rows
    return all_related_rows(rec.cls, g.n, rec.k)


def _replace(stack: Stack, tag: str, **values: int) -> Stack:
    out = []
    for r in stack:
        if r.tag == tag:
            fields = tuple(
                Field(f.name, values[f.name], max(f.width, values[f.name].bit_length())) if f.name in values else f
                for f in r.fields
            )
            r = Record(tag, fields)
        out.append(r)
    return tuple(out)


def _flip(stack: Stack, position: int) -> Stack:
    total = sum(f.width for r in stack for f in r.fields)
    position %= total
    out = []
    for r in stack:
        fields = []
        for f in r.fields:
            if 0 <= position < f.width:
                f = dataclasses.replace(f, value=f.value ^ (1 << position))
            position -= f.width
            fields.append(f)
        out.append(Record(r.tag, tuple(fields)))
    return tuple(out)


def _by_id(g: Graph) -> list[int]:
    return sorted(range(g.n), key=lambda v: g.ids[v])


def adversary(
    strategy: str,
    g: Graph,
    rec: Recognizer,
    base: AnyModel | None = None,
    param: int | None = None,
) -> ProverStrategy:
    name, inline = parse(strategy)
    if inline is not None:
        param = inline
    label = name if param is None else f"{name}({param:+d})" if name == "wrong-n" else f"{name}({param})"

    if name == "stale-model" and base is None:
        raise StrategyInapplicable("stale-model needs a base model")
    if name == "reverse-semi-proper":
        if rec.cls != "permutation":
            raise StrategyInapplicable("reverse-semi-proper applies to the permutation scheme only")
        rows = PermutationModel.reversed_for(g.n).assign()
    elif name == "best-semi-proper":
        if rec.cls is None:
            raise StrategyInapplicable("best-semi-proper needs a model class")
        found = _semi_proper_rows(g, rec)
        if found is None:
            raise StrategyInapplicable("no semi-proper model within the oracle budget")
        rows = found
    else:
        rows = base_rows(g, rec, base)

    if name == "duplicate-label":
        if g.n < 2 or rec.cls is None:
            raise StrategyInapplicable("duplicate-label needs two labelled nodes")
        a, b = _by_id(g)[:2]
        rows = [list(r) for r in rows]
        rows[a][0] = rows[b][0]

    claimed = None
    if name == "wrong-n":
        delta = 1 if param is None else param
        if delta == 0 or g.n + delta < 1:
            raise StrategyInapplicable("wrong-n needs a nonzero shift leaving n positive")
        claimed = g.n + delta
    stacks = [tuple(s) for s in rec.certify_rows(g, rows, claimed)]

    if name == "broken-tree":
        if g.n < 2:
            raise StrategyInapplicable("broken-tree needs a non-root node")
        _, dist, _ = bfs_tree(g)
        v = max(range(g.n), key=lambda x: (dist[x], g.ids[x]))
        stacks[v] = _replace(stacks[v], TREE, dist=dist[v] + 1)
    elif name == "broken-path":
        if rec.interactive or not rec.path_tags:
            raise StrategyInapplicable("broken-path applies to the one-round schemes")
        tag = rec.path_tags[0]
        recs = [next(r for r in s if r.tag == tag).values() for s in stacks]
        path = sorted((v for v in range(g.n) if recs[v]["on"]), key=lambda v: recs[v]["pos"])
        # drop the far endpoint; a one-node path is stretched to a neighbour instead
        path = path[:-1] if len(path) > 1 else path + [g.adj[path[0]][0]]
        fresh = path_records(g, path, tag)
        stacks = [tuple(fresh[v] if r.tag == tag else r for r in s) for v, s in enumerate(stacks)]
    elif name == "bit-flip":
        v = _by_id(g)[0]
        stacks[v] = _flip(stacks[v], 0 if param is None else param)
    elif name == "tampered-aggregate":
        if not rec.interactive or rec.rank_field is None:
            raise StrategyInapplicable("tampered-aggregate applies to the three-round protocols")
        tag, rank, y = rec.rank_field
        ranks = [next(r for r in s if r.tag == tag).values()[rank] for s in stacks]
        top = max(range(g.n), key=lambda v: (ranks[v], g.ids[v]))
        # the top-ranked node's successor value escapes the local order check
        cop = next(r for r in stacks[top] if r.tag == "cop").values()
        stacks[top] = _replace(stacks[top], "cop", **{y: cop[y] + 1 + (param or 0)})
    return rec.wrap(label, list(stacks))


def applicable(strategy: str, g: Graph, rec: Recognizer, base: AnyModel | None = None) -> bool:
    try:
        adversary(strategy, g, rec, base)
    except StrategyInapplicable:
        return False
    return True


def battery(g: Graph, rec: Recognizer, names: Sequence[str] = STRATEGIES, base: AnyModel | None = None):
    """(name, strategy-or-None) for each requested strategy; None marks inapplicable."""
    out = []
    for name in names:
        try:
            out.append((name, adversary(name, g, rec, base)))
        except StrategyInapplicable:
            out.append((name, None))
    return out
