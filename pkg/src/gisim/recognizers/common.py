from __future__ import annotations

from bisect import bisect_left
from typing import Sequence

from ..engine import Certs, NodeView


class ModelNotProper(ValueError):
    pass


def ranks(values: Sequence[int]) -> list[int]:
    """rank[v] = number of entries strictly below values[v]."""
    order = sorted(values)
    return [bisect_left(order, x) for x in values]


def successor_values(x: Sequence[int], rank: Sequence[int], size: int) -> list[int]:
    """For each entry, the x of the entry ranked one higher (cyclically); 0 when absent."""
    by_rank: dict[int, int] = {}
    for xv, r in zip(x, rank):
        by_rank.setdefault(r, xv)
    return [by_rank.get((r + 1) % size, 0) for r in rank]


def shortest_path_between(g, s: int, t: int) -> list[int]:
    return g.shortest_path(s, t) if s != t else [s]


def nbr_values(view: NodeView, tag: str, *names: str) -> list[int]:
    return [c[tag][name] for c in view.nbrs.values() for name in names]


def sub_reason(prefix: str, why: str | None) -> str | None:
    return None if why is None else f"{prefix}:{why}"


def own(view: NodeView, tag: str) -> Certs:
    return view.own[tag]  # type: ignore[return-value]
