"""Geometric intersection models and their pairwise predicates.

All coordinates are 0-based: a model on ``n`` nodes uses positions
``0..n-1`` (permutation), ``0..2n-1`` per line (trapezoid), ``0..2n-1``
(chords) or ``0..kn-1`` (k-vertex polygons), each position used once.
"""

from __future__ import annotations

import enum
import itertools
from bisect import bisect_right, insort
from dataclasses import dataclass
from typing import ClassVar, Iterable, Iterator, Sequence, Union

from .graph import DisconnectedGraph, Graph, GraphError, is_connected

CLASSES = ("permutation", "trapezoid", "circle", "polygon")


class ModelError(ValueError):
    pass


class DisconnectedResult(DisconnectedGraph):
    pass


class NodeSetMismatch(ModelError):
    pass


class ModelFit(enum.Enum):
    PROPER = "proper"
    SEMI_PROPER_ONLY = "semi-proper-only"
    NOT_SEMI_PROPER = "not-semi-proper"


def is_inversion(l1u: int, l2u: int, l1v: int, l2v: int) -> bool:
    return (l1u - l1v) * (l2u - l2v) < 0


def trapezoids_intersect(tu: Sequence[int], tv: Sequence[int]) -> bool:
    """Trapezoids ``(t1, t2, b1, b2)`` are disjoint iff one lies left of the other on both lines."""
    t1u, t2u, b1u, b2u = tu
    t1v, t2v, b1v, b2v = tv
    if t2u < t1v and b2u < b1v:
        return False
    if t2v < t1u and b2v < b1u:
        return False
    return True


def chords_cross(iu: Sequence[int], iv: Sequence[int]) -> bool:
    mu, Mu = iu
    mv, Mv = iv
    return mu < mv < Mu < Mv or mv < mu < Mv < Mu


def _separated(pu: Sequence[int], pv: Sequence[int]) -> bool:
    # gap i of pu is (pu[i-1], pu[i]); gap 0 wraps around through the origin
    k = len(pu)
    gaps = {bisect_right(pu, x) % k for x in pv}
    return len(gaps) == 1


def polygons_intersect(pu: Sequence[int], pv: Sequence[int]) -> bool:
    """Inscribed polygons given by sorted vertex positions intersect unless one sits in a gap of the other."""
    return not _separated(pu, pv)


class GeometricModel:
    kind: ClassVar[str]

    @property
    def n(self) -> int:
        raise NotImplementedError

    def assign(self) -> list[list[int]]:
        raise NotImplementedError

    def related(self, u: int, v: int) -> bool:
        raise NotImplementedError

    def candidate_pairs(self) -> "Iterable[tuple[int, int]]":
        """A superset of the related pairs; subclasses narrow it when geometry allows."""
        return itertools.combinations(range(self.n), 2)

    def related_pairs(self) -> list[tuple[int, int]]:
        pairs = {(min(u, v), max(u, v)) for u, v in self.candidate_pairs()}
        return sorted(p for p in pairs if self.related(*p))


def _span_overlaps(spans: Sequence[tuple[int, int]]) -> Iterator[tuple[int, int]]:
    """Pairs whose spans overlap: one of the two starts inside the other."""
    order = sorted(range(len(spans)), key=lambda u: spans[u][0])
    for r, u in enumerate(order):
        end = spans[u][1]
        for v in order[r + 1 :]:
            if spans[v][0] > end:
                break
            yield u, v


def _inversions(a: Sequence[int], b: Sequence[int]) -> Iterator[tuple[int, int]]:
    """Pairs ordered one way by ``a`` and the other way by ``b``."""
    seen: list[tuple[int, int]] = []
    for v in sorted(range(len(a)), key=lambda x: a[x]):
        at = bisect_right(seen, (b[v], len(a)))
        for _, u in seen[at:]:
            yield u, v
        insort(seen, (b[v], v))


def _check_cover(values: Sequence[int], size: int, what: str) -> None:
    if sorted(values) != list(range(size)):
        raise ModelError(f"{what} must cover 0..{size - 1} exactly once")


@dataclass(frozen=True)
class PermutationModel(GeometricModel):
    l1: tuple[int, ...]
    l2: tuple[int, ...]
    kind: ClassVar[str] = "permutation"

    def __post_init__(self) -> None:
        if len(self.l1) != len(self.l2):
            raise ModelError("l1 and l2 differ in length")
        _check_cover(self.l1, len(self.l1), "l1")
        _check_cover(self.l2, len(self.l2), "l2")

    @property
    def n(self) -> int:
        return len(self.l1)

    def assign(self) -> list[list[int]]:
        return [[a, b] for a, b in zip(self.l1, self.l2)]

    def related(self, u: int, v: int) -> bool:
        return is_inversion(self.l1[u], self.l2[u], self.l1[v], self.l2[v])

    def candidate_pairs(self) -> Iterable[tuple[int, int]]:
        return _inversions(self.l1, self.l2)

    @classmethod
    def reversed_for(cls, n: int) -> "PermutationModel":
        """l2 = n-1-l1: every pair is an inversion."""
        return cls(tuple(range(n)), tuple(n - 1 - i for i in range(n)))


@dataclass(frozen=True)
class TrapezoidModel(GeometricModel):
    traps: tuple[tuple[int, int, int, int], ...]
    kind: ClassVar[str] = "trapezoid"

    def __post_init__(self) -> None:
        n = len(self.traps)
        for t1, t2, b1, b2 in self.traps:
            if not (t1 < t2 and b1 < b2):
                raise ModelError("trapezoid needs t1 < t2 and b1 < b2")
        _check_cover([c for t in self.traps for c in t[:2]], 2 * n, "top coordinates")
        _check_cover([c for t in self.traps for c in t[2:]], 2 * n, "bottom coordinates")

    @property
    def n(self) -> int:
        return len(self.traps)

    def assign(self) -> list[list[int]]:
        return [list(t) for t in self.traps]

    def related(self, u: int, v: int) -> bool:
        return trapezoids_intersect(self.traps[u], self.traps[v])

    def candidate_pairs(self) -> Iterable[tuple[int, int]]:
        # disjoint on both lines in opposite orders shows up as an inversion of the starts
        top = [(t[0], t[1]) for t in self.traps]
        bot = [(t[2], t[3]) for t in self.traps]
        yield from _span_overlaps(top)
        yield from _span_overlaps(bot)
        yield from _inversions([t[0] for t in self.traps], [t[2] for t in self.traps])

    @classmethod
    def from_permutation(cls, model: PermutationModel) -> "TrapezoidModel":
        """Thin trapezoids around each segment; intersection coincides with inversion."""
        return cls(tuple((2 * a, 2 * a + 1, 2 * b, 2 * b + 1) for a, b in zip(model.l1, model.l2)))


@dataclass(frozen=True)
class ChordModel(GeometricModel):
    chords: tuple[tuple[int, int], ...]
    kind: ClassVar[str] = "circle"

    def __post_init__(self) -> None:
        for m, M in self.chords:
            if not m < M:
                raise ModelError("chord needs m < M")
        _check_cover([c for ch in self.chords for c in ch], 2 * len(self.chords), "chord endpoints")

    @property
    def n(self) -> int:
        return len(self.chords)

    def assign(self) -> list[list[int]]:
        return [list(c) for c in self.chords]

    def related(self, u: int, v: int) -> bool:
        return chords_cross(self.chords[u], self.chords[v])

    def candidate_pairs(self) -> Iterable[tuple[int, int]]:
        return _span_overlaps(self.chords)

    def as_polygons(self) -> "PolygonModel":
        return PolygonModel(2, self.chords)


@dataclass(frozen=True)
class PolygonModel(GeometricModel):
    k: int
    polys: tuple[tuple[int, ...], ...]
    kind: ClassVar[str] = "polygon"

    def __post_init__(self) -> None:
        if self.k < 2:
            raise ModelError("polygons need k >= 2")
        for p in self.polys:
            if len(p) != self.k or list(p) != sorted(set(p)):
                raise ModelError(f"polygon {p} must list {self.k} increasing vertices")
        _check_cover([c for p in self.polys for c in p], self.k * len(self.polys), "polygon vertices")

    @property
    def n(self) -> int:
        return len(self.polys)

    def assign(self) -> list[list[int]]:
        return [list(p) for p in self.polys]

    def related(self, u: int, v: int) -> bool:
        return polygons_intersect(self.polys[u], self.polys[v])

    def candidate_pairs(self) -> Iterable[tuple[int, int]]:
        # polygons whose outer spans do not overlap sit in each other's wrap-around gap
        return _span_overlaps([(p[0], p[-1]) for p in self.polys])


AnyModel = Union[PermutationModel, TrapezoidModel, ChordModel, PolygonModel]


def model_from_assign(kind: str, assign: Sequence[Sequence[int]], k: int | None = None) -> AnyModel:
    rows = [tuple(int(x) for x in row) for row in assign]
    if kind == "permutation":
        if any(len(r) != 2 for r in rows):
            raise ModelError("permutation rows are [l1, l2]")
        return PermutationModel(tuple(r[0] for r in rows), tuple(r[1] for r in rows))
    if kind == "trapezoid":
        if any(len(r) != 4 for r in rows):
            raise ModelError("trapezoid rows are [t1, t2, b1, b2]")
        return TrapezoidModel(tuple(rows))  # type: ignore[arg-type]
    if kind == "circle":
        if any(len(r) != 2 for r in rows):
            raise ModelError("circle rows are [m, M]")
        return ChordModel(tuple(rows))  # type: ignore[arg-type]
    if kind == "polygon":
        if k is None:
            raise ModelError("polygon model needs k")
        return PolygonModel(k, tuple(rows))
    raise ModelError(f"unknown model kind {kind!r}")


def model_induced_graph(model: GeometricModel, ids: Sequence[int] | None = None) -> Graph:
    edges = model.related_pairs()
    if not is_connected(model.n, edges):
        raise DisconnectedResult(f"{model.kind} model induces a disconnected graph")
    return Graph.from_edges(model.n, edges, ids)


def is_proper_model(g: Graph, model: GeometricModel) -> ModelFit:
    if model.n != g.n:
        raise NodeSetMismatch(f"model has {model.n} nodes, graph has {g.n}")
    related = set(model.related_pairs())
    edges = g.edges()
    if not all(e in related for e in edges):
        return ModelFit.NOT_SEMI_PROPER
    return ModelFit.PROPER if len(related) == len(edges) else ModelFit.SEMI_PROPER_ONLY


def require_proper(g: Graph, model: GeometricModel) -> None:
    fit = is_proper_model(g, model)
    if fit is not ModelFit.PROPER:
        raise ModelError(f"{model.kind} model is {fit.value}, not proper")


__all__ = [
    "CLASSES",
    "AnyModel",
    "ChordModel",
    "DisconnectedResult",
    "GeometricModel",
    "GraphError",
    "ModelError",
    "ModelFit",
    "NodeSetMismatch",
    "PermutationModel",
    "PolygonModel",
    "TrapezoidModel",
    "chords_cross",
    "is_inversion",
    "is_proper_model",
    "model_from_assign",
    "model_induced_graph",
    "polygons_intersect",
    "require_proper",
    "trapezoids_intersect",
]
