"""Exhaustive membership oracles for small graphs.

These are deliberately naive: they enumerate coordinate arrangements in a
fixed order and prune only when a pair's relation is already settled. The
proper trapezoid search first fixes the left-of order on non-adjacent pairs,
which every proper model induces, and only then lays out the two lines.
They share no code with the characterisation identities used by the
protocols, so they can serve as ground truth for them.
"""

from __future__ import annotations

import itertools
from typing import Callable, Iterator

from .graph import Graph
from .models import (
    AnyModel,
    ChordModel,
    ModelFit,
    PermutationModel,
    PolygonModel,
    TrapezoidModel,
    chords_cross,
    is_proper_model,
    polygons_intersect,
)

BUDGET = {"permutation": 8, "trapezoid": 6, "circle": 6}
POLYGON_BUDGET = {2: 6, 3: 4}
POLYGON_BUDGET_DEFAULT = 3


class BudgetExceeded(ValueError):
    pass


class NoSemiProperModel(LookupError):
    pass


def budget_for(cls: str, k: int | None = None) -> int:
    if cls == "polygon":
        return POLYGON_BUDGET.get(k or 0, POLYGON_BUDGET_DEFAULT)
    return BUDGET[cls]


def _check_budget(g: Graph, cls: str, k: int | None, budget: int | None = None) -> None:
    if cls == "polygon" and (k is None or k < 2):
        raise ValueError("polygon oracle needs k >= 2")
    limit = budget_for(cls, k) if budget is None else budget
    if g.n > limit:
        raise BudgetExceeded(f"{cls} oracle handles n <= {limit}, got n={g.n}")


# ---------------------------------------------------------------------------
# permutation: l2 is forced pair by pair once the l1 order is fixed


def _forced_l2(g: Graph, order: tuple[int, ...]) -> tuple[int, ...] | None:
    n = g.n
    l1 = [0] * n
    for pos, v in enumerate(order):
        l1[v] = pos
    below = [0] * n
    for u, v in itertools.combinations(range(n), 2):
        a, b = (u, v) if l1[u] < l1[v] else (v, u)
        if g.has_edge(a, b):
            below[a] += 1
        else:
            below[b] += 1
    if sorted(below) != list(range(n)):
        return None
    return tuple(below)


def _permutation_models(g: Graph) -> Iterator[PermutationModel]:
    for order in itertools.permutations(range(g.n)):
        l2 = _forced_l2(g, order)
        if l2 is None:
            continue
        l1 = [0] * g.n
        for pos, v in enumerate(order):
            l1[v] = pos
        model = PermutationModel(tuple(l1), l2)
        if is_proper_model(g, model) is ModelFit.PROPER:
            yield model


# ---------------------------------------------------------------------------
# words: a line (or circle) of positions, each node occupying `reps` of them


def _words(
    n: int,
    reps: int,
    on_close: Callable[[int, list[list[int]]], bool],
    rotate: bool,
) -> Iterator[list[list[int]]]:
    """Yield per-node position lists of every admissible word, in lexicographic order.

    ``on_close(v, pos)`` runs when node ``v`` receives its last position and
    may veto the prefix. With ``rotate`` the first position is pinned to node
    0, which loses nothing for rotation-invariant relations.
    """
    pos: list[list[int]] = [[] for _ in range(n)]
    length = n * reps
    depth = 0

    def rec() -> Iterator[list[list[int]]]:
        nonlocal depth
        if depth == length:
            yield pos
            return
        for v in range(n):
            if rotate and depth == 0 and v != 0:
                break
            if len(pos[v]) == reps:
                continue
            pos[v].append(depth)
            depth += 1
            if len(pos[v]) < reps or on_close(v, pos):
                yield from rec()
            depth -= 1
            pos[v].pop()

    yield from rec()


def _closing_check(g: Graph, reps: int, related: Callable[[list[int], list[int]], bool], semi: bool):
    def on_close(v: int, pos: list[list[int]]) -> bool:
        for w in range(g.n):
            if w == v:
                continue
            edge = g.has_edge(v, w)
            if len(pos[w]) == reps:
                rel = related(pos[v], pos[w])
            elif not pos[w]:
                rel = False  # w lies entirely beyond v
            else:
                # w's remaining vertices land in v's wrap-around gap, so w meets v
                # exactly when an already placed vertex sits inside v's span
                rel = pos[w][-1] > pos[v][0]
            if edge and not rel:
                return False
            if not semi and rel and not edge:
                return False
        return True

    return on_close


def _chord_models(g: Graph, semi: bool) -> Iterator[ChordModel]:
    check = _closing_check(g, 2, chords_cross, semi)
    for pos in _words(g.n, 2, check, rotate=True):
        yield ChordModel(tuple((p[0], p[1]) for p in pos))


def _polygon_models(g: Graph, k: int, semi: bool) -> Iterator[PolygonModel]:
    check = _closing_check(g, k, polygons_intersect, semi)
    for pos in _words(g.n, k, check, rotate=True):
        yield PolygonModel(k, tuple(tuple(p) for p in pos))


def _complement_orders(g: Graph) -> Iterator[dict[int, set[int]]]:
    """Transitive orientations of the complement: ``succ[u]`` holds every v placed right of u."""
    n = g.n
    non_edges = [(u, v) for u, v in itertools.combinations(range(n), 2) if not g.has_edge(u, v)]
    for mask in range(1 << len(non_edges)):
        succ: dict[int, set[int]] = {v: set() for v in range(n)}
        for b, (u, v) in enumerate(non_edges):
            if mask >> b & 1:
                succ[v].add(u)
            else:
                succ[u].add(v)
        if all(succ[w] <= succ[u] for u in range(n) for w in succ[u]):
            yield succ


def _trapezoid_words(
    n: int, pred: list[set[int]], on_close: Callable[[int, list[list[int]]], bool]
) -> Iterator[list[list[int]]]:
    """Words on one line in which every order-predecessor closes before its successor opens."""
    pos: list[list[int]] = [[] for _ in range(n)]
    depth = 0

    def rec() -> Iterator[list[list[int]]]:
        nonlocal depth
        if depth == 2 * n:
            yield pos
            return
        for v in range(n):
            if len(pos[v]) == 2:
                continue
            if not pos[v] and any(len(pos[u]) < 2 for u in pred[v]):
                continue
            pos[v].append(depth)
            depth += 1
            if len(pos[v]) == 1 or on_close(v, pos):
                yield from rec()
            depth -= 1
            pos[v].pop()

    yield from rec()


def _trapezoid_proper(g: Graph) -> Iterator[TrapezoidModel]:
    # non-adjacent pairs are ordered the same way on both lines; adjacent ones never are
    n = g.n
    for succ in _complement_orders(g):
        pred = [{u for u in range(n) if v in succ[u]} for v in range(n)]

        for top in _trapezoid_words(n, pred, lambda v, pos: True):
            top_fixed = [tuple(p) for p in top]

            def bottom_close(v: int, pos: list[list[int]]) -> bool:
                tv = top_fixed[v]
                for w in range(n):
                    if w == v or not g.has_edge(v, w):
                        continue
                    tw = top_fixed[w]
                    if len(pos[w]) == 2 and pos[w][1] < pos[v][0] and tw[1] < tv[0]:
                        return False
                    if not pos[w] and tv[1] < tw[0]:
                        return False
                return True

            for bottom in _trapezoid_words(n, pred, bottom_close):
                yield TrapezoidModel(tuple((t[0], t[1], b[0], b[1]) for t, b in zip(top_fixed, bottom)))


def _trapezoid_semi(g: Graph) -> Iterator[TrapezoidModel]:
    n = g.n
    free: list[set[int]] = [set() for _ in range(n)]
    for top in _trapezoid_words(n, free, lambda v, pos: True):
        top_fixed = [tuple(p) for p in top]

        def bottom_close(v: int, pos: list[list[int]]) -> bool:
            tv = top_fixed[v]
            for w in g.adj[v]:
                tw = top_fixed[w]
                if len(pos[w]) == 2 and pos[w][1] < pos[v][0] and tw[1] < tv[0]:
                    return False
                if not pos[w] and tv[1] < tw[0]:
                    return False
            return True

        for bottom in _trapezoid_words(n, free, bottom_close):
            yield TrapezoidModel(tuple((t[0], t[1], b[0], b[1]) for t, b in zip(top_fixed, bottom)))


def _models(g: Graph, cls: str, k: int | None, semi: bool) -> Iterator[AnyModel]:
    if cls == "permutation":
        if semi:
            raise ValueError("semi-proper permutation models have a closed form")
        return _permutation_models(g)
    if cls == "trapezoid":
        return _trapezoid_semi(g) if semi else _trapezoid_proper(g)
    if cls == "circle":
        return _chord_models(g, semi)
    if cls == "polygon":
        assert k is not None
        return _polygon_models(g, k, semi)
    raise ValueError(f"unknown class {cls!r}")


def brute_force_model(g: Graph, cls: str, k: int | None = None, *, budget: int | None = None) -> AnyModel | None:
    """The lexicographically first proper model of ``g``, or None when none exists.

    ``budget`` overrides the default size limit for deliberate slow queries.
    """
    _check_budget(g, cls, k, budget)
    return next(iter(_models(g, cls, k, semi=False)), None)


def proper_models(g: Graph, cls: str, k: int | None = None, *, budget: int | None = None) -> Iterator[AnyModel]:
    """Every proper model the search reaches, in enumeration order."""
    _check_budget(g, cls, k, budget)
    return _models(g, cls, k, semi=False)


def is_member(g: Graph, cls: str, k: int | None = None, *, budget: int | None = None) -> bool:
    return brute_force_model(g, cls, k, budget=budget) is not None


def find_semi_proper_model(g: Graph, cls: str, k: int | None = None) -> AnyModel:
    """A semi-proper model, strictly semi-proper when one exists, else a proper one."""
    if cls == "permutation":
        return PermutationModel.reversed_for(g.n)
    _check_budget(g, cls, k)
    proper: AnyModel | None = None
    for model in _models(g, cls, k, semi=True):
        fit = is_proper_model(g, model)
        if fit is ModelFit.SEMI_PROPER_ONLY:
            return model
        if proper is None:
            proper = model
    if proper is None:
        raise NoSemiProperModel(f"no semi-proper {cls} model for this graph")
    return proper


def semi_proper_models(g: Graph, cls: str, k: int | None = None) -> Iterator[AnyModel]:
    """Every semi-proper model (proper ones included), lexicographically."""
    _check_budget(g, cls, k)
    if cls == "permutation":
        n = g.n
        for l2 in itertools.permutations(range(n)):
            model = PermutationModel(tuple(range(n)), l2)
            if is_proper_model(g, model) is not ModelFit.NOT_SEMI_PROPER:
                yield model
        return
    yield from _models(g, cls, k, semi=True)
