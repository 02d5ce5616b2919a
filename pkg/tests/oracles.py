"""Independent reference oracles for the tests.

None of these share code with the package's search oracle: they enumerate
raw coordinate arrangements or edge orientations without pruning, so they
are slow and only used on tiny graphs.
"""

from __future__ import annotations

import functools
import itertools
from typing import Iterator, Sequence

P = 2**61 - 1


def edge_set(n: int, edges) -> set[frozenset[int]]:
    return {frozenset(e) for e in edges}


def complement_edges(n: int, edges) -> list[tuple[int, int]]:
    es = edge_set(n, edges)
    return [(u, v) for u, v in itertools.combinations(range(n), 2) if frozenset((u, v)) not in es]


def transitively_orientable(n: int, edges) -> bool:
    """Try every orientation; keep one where u->v->w always implies u->w."""
    edges = list(edges)
    for bits in range(2 ** len(edges)):
        arcs = set()
        for t, (u, v) in enumerate(edges):
            arcs.add((u, v) if bits >> t & 1 else (v, u))
        ok = True
        for (a, b) in arcs:
            for c in range(n):
                if (b, c) in arcs and ((a, c) not in arcs):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return True
    return False


def is_permutation_graph(n: int, edges) -> bool:
    """Permutation graphs are exactly the comparability graphs whose complement is one too."""
    return transitively_orientable(n, edges) and transitively_orientable(n, complement_edges(n, edges))


@functools.lru_cache(maxsize=None)
def _permutation_edge_sets(n: int) -> frozenset[frozenset[frozenset[int]]]:
    out = set()
    for l1 in itertools.permutations(range(n)):
        for l2 in itertools.permutations(range(n)):
            out.add(
                frozenset(
                    frozenset((u, v))
                    for u, v in itertools.combinations(range(n), 2)
                    if (l1[u] - l1[v]) * (l2[u] - l2[v]) < 0
                )
            )
    return frozenset(out)


def permutation_by_enumeration(n: int, edges) -> bool:
    """Every pair of line orders, with node labels free on both lines."""
    return frozenset(edge_set(n, edges)) in _permutation_edge_sets(n)


def pairings(points: Sequence[int]) -> Iterator[list[tuple[int, int]]]:
    if not points:
        yield []
        return
    a = points[0]
    for i in range(1, len(points)):
        rest = list(points[1:i]) + list(points[i + 1 :])
        for tail in pairings(rest):
            yield [(a, points[i])] + tail


def groupings(points: Sequence[int], size: int) -> Iterator[list[tuple[int, ...]]]:
    """Unordered partitions of ``points`` into blocks of ``size``."""
    if not points:
        yield []
        return
    a = points[0]
    for rest in itertools.combinations(points[1:], size - 1):
        left = [x for x in points[1:] if x not in rest]
        for tail in groupings(left, size):
            yield [(a,) + rest] + tail


def interleave(p: Sequence[int], q: Sequence[int]) -> bool:
    """Two point sets on a circle interleave unless q sits in one arc between consecutive points of p."""
    p = sorted(p)
    arcs = set()
    for x in q:
        arcs.add(sum(1 for y in p if y < x) % len(p))
    return len(arcs) > 1


def polygon_member(n: int, edges, k: int) -> bool:
    want = edge_set(n, edges)
    for blocks in groupings(list(range(k * n)), k):
        for assign in itertools.permutations(blocks):
            got = {frozenset((u, v)) for u, v in itertools.combinations(range(n), 2) if interleave(assign[u], assign[v])}
            if got == want:
                return True
    return False


def circle_member(n: int, edges) -> bool:
    return polygon_member(n, edges, 2)


def trapezoid_member(n: int, edges) -> bool:
    """Every pair of interval layouts on the two lines; feasible for n <= 3 only."""
    want = edge_set(n, edges)
    tops = list(pairings(list(range(2 * n))))
    for top in tops:
        for tassign in itertools.permutations(top):
            for bot in tops:
                for bassign in itertools.permutations(bot):
                    got = set()
                    for u, v in itertools.combinations(range(n), 2):
                        tu, tv, bu, bv = tassign[u], tassign[v], bassign[u], bassign[v]
                        left = tu[1] < tv[0] and bu[1] < bv[0]
                        right = tv[1] < tu[0] and bv[1] < bu[0]
                        if not (left or right):
                            got.add(frozenset((u, v)))
                    if got == want:
                        return True
    return False


def has_asteroidal_triple(n: int, edges) -> bool:
    adj = {v: set() for v in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)

    def connected_avoiding(s: int, t: int, banned: set[int]) -> bool:
        if s in banned or t in banned:
            return False
        seen, stack = {s}, [s]
        while stack:
            x = stack.pop()
            if x == t:
                return True
            for y in adj[x]:
                if y not in seen and y not in banned:
                    seen.add(y)
                    stack.append(y)
        return False

    for a, b, c in itertools.combinations(range(n), 3):
        if all(
            connected_avoiding(x, y, adj[z] | {z})
            for x, y, z in ((a, b, c), (a, c, b), (b, c, a))
        ):
            return True
    return False


def multiset_fingerprint(values, s: int) -> int:
    out = 1
    for a in values:
        out = out * ((s - a) % P) % P
    return out
