"""Crossing gadgets for certificate-size lower bounds.

Nodes are 0-based internally; ``v(i)`` maps the 1-based path names used in the
constructions (v_1, v_2, ...) to node indices. Gadget pieces are indexed
1..n as well, so ``Gadget.spec(i, j)`` reads like the construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .graph import Graph
from .models import ChordModel, PermutationModel, TrapezoidModel, require_proper
from .oracle import BudgetExceeded

FIND_CYCLE_BUDGET = 60


class SpecsNotIndependent(ValueError):
    pass


class NotIsomorphic(ValueError):
    pass


def v(i: int) -> int:
    """Node index of the 1-based construction name v_i."""
    return i - 1


@dataclass(frozen=True)
class CrossingSpec:
    """Two disjoint node lists; ``iso`` maps ``h1[t]`` to ``h2[t]``.

    ``edges`` are the designated edges of the first subgraph as position pairs
    into ``h1``; their images under ``iso`` are the designated edges of the
    second.
    """

    h1: tuple[int, ...]
    h2: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    @property
    def iso(self) -> dict[int, int]:
        return dict(zip(self.h1, self.h2))


@dataclass(frozen=True)
class Gadget:
    family: str
    n: int
    graph: Graph
    # pieces[i - 1] lists H_i in the order fixed by sigma_i
    pieces: tuple[tuple[int, ...], ...]
    piece_edges: tuple[tuple[int, int], ...]

    def spec(self, i: int, j: int) -> CrossingSpec:
        """sigma^{ij}: H_j -> H_i, i.e. sigma_i composed with the inverse of sigma_j."""
        if not (1 <= i <= self.n and 1 <= j <= self.n) or i == j:
            raise ValueError(f"need distinct pieces in 1..{self.n}, got ({i}, {j})")
        return CrossingSpec(self.pieces[j - 1], self.pieces[i - 1], self.piece_edges)

    def specs(self) -> list[tuple[int, int, CrossingSpec]]:
        return [(i, j, self.spec(i, j)) for i in range(1, self.n + 1) for j in range(i + 1, self.n + 1)]

    def crossed(self, i: int, j: int) -> Graph:
        return cross(self.graph, self.spec(i, j))


def build_Qn(n: int) -> Gadget:
    """Path v_1..v_{5n} plus {v_{5i-3}, v_{5i-1}}; H_i = (v_{5i-2}, v_{5i-1})."""
    if n < 2:
        raise ValueError("Q_n needs n >= 2")
    edges = [(v(t), v(t + 1)) for t in range(1, 5 * n)]
    edges += [(v(5 * i - 3), v(5 * i - 1)) for i in range(1, n + 1)]
    pieces = tuple((v(5 * i - 2), v(5 * i - 1)) for i in range(1, n + 1))
    return Gadget("Q", n, Graph.from_edges(5 * n, edges), pieces, ((0, 1),))


def build_Mn(n: int) -> Gadget:
    """Path v_1..v_{4n}; a_i = v_{4n+i} hangs off v_{4i-3}, b_i = v_{5n+i} off v_{4i-2}, a_i ~ b_i.

    sigma_i sends a_1 to b_i and b_1 to a_i, so H_i is listed as (b_i, a_i).
    """
    if n < 3:
        raise ValueError("M_n needs n >= 3")
    edges = [(v(t), v(t + 1)) for t in range(1, 4 * n)]
    for i in range(1, n + 1):
        a, b = v(4 * n + i), v(5 * n + i)
        edges += [(v(4 * i - 3), a), (v(4 * i - 2), b), (a, b)]
    pieces = tuple((v(5 * n + i), v(4 * n + i)) for i in range(1, n + 1))
    return Gadget("M", n, Graph.from_edges(6 * n, edges), pieces, ((0, 1),))


def build(family: str, n: int) -> Gadget:
    if family == "Q":
        return build_Qn(n)
    if family == "M":
        return build_Mn(n)
    raise ValueError(f"unknown gadget family {family!r}; choose Q or M")


def _designated(spec: CrossingSpec) -> list[tuple[int, int, int, int]]:
    """(u, w, sigma u, sigma w) for every designated edge {u, w} of the first subgraph."""
    return [(spec.h1[a], spec.h1[b], spec.h2[a], spec.h2[b]) for a, b in spec.edges]


def cross(g: Graph, spec: CrossingSpec) -> Graph:
    """Swap each designated pair {u,w}, {su,sw} for {u,sw}, {su,w}.

    Applied to an already crossed pair it swaps back, so crossing is an
    involution on the designated edges.
    """
    if len(spec.h1) != len(spec.h2):
        raise NotIsomorphic("subgraphs differ in size")
    s1, s2 = set(spec.h1), set(spec.h2)
    if len(s1) != len(spec.h1) or len(s2) != len(spec.h2) or s1 & s2:
        raise SpecsNotIndependent("subgraphs share nodes")
    if not all(0 <= x < g.n for x in s1 | s2):
        raise ValueError("subgraph node out of range")
    quads = _designated(spec)
    straight = all(g.has_edge(u, w) and g.has_edge(su, sw) for u, w, su, sw in quads)
    swapped = all(g.has_edge(u, sw) and g.has_edge(su, w) for u, w, su, sw in quads)
    if not (straight or swapped):
        raise NotIsomorphic("designated edges are missing in one of the subgraphs")
    # the two subgraphs must carry exactly the designated edges, and nothing runs between them
    designated = {frozenset((u, w)) for u, w, _, _ in quads}
    images = {frozenset((su, sw)) for _, _, su, sw in quads}
    between = {frozenset((u, sw)) for u, _, _, sw in quads} | {frozenset((su, w)) for _, w, su, _ in quads}
    inner1 = {frozenset((x, y)) for x in s1 for y in g.adj[x] if y in s1}
    inner2 = {frozenset((x, y)) for x in s2 for y in g.adj[x] if y in s2}
    cross12 = {frozenset((x, y)) for x in s1 for y in g.adj[x] if y in s2}
    if straight:
        if cross12:
            raise SpecsNotIndependent("edges run between the two subgraphs")
        if inner1 != designated or inner2 != images:
            raise NotIsomorphic("iso does not map the first subgraph's edges onto the second's")
    else:
        if inner1 or inner2 or cross12 != between:
            raise SpecsNotIndependent("subgraphs are neither independent nor a crossed pair")
    edges = {frozenset(e) for e in g.edges()}
    if straight:
        edges -= designated | images
        edges |= between
    else:
        edges -= between
        edges |= designated | images
    return Graph.from_edges(g.n, (tuple(sorted(e)) for e in edges), g.ids)


def find_induced_cycle(g: Graph, length: int) -> list[int] | None:
    """An induced cycle on exactly ``length`` nodes, or None.

    Exhaustive: grows chordless paths from each start node, the start being
    the smallest index on the cycle and its second node smaller than its last.
    """
    if length < 3:
        raise ValueError("cycle length must be at least 3")
    if g.n > FIND_CYCLE_BUDGET:
        raise BudgetExceeded(f"induced cycle search handles n <= {FIND_CYCLE_BUDGET}, got n={g.n}")

    def extend(path: list[int], on: set[int]) -> list[int] | None:
        tail, start = path[-1], path[0]
        if len(path) == length:
            if g.has_edge(tail, start) and path[1] < tail:
                return list(path)
            return None
        for w in g.adj[tail]:
            if w <= start or w in on:
                continue
            # w may touch only the tail, and the start only when it closes the cycle
            if any(g.has_edge(w, x) for x in path[1:-1]):
                continue
            if g.has_edge(w, start) and len(path) + 1 < length and len(path) > 1:
                continue
            path.append(w)
            on.add(w)
            found = extend(path, on)
            path.pop()
            on.discard(w)
            if found:
                return found
        return None

    for s in range(g.n):
        found = extend([s], {s})
        if found:
            return found
    return None


def induced_cycle_problem(g: Graph, cycle: Sequence[int]) -> str | None:
    """None when ``cycle`` lists an induced cycle of ``g`` in order, else what breaks."""
    k = len(cycle)
    if k < 3 or len(set(cycle)) != k:
        return "not a simple cycle"
    if not all(0 <= x < g.n for x in cycle):
        return "node out of range"
    for t in range(k):
        if not g.has_edge(cycle[t], cycle[(t + 1) % k]):
            return f"missing edge {cycle[t]}-{cycle[(t + 1) % k]}"
    for a in range(k):
        for b in range(a + 2, k):
            if (a, b) != (0, k - 1) and g.has_edge(cycle[a], cycle[b]):
                return f"chord {cycle[a]}-{cycle[b]}"
    return None


@dataclass(frozen=True)
class WitnessResult:
    ok: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def two_cycle_witness(g: Graph, c1: Sequence[int], c2: Sequence[int]) -> WitnessResult:
    """Two induced cycles sharing at least 4 nodes, each with at least 2 of its own."""
    for name, c in (("C1", c1), ("C2", c2)):
        why = induced_cycle_problem(g, c)
        if why:
            return WitnessResult(False, f"{name} {why}")
    s1, s2 = set(c1), set(c2)
    if len(s1 & s2) < 4:
        return WitnessResult(False, f"intersection has {len(s1 & s2)} < 4 nodes")
    if len(s1 - s2) < 2:
        return WitnessResult(False, "C1 - C2 has fewer than 2 nodes")
    if len(s2 - s1) < 2:
        return WitnessResult(False, "C2 - C1 has fewer than 2 nodes")
    return WitnessResult(True)


def mn_cycles(n: int, i: int, j: int) -> tuple[list[int], list[int]]:
    """The two induced cycles of the crossed M_n for pieces i < j.

    C1 runs along the path from v_{4i-2} to v_{4j-3} and closes through a_j, b_i.
    C2 = v_{4j-3}, a_j, b_i, v_{4i-2}, v_{4i-3}, a_i, b_j, v_{4j-2}.
    """
    if not 1 <= i < j <= n:
        raise ValueError("need 1 <= i < j <= n")
    a = lambda t: v(4 * n + t)  # noqa: E731
    b = lambda t: v(5 * n + t)  # noqa: E731
    c1 = [v(t) for t in range(4 * i - 2, 4 * j - 2)] + [a(j), b(i)]
    c2 = [v(4 * j - 3), a(j), b(i), v(4 * i - 2), v(4 * i - 3), a(i), b(j), v(4 * j - 2)]
    return c1, c2


def mn_cycles_as_listed(n: int, i: int, j: int) -> tuple[list[int], list[int]]:
    """The cycle lists exactly as they appear in the construction's write-up.

    Kept for comparison; in the crossed graph v_1..v_{4n} is a path rather
    than a cycle, and the seven-node list lacks v_{4j-2}.
    """
    c1 = [v(t) for t in range(1, 4 * n + 1)]
    c2 = [v(4 * j - 3), v(4 * n + j), v(5 * n + i), v(4 * i - 2), v(4 * i - 3), v(4 * n + i), v(5 * n + j)]
    return c1, c2


def mn_theta(n: int, i: int, j: int) -> list[int]:
    """Nodes of C1 and C2 together: a theta graph with hubs v_{4i-2}, v_{4j-3}."""
    c1, c2 = mn_cycles(n, i, j)
    return sorted(set(c1) | set(c2))


# ---------------------------------------------------------------------------
# honest models for the uncrossed gadgets

# one Q block w1..w5 (path plus w2~w4) with w1 first and w5 last on the top line
_Q_BLOCK = PermutationModel((0, 3, 2, 1, 4), (1, 0, 2, 4, 3))


def qn_permutation_model(n: int) -> PermutationModel:
    """Blocks side by side; swapping the top ends at each seam adds the seam edge."""
    l1 = [5 * b + x for b in range(n) for x in _Q_BLOCK.l1]
    l2 = [5 * b + x for b in range(n) for x in _Q_BLOCK.l2]
    for b in range(n - 1):
        last, first = 5 * b + 4, 5 * b + 5
        l1[last], l1[first] = l1[first], l1[last]
    model = PermutationModel(tuple(l1), tuple(l2))
    require_proper(build_Qn(n).graph, model)
    return model


def qn_trapezoid_model(n: int) -> TrapezoidModel:
    model = TrapezoidModel.from_permutation(qn_permutation_model(n))
    require_proper(build_Qn(n).graph, model)
    return model


def mn_chord_model(n: int) -> ChordModel:
    """Path chords overlap their neighbours only; a_i, b_i start inside their anchor and nest to the right.

    Written in half-units, then rank-compressed to 0..12n-1.
    """
    raw: list[tuple[int, int]] = [(0, 0)] * (6 * n)
    for t in range(4 * n):
        raw[t] = (4 * t, 4 * t + 6)
    far = 8 * (4 * n) + 8
    for i in range(1, n + 1):
        anchor = 4 * (4 * i - 4)
        # right ends in the order B_n < e_n < B_{n-1} < ... < B_1 < e_1
        raw[v(4 * n + i)] = (anchor + 3, far + 4 * (n - i))
        raw[v(5 * n + i)] = (anchor + 7, far + 4 * (n - i) + 2)
    order = sorted(x for c in raw for x in c)
    rank = {x: r for r, x in enumerate(order)}
    model = ChordModel(tuple((rank[a], rank[b]) for a, b in raw))
    require_proper(build_Mn(n).graph, model)
    return model


def honest_model(gadget: Gadget, cls: str):
    if gadget.family == "Q" and cls == "permutation":
        return qn_permutation_model(gadget.n)
    if gadget.family == "Q" and cls == "trapezoid":
        return qn_trapezoid_model(gadget.n)
    if gadget.family == "M" and cls == "circle":
        return mn_chord_model(gadget.n)
    if gadget.family == "M" and cls == "polygon":
        return mn_chord_model(gadget.n).as_polygons()
    raise ValueError(f"no honest {cls} model for family {gadget.family}")
