"""Random instances: a connected graph together with a proper model of a class."""

from __future__ import annotations

import random
from typing import Sequence

from .graph import ID_BITS, Graph
from .models import (
    AnyModel,
    ChordModel,
    DisconnectedResult,
    PermutationModel,
    PolygonModel,
    TrapezoidModel,
    model_induced_graph,
)

MAX_ATTEMPTS = 1000
SPARSE_WINDOW = 6.0


class GenerationFailed(RuntimeError):
    def __init__(self, cls: str, n: int, seed: int) -> None:
        super().__init__(f"no connected {cls} instance with n={n} after {MAX_ATTEMPTS} attempts (seed={seed})")
        self.cls, self.n, self.seed = cls, n, seed


def _ranks(keys: Sequence[float]) -> list[int]:
    order = sorted(range(len(keys)), key=lambda i: (keys[i], i))
    rank = [0] * len(keys)
    for r, i in enumerate(order):
        rank[i] = r
    return rank


def _grouped(positions: Sequence[int], size: int) -> list[tuple[int, ...]]:
    return [tuple(sorted(positions[i : i + size])) for i in range(0, len(positions), size)]


def _dense(cls: str, n: int, k: int, rng: random.Random) -> AnyModel:
    if cls == "permutation":
        return PermutationModel(tuple(range(n)), tuple(rng.sample(range(n), n)))
    if cls == "trapezoid":
        top = _grouped(rng.sample(range(2 * n), 2 * n), 2)
        bot = _grouped(rng.sample(range(2 * n), 2 * n), 2)
        return TrapezoidModel(tuple((t[0], t[1], b[0], b[1]) for t, b in zip(top, bot)))
    if cls == "circle":
        return ChordModel(tuple(_grouped(rng.sample(range(2 * n), 2 * n), 2)))  # type: ignore[arg-type]
    return PolygonModel(k, tuple(_grouped(rng.sample(range(k * n), k * n), k)))


def _spans(n: int, rng: random.Random, w: float) -> list[tuple[float, float]]:
    """Spans with increasing starts and ends where each one overlaps the next.

    Start v lies in [2v, 2v+1) and every end exceeds 2v+3 by the sorted-ends
    argument, so span v always straddles the start of span v+1.
    """
    starts = [2 * v + rng.random() for v in range(n)]
    ends = sorted(s + 3 + rng.uniform(0, w) for s in starts)
    return list(zip(starts, ends))


def _sparse(cls: str, n: int, k: int, rng: random.Random, w: float) -> AnyModel:
    # consecutive objects always meet, so the induced graph is connected and degrees stay O(w)
    if cls == "permutation":
        l2 = _ranks([i + rng.uniform(0, w) for i in range(n)])
        # a prefix mapped onto itself is a cut; swapping across it adds one inversion and no new cut
        high = -1
        for i in range(n - 1):
            high = max(high, l2[i])
            if high == i:
                l2[i], l2[i + 1] = l2[i + 1], l2[i]
                high = l2[i]
        return PermutationModel(tuple(range(n)), tuple(l2))
    if cls == "trapezoid":
        top = _spans(n, rng, w)
        bot = []
        for v in range(n):
            a = 2 * v + rng.uniform(0, w)
            bot.append((a, a + rng.uniform(1, w)))
        tr = _grouped(_ranks([x for s in top for x in s]), 2)
        br = _grouped(_ranks([x for s in bot for x in s]), 2)
        return TrapezoidModel(tuple((t[0], t[1], b[0], b[1]) for t, b in zip(tr, br)))
    spans = _spans(n, rng, w)
    if cls == "circle":
        return ChordModel(tuple(_grouped(_ranks([x for s in spans for x in s]), 2)))  # type: ignore[arg-type]
    keys = []
    for a, b in spans:
        keys += [a] + sorted(rng.uniform(a, b) for _ in range(k - 2)) + [b]
    return PolygonModel(k, tuple(_grouped(_ranks(keys), k)))


def random_ids(n: int, rng: random.Random) -> list[int]:
    return rng.sample(range(1, 2**ID_BITS), n)


def generate(
    cls: str,
    n: int,
    k: int | None = None,
    seed: int = 0,
    *,
    sparse: bool = False,
    window: float = SPARSE_WINDOW,
) -> tuple[Graph, AnyModel]:
    """Sample a model of ``cls`` until it induces a connected graph.

    Dense sampling draws a uniformly random coordinate arrangement. Sparse
    sampling jitters objects along a line so degrees stay around ``window``;
    it exists for bandwidth sweeps at large ``n``.
    """
    if cls not in ("permutation", "trapezoid", "circle", "polygon"):
        raise ValueError(f"unknown class {cls!r}")
    if n < 2:
        raise ValueError("n must be at least 2")
    if cls == "polygon":
        if k is None or k < 2:
            raise ValueError("polygon class needs k >= 2")
    else:
        k = 2
    rng = random.Random(f"{cls}/{n}/{k}/{seed}/{'sparse' if sparse else 'dense'}")
    ids = random_ids(n, rng)
    for _ in range(MAX_ATTEMPTS):
        model = _sparse(cls, n, k, rng, window) if sparse else _dense(cls, n, k, rng)
        try:
            return model_induced_graph(model, ids), model
        except DisconnectedResult:
            continue
    raise GenerationFailed(cls, n, seed)
