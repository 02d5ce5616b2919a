"""Protocol lookup by name, with a uniform prover interface per class."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from ..blocks import tree_layout, tree_records, tree_verify
from ..engine import Protocol, ProverStrategy, Schedule, Stack
from ..graph import Graph
from ..models import AnyModel
from . import circle, permutation, polygon, trapezoid

PROTOCOL_NAMES = ("size-pls", "permutation-pls", "trapezoid-pls", "circle-dmam", "polygon-dmam")
CLASS_OF = {
    "permutation-pls": "permutation",
    "trapezoid-pls": "trapezoid",
    "circle-dmam": "circle",
    "polygon-dmam": "polygon",
}


@dataclass(frozen=True)
class Recognizer:
    name: str
    cls: str | None
    k: int | None
    protocol: Protocol
    certify_rows: Callable[[Graph, Sequence[Sequence[int]], "int | None"], list[Stack]]
    wrap: Callable[[str, list[Stack]], ProverStrategy]
    honest: Callable[[Graph, AnyModel], ProverStrategy]
    path_tags: tuple[str, ...] = ()
    rank_field: tuple[str, str, str] | None = None  # (record, rank, y) used by tampered-aggregate

    @property
    def interactive(self) -> bool:
        return self.protocol.schedule is not Schedule.DM


def _pls(label: str, stacks: list[Stack]) -> ProverStrategy:
    return ProverStrategy(label, lambda _g: stacks)


def _size_verify(view):
    return tree_verify(view)


SIZE_PROTOCOL = Protocol("size-pls", Schedule.DM, (tree_layout(),), (), _size_verify)


def _size_rows(g: Graph, _rows, claimed: int | None = None) -> list[Stack]:
    return [(r,) for r in tree_records(g, claimed)]


def size_honest(g: Graph, _model=None) -> ProverStrategy:
    return _pls("honest", _size_rows(g, None))


def get(name: str, k: int | None = None) -> Recognizer:
    if name == "size-pls":
        return Recognizer(name, None, None, SIZE_PROTOCOL, _size_rows, _pls, size_honest)
    if name == "permutation-pls":
        return Recognizer(
            name, "permutation", None, permutation.PROTOCOL, permutation.certify_rows, _pls, permutation.honest, permutation.PATHS
        )
    if name == "trapezoid-pls":
        return Recognizer(
            name, "trapezoid", None, trapezoid.PROTOCOL, trapezoid.certify_rows, _pls, trapezoid.honest, trapezoid.PATHS
        )
    if name == "circle-dmam":
        return Recognizer(
            name,
            "circle",
            None,
            circle.PROTOCOL,
            circle.certify_rows,
            circle.round2_strategy,
            circle.honest,
            rank_field=(circle.TAG, "pi_m", "ym"),
        )
    if name == "polygon-dmam":
        if k is None or k < 2:
            raise ValueError("polygon-dmam needs k >= 2")
        kk = k
        return Recognizer(
            name,
            "polygon",
            kk,
            polygon.protocol(kk),
            lambda g, rows, claimed=None: polygon.certify(g, rows, kk, claimed),
            lambda label, stacks: polygon.round2_strategy(label, stacks, kk),
            polygon.honest,
            rank_field=(polygon.TAG, "pi_1", "y1"),
        )
    raise ValueError(f"unknown protocol {name!r}; choose from {', '.join(PROTOCOL_NAMES)}")


def for_class(cls: str, k: int | None = None) -> Recognizer:
    for name, c in CLASS_OF.items():
        if c == cls:
            return get(name, k)
    raise ValueError(f"unknown class {cls!r}")
