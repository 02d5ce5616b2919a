"""Simulation of dM, dAM and dMAM schedules.

A run has at most two prover rounds separated by one shared random coin,
followed by a single verification round in which every node broadcasts its
whole certificate stack and decides from its own stack, the coin and its
neighbours' stacks.
"""

from __future__ import annotations

import enum
import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Mapping, Sequence

from .graph import Graph

P = 2**61 - 1
MASK64 = 2**64 - 1
MALFORMED = "malformed-certificates"


class Schedule(enum.Enum):
    DM = "dM"
    DAM = "dAM"
    DMAM = "dMAM"


@dataclass(frozen=True)
class Field:
    name: str
    value: int
    width: int


@dataclass(frozen=True)
class Record:
    tag: str
    fields: tuple[Field, ...]

    @property
    def bits(self) -> int:
        return sum(f.width for f in self.fields)

    def layout(self) -> tuple[str, tuple[str, ...]]:
        return self.tag, tuple(f.name for f in self.fields)

    def values(self) -> dict[str, int]:
        return {f.name: f.value for f in self.fields}


Stack = tuple[Record, ...]
Layout = tuple[tuple[str, tuple[str, ...]], ...]


def width_for(bound: int) -> int:
    """Bits needed to write any integer in ``[0, bound]``."""
    return max(1, bound.bit_length())


def record(tag: str, *items: tuple[str, int, int]) -> Record:
    return Record(tag, tuple(Field(name, int(value), int(width)) for name, value, width in items))


def stack_layout(stack: Stack) -> Layout:
    return tuple(r.layout() for r in stack)


def stack_bits(stack: Stack) -> int:
    return sum(r.bits for r in stack)


def well_formed(stack: Stack, layout: Layout) -> bool:
    if stack_layout(stack) != layout:
        return False
    for r in stack:
        for f in r.fields:
            if f.width < 1 or not 0 <= f.value < 1 << f.width:
                return False
    return True


def splitmix64(state: int) -> int:
    z = (state + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


@dataclass(frozen=True)
class SharedRandomness:
    seed: int
    field_point: int

    @classmethod
    def from_seed(cls, seed: int) -> "SharedRandomness":
        seed &= MASK64
        return cls(seed, splitmix64(seed) % P)


Certs = Mapping[str, Mapping[str, int]]


def as_certs(stack: Stack) -> dict[str, dict[str, int]]:
    return {r.tag: r.values() for r in stack}


@dataclass(frozen=True)
class NodeView:
    """Everything a node may look at when it decides."""

    node_id: int
    degree: int
    own: Certs
    nbrs: Mapping[int, Certs]
    point: int | None = None
    label: Any = None


Verifier = Callable[[NodeView], "str | None"]


@dataclass(frozen=True)
class Protocol:
    name: str
    schedule: Schedule
    round1_layout: Layout
    round2_layout: Layout
    verify: Verifier
    labels: Sequence[Any] | None = None  # node inputs, used only by the toolbox demos


@dataclass(frozen=True)
class ProverStrategy:
    label: str
    round1: Callable[[Graph], list[Stack]] | None = None
    round2: Callable[[Graph, SharedRandomness, "list[Stack] | None"], list[Stack]] | None = None


@dataclass(frozen=True)
class Stats:
    max_cert_bits: int
    max_msg_bits: int


@dataclass(frozen=True)
class Transcript:
    protocol: str
    schedule: Schedule
    prover: str
    ids: tuple[int, ...]
    round1: tuple[Stack, ...] | None
    randomness: SharedRandomness | None
    round2: tuple[Stack, ...] | None
    verdicts: tuple[str | None, ...]  # None means accept
    stats: Stats = field(compare=False)

    def message(self, v: int) -> Stack:
        return (self.round1[v] if self.round1 else ()) + (self.round2[v] if self.round2 else ())

    @property
    def accepted(self) -> bool:
        return global_verdict(self)

    def rejecting(self) -> list[tuple[int, str]]:
        return [(self.ids[v], r) for v, r in enumerate(self.verdicts) if r is not None]

    def to_json(self) -> dict[str, Any]:
        def stacks(rounds: tuple[Stack, ...] | None) -> list[Any] | None:
            if rounds is None:
                return None
            return [
                [{"tag": r.tag, "fields": [[f.name, f.value, f.width] for f in r.fields]} for r in s]
                for s in rounds
            ]

        return {
            "protocol": self.protocol,
            "schedule": self.schedule.value,
            "prover": self.prover,
            "ids": list(self.ids),
            "round1": stacks(self.round1),
            "randomness": None
            if self.randomness is None
            else {"seed": self.randomness.seed, "field_point": self.randomness.field_point},
            "round2": stacks(self.round2),
            "verdicts": [{"id": i, "reason": r} for i, r in zip(self.ids, self.verdicts)],
            "stats": {"max_cert_bits": self.stats.max_cert_bits, "max_msg_bits": self.stats.max_msg_bits},
        }

    def digest(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":")).encode()
        return hashlib.sha256(blob).hexdigest()


class UsageError(ValueError):
    pass


def _checked(stacks: Sequence[Stack] | None, n: int, who: str) -> tuple[Stack, ...]:
    if stacks is None or len(stacks) != n:
        raise UsageError(f"{who} must return one certificate stack per node")
    return tuple(tuple(s) for s in stacks)


def run(protocol: Protocol, g: Graph, prover: ProverStrategy, seed: int = 0) -> Transcript:
    sched = protocol.schedule
    r1 = r2 = None
    rand = None
    if sched is not Schedule.DAM:
        if prover.round1 is None:
            raise UsageError(f"{protocol.name} needs a first prover round")
        r1 = _checked(prover.round1(g), g.n, "round1")
    if sched is not Schedule.DM:
        if prover.round2 is None:
            raise UsageError(f"{protocol.name} needs a second prover round")
        rand = SharedRandomness.from_seed(seed)
        r2 = _checked(prover.round2(g, rand, list(r1) if r1 else None), g.n, "round2")

    msgs = [(r1[v] if r1 else ()) + (r2[v] if r2 else ()) for v in range(g.n)]
    layout = protocol.round1_layout + protocol.round2_layout
    good = [well_formed(m, layout) for m in msgs]
    certs = [as_certs(m) if ok else {} for m, ok in zip(msgs, good)]
    point = rand.field_point if rand else None

    verdicts: list[str | None] = []
    for v in range(g.n):
        if not good[v] or not all(good[u] for u in g.adj[v]):
            verdicts.append(MALFORMED)
            continue
        view = NodeView(
            node_id=g.ids[v],
            degree=g.degree(v),
            own=certs[v],
            nbrs={g.ids[u]: certs[u] for u in g.adj[v]},
            point=point,
            label=protocol.labels[v] if protocol.labels is not None else None,
        )
        verdicts.append(protocol.verify(view))

    bits = max(stack_bits(m) for m in msgs)
    return Transcript(
        protocol=protocol.name,
        schedule=sched,
        prover=prover.label,
        ids=g.ids,
        round1=r1,
        randomness=rand,
        round2=r2,
        verdicts=tuple(verdicts),
        stats=Stats(bits, bits),
    )


def global_verdict(t: Transcript) -> bool:
    if not t.verdicts:
        raise UsageError("transcript has no verdicts")
    return all(r is None for r in t.verdicts)


def rejection_rate(protocol: Protocol, g: Graph, prover: ProverStrategy, trials: int, seed: int = 0) -> Fraction:
    if trials < 1:
        raise UsageError("trials must be at least 1")
    rejected = sum(not global_verdict(run(protocol, g, prover, seed + i)) for i in range(trials))
    return Fraction(rejected, trials)


def measure_bandwidth(t: Transcript) -> tuple[int, int]:
    return t.stats.max_cert_bits, t.stats.max_msg_bits
