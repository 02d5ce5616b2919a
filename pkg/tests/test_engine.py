import json
from fractions import Fraction

import pytest

from gisim.engine import (
    MALFORMED,
    P,
    Field,
    Protocol,
    ProverStrategy,
    Record,
    Schedule,
    SharedRandomness,
    UsageError,
    global_verdict,
    measure_bandwidth,
    record,
    rejection_rate,
    run,
    splitmix64,
    stack_bits,
    well_formed,
    width_for,
)
from gisim.graph import cycle_graph, path_graph


def test_width_for():
    assert [width_for(b) for b in (0, 1, 2, 3, 4, 255, 256)] == [1, 1, 2, 2, 3, 8, 9]


def test_splitmix64_reference_vectors():
    # published first outputs of SplitMix64 for seeds 0 and 1234567
    assert splitmix64(0) == 0xE220A8397B1DCDAF
    assert splitmix64(1234567) == 6457827717110365317


def test_shared_randomness_is_a_field_element():
    r = SharedRandomness.from_seed(7)
    assert r == SharedRandomness.from_seed(7)
    assert 0 <= r.field_point < P
    assert r.field_point == splitmix64(7) % P
    assert SharedRandomness.from_seed(-1).seed == 2**64 - 1


def test_records_and_layouts():
    r = record("x", ("a", 3, 2), ("b", 0, 1))
    assert r.bits == 3
    assert r.values() == {"a": 3, "b": 0}
    assert r.layout() == ("x", ("a", "b"))
    assert stack_bits((r, r)) == 6
    assert well_formed((r,), (("x", ("a", "b")),))
    assert not well_formed((r,), (("x", ("b", "a")),))
    assert not well_formed((Record("x", (Field("a", 4, 2), Field("b", 0, 1))),), (("x", ("a", "b")),))
    assert not well_formed((Record("x", (Field("a", 0, 0), Field("b", 0, 1))),), (("x", ("a", "b")),))


def _parity_protocol(schedule=Schedule.DM):
    # each node accepts iff its bit differs from every neighbour's bit
    def verify(view):
        mine = view.own["c"]["bit"]
        return None if all(c["c"]["bit"] != mine for c in view.nbrs.values()) else "same-colour"

    layout = (("c", ("bit",)),)
    if schedule is Schedule.DM:
        return Protocol("parity", schedule, layout, (), verify)
    return Protocol("parity", schedule, (), layout, verify)


def _colouring(bits):
    return lambda g: [(record("c", ("bit", bits[v], 1)),) for v in range(g.n)]


def test_one_round_run_and_transcript():
    g = path_graph(4)
    t = run(_parity_protocol(), g, ProverStrategy("honest", _colouring([0, 1, 0, 1])))
    assert t.accepted and global_verdict(t)
    assert t.randomness is None and t.round2 is None
    assert measure_bandwidth(t) == (1, 1)
    doc = t.to_json()
    assert json.loads(json.dumps(doc)) == doc
    assert set(doc) == {"protocol", "schedule", "prover", "ids", "round1", "randomness", "round2", "verdicts", "stats"}


def test_rejections_are_per_node():
    g = cycle_graph(3)
    t = run(_parity_protocol(), g, ProverStrategy("x", _colouring([0, 1, 1])))
    assert not t.accepted
    assert t.rejecting() == [(2, "same-colour"), (3, "same-colour")]


def test_malformed_stack_rejects_owner_and_neighbours():
    g = path_graph(4)

    def bad(g):
        stacks = _colouring([0, 1, 0, 1])(g)
        stacks[0] = (Record("c", (Field("bit", 4, 2),)),)
        return stacks

    t = run(_parity_protocol(), g, ProverStrategy("x", bad))
    assert t.verdicts[0] == MALFORMED and t.verdicts[1] == MALFORMED
    assert t.verdicts[2] is None and t.verdicts[3] is None


def test_dam_round_sees_randomness():
    seen = []

    def round2(g, rand, r1):
        seen.append((rand.seed, r1))
        return _colouring([0, 1, 0])(g)

    t = run(_parity_protocol(Schedule.DAM), path_graph(3), ProverStrategy("x", None, round2), seed=5)
    assert t.accepted
    assert seen == [(5, None)]
    assert t.randomness == SharedRandomness.from_seed(5)


def test_usage_errors():
    g = path_graph(3)
    with pytest.raises(UsageError):
        run(_parity_protocol(), g, ProverStrategy("x"))
    with pytest.raises(UsageError):
        run(_parity_protocol(), g, ProverStrategy("x", lambda g: []))
    with pytest.raises(UsageError):
        run(_parity_protocol(Schedule.DMAM), g, ProverStrategy("x", _colouring([0, 1, 0])))
    with pytest.raises(UsageError):
        rejection_rate(_parity_protocol(), g, ProverStrategy("x", _colouring([0, 1, 0])), 0)


def test_rejection_rate_is_exact():
    g = path_graph(3)
    assert rejection_rate(_parity_protocol(), g, ProverStrategy("x", _colouring([0, 0, 1])), 4) == Fraction(1)
    assert rejection_rate(_parity_protocol(), g, ProverStrategy("x", _colouring([0, 1, 0])), 4) == 0


def test_digest_is_stable_and_content_sensitive():
    g = path_graph(4)
    a = run(_parity_protocol(), g, ProverStrategy("x", _colouring([0, 1, 0, 1])))
    b = run(_parity_protocol(), g, ProverStrategy("x", _colouring([0, 1, 0, 1])))
    c = run(_parity_protocol(), g, ProverStrategy("x", _colouring([1, 0, 1, 0])))
    assert a.digest() == b.digest() != c.digest()
