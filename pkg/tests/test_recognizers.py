import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gisim.engine import rejection_rate, run
from gisim.gadgets import build
from gisim.generators import generate
from gisim.graph import Graph, cycle_graph
from gisim.models import PermutationModel
from gisim.recognizers import (
    PROTOCOL_NAMES,
    STRATEGIES,
    ModelNotProper,
    StrategyInapplicable,
    adversary,
    battery,
    for_class,
    get,
)
from gisim.recognizers.adversary import parse

CASES = [("permutation", None), ("trapezoid", None), ("circle", None), ("polygon", 2), ("polygon", 3)]
W5 = Graph.from_edges(6, [(i, (i + 1) % 5) for i in range(5)] + [(i, 5) for i in range(5)])


@settings(max_examples=60)
@given(st.sampled_from(CASES), st.integers(2, 40), st.integers(0, 10**6), st.booleans())
def test_honest_prover_is_always_accepted(case, n, seed, sparse):
    cls, k = case
    g, model = generate(cls, n, k, seed, sparse=sparse)
    rec = for_class(cls, k)
    assert run(rec.protocol, g, rec.honest(g, model), seed=seed).accepted


def test_registry():
    assert set(PROTOCOL_NAMES) == {"size-pls", "permutation-pls", "trapezoid-pls", "circle-dmam", "polygon-dmam"}
    assert not get("permutation-pls").interactive
    assert get("circle-dmam").interactive
    with pytest.raises(ValueError):
        get("polygon-dmam")
    with pytest.raises(ValueError):
        get("interval-pls")
    with pytest.raises(ValueError):
        for_class("interval")


def test_honest_needs_a_proper_model():
    g = cycle_graph(4)
    rec = get("permutation-pls")
    with pytest.raises(ModelNotProper):
        rec.honest(g, PermutationModel((0, 1, 2, 3), (0, 1, 2, 3)))


def test_strategy_parsing():
    assert parse("wrong-n(-2)") == ("wrong-n", -2)
    assert parse(" bit-flip ") == ("bit-flip", None)
    assert parse("bit-flip(7)") == ("bit-flip", 7)
    with pytest.raises(ValueError):
        parse("lie")
    with pytest.raises(ValueError):
        parse("wrong-n(x)")


def test_inline_parameter_sets_the_label():
    g, m = generate("permutation", 5, seed=1)
    rec = get("permutation-pls")
    assert adversary("wrong-n(-2)", g, rec, m).label == "wrong-n(-2)"
    assert adversary("wrong-n", g, rec, m).label == "wrong-n"


def test_inapplicable_strategies():
    g, m = generate("circle", 6, seed=2)
    rec = get("circle-dmam")
    for name in ("broken-path", "reverse-semi-proper"):
        with pytest.raises(StrategyInapplicable):
            adversary(name, g, rec, m)
    with pytest.raises(StrategyInapplicable):
        adversary("stale-model", g, rec)
    with pytest.raises(StrategyInapplicable):
        adversary("wrong-n(-6)", g, rec, m)
    with pytest.raises(StrategyInapplicable):
        adversary("tampered-aggregate", g, get("permutation-pls"), None)
    names = dict(battery(g, rec))
    assert names["broken-path"] is None and names["bit-flip"] is not None


@pytest.mark.parametrize("cls, k", CASES)
def test_corruptions_of_a_member_are_caught(cls, k):
    # stale-model is left out: on a member the stale model is still proper
    g, m = generate(cls, 9, k, seed=4)
    rec = for_class(cls, k)
    for name, strat in battery(g, rec, [s for s in STRATEGIES if s != "stale-model"], base=m):
        if strat is not None and name not in ("reverse-semi-proper", "best-semi-proper"):
            assert rejection_rate(rec.protocol, g, strat, 5) == 1, name


def test_reason_prefixes_name_the_failed_part():
    g, m = generate("permutation", 8, seed=1)
    rec = get("permutation-pls")
    reasons = {r for _, r in run(rec.protocol, g, adversary("broken-tree", g, rec, m)).rejecting()}
    assert reasons and all(r.startswith("a:") for r in reasons)
    g, m = generate("circle", 8, seed=1)
    rec = get("circle-dmam")
    reasons = {r for _, r in run(rec.protocol, g, adversary("tampered-aggregate", g, rec, m), seed=1).rejecting()}
    assert reasons == {"fingerprint:root-mismatch"}


NON_MEMBERS = [
    ("permutation", None, cycle_graph(5)),
    ("trapezoid", None, cycle_graph(6)),
    ("circle", None, W5),
    ("polygon", 2, W5),
    ("permutation", None, build("Q", 3).crossed(1, 3)),
    ("trapezoid", None, build("Q", 3).crossed(1, 2)),
    ("circle", None, build("M", 3).crossed(1, 2)),
    ("polygon", 2, build("M", 4).crossed(2, 4)),
]


@pytest.mark.parametrize("cls, k, g", NON_MEMBERS)
def test_every_applicable_cheat_is_rejected_on_non_members(cls, k, g):
    rec = for_class(cls, k)
    tried = 0
    for name, strat in battery(g, rec):
        if strat is None:
            continue
        tried += 1
        assert rejection_rate(rec.protocol, g, strat, 10) == 1, name
    assert tried >= 3
