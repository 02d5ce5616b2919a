import pytest
from hypothesis import given
from hypothesis import strategies as st

from gisim import io
from gisim.generators import generate
from gisim.models import ModelFit, is_proper_model

CASES = [("permutation", None), ("trapezoid", None), ("circle", None), ("polygon", 2), ("polygon", 3), ("polygon", 4)]


@pytest.mark.parametrize("cls, k", CASES)
@pytest.mark.parametrize("sparse", [False, True])
def test_generated_instances_are_proper_and_connected(cls, k, sparse):
    for seed in range(10):
        for n in (2, 3, 7, 20):
            g, model = generate(cls, n, k, seed, sparse=sparse)
            assert g.n == n == model.n
            assert is_proper_model(g, model) is ModelFit.PROPER
            assert len(set(g.ids)) == n and all(1 <= i < 2**32 for i in g.ids)


def test_circle_endpoints_cover_range():
    _, model = generate("circle", 8, seed=1)
    ends = [x for c in model.chords for x in c]
    assert sorted(ends) == list(range(16))


def test_polygon_vertices_cover_range():
    _, model = generate("polygon", 3, 3, seed=2)
    assert sorted(x for p in model.polys for x in p) == list(range(9))


@given(st.sampled_from(CASES), st.integers(2, 30), st.integers(0, 10**6), st.booleans())
def test_same_seed_same_bytes(case, n, seed, sparse):
    cls, k = case
    a = io.dumps(*generate(cls, n, k, seed, sparse=sparse))
    b = io.dumps(*generate(cls, n, k, seed, sparse=sparse))
    assert a == b


def test_seeds_differ():
    assert io.dumps(*generate("circle", 10, seed=1)) != io.dumps(*generate("circle", 10, seed=2))


def test_sparse_degrees_stay_small():
    g, _ = generate("circle", 2000, seed=3, sparse=True)
    assert max(g.degree(v) for v in range(g.n)) < 20


@pytest.mark.parametrize(
    "args",
    [("interval", 5, None), ("circle", 1, None), ("polygon", 5, None), ("polygon", 5, 1)],
)
def test_bad_arguments(args):
    with pytest.raises(ValueError):
        generate(*args)
