import pytest
from hypothesis import given
from hypothesis import strategies as st

from worfeval.core import count_topo_orders
from worfeval.errors import MissingDurationError, ZeroDurationError
from worfeval.fixtures import RandomDagSpec, gen_random_dag, oracle_critical_path
from worfeval.fixtures.instances import diamond, linear, parallel
from worfeval.schedule import critical_path, load_durations, speedup


def test_linear():
    assert critical_path(linear("abc"), {1: 2, 2: 3, 3: 5}) == (10, [1, 2, 3])
    assert speedup(linear("abc"), {1: 2, 2: 3, 3: 5}) == 1.0


def test_parallel():
    assert critical_path(parallel("abc"), {1: 2, 2: 3, 3: 5}) == (5, [3])
    assert speedup(parallel("abc"), {1: 2, 2: 3, 3: 5}) == 2.0


def test_diamond():
    d = {1: 1, 2: 4, 3: 2, 4: 1}
    assert critical_path(diamond(), d) == (6, [1, 2, 4])
    assert speedup(diamond(), d) == pytest.approx(8 / 6)


def test_tie_prefers_smallest_path():
    assert critical_path(diamond(), {1: 1, 2: 2, 3: 2, 4: 1}) == (4, [1, 2, 4])


def test_errors():
    with pytest.raises(MissingDurationError):
        critical_path(diamond(), {1: 1})
    with pytest.raises(ZeroDurationError):
        speedup(diamond(), {1: 0, 2: 0, 3: 0, 4: 0})
    with pytest.raises(ValueError):
        critical_path(diamond(), {1: -1, 2: 0, 3: 0, 4: 0})


def test_load_durations(tmp_path):
    path = tmp_path / "d.jsonl"
    path.write_text('{"id": "x", "durations": [1, 2.5]}\n')
    assert load_durations(path) == {"x": {1: 1.0, 2: 2.5}}


durations = st.lists(st.floats(0.1, 100, allow_nan=False), min_size=12, max_size=12)


@given(st.integers(0, 10**6), st.floats(0, 1), durations)
def test_properties(seed, p, ds):
    g = gen_random_dag(RandomDagSpec(1, 10, p, seed))
    d = {i: ds[i - 1] for i in g.internal}
    length, path = critical_path(g, d)
    total = sum(d.values())
    assert length <= total + 1e-9
    assert length >= max(d.values()) - 1e-9
    single_path = count_topo_orders(g, 2) == 1
    assert (abs(length - total) <= 1e-9 * total) == single_path
    o_len, o_path = oracle_critical_path(g, d)
    assert length == pytest.approx(o_len)
    assert sum(d[i] for i in path) == pytest.approx(length)


@given(st.integers(0, 10**6), durations, st.data())
def test_adding_edge_never_shortens(seed, ds, data):
    from worfeval.core import build_graph

    g = gen_random_dag(RandomDagSpec(2, 10, 0.3, seed, shuffle=False))
    d = {i: ds[i - 1] for i in g.internal}
    a = data.draw(st.sampled_from(g.internal[:-1]))
    b = data.draw(st.sampled_from([x for x in g.internal if x > a]))
    g2 = build_graph(g.labels, set(g.edges) | {(a, b)})
    assert critical_path(g2, d)[0] >= critical_path(g, d)[0] - 1e-9
