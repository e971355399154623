import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from worfeval.fixtures import gen_similarity_values, oracle_matching
from worfeval.matcher import NodeCorrespondence, max_weight_matching
from worfeval.similarity import SimilarityMatrix


def match(values):
    return max_weight_matching(SimilarityMatrix(values)).pairs


def test_single():
    assert match([[1.0]]) == ((1, 1, 1.0),)


def test_beats_greedy():
    pairs = match([[0.9, 0.7], [0.8, 0.0]])
    assert pairs == ((1, 2, 0.7), (2, 1, 0.8))
    assert sum(w for *_, w in pairs) == pytest.approx(1.5)


def test_all_zero():
    assert match([[0.0, 0.0], [0.0, 0.0]]) == ()


def test_empty():
    assert match(np.zeros((3, 0))) == ()


def test_lexicographic_tie_break():
    assert match([[1.0, 1.0], [1.0, 1.0]]) == ((1, 1, 1.0), (2, 2, 1.0))
    # both optima total 1.6; the one pairing gold 1 with pred 1 comes first
    assert match([[0.8, 0.8], [0.8, 0.8]]) == ((1, 1, 0.8), (2, 2, 0.8))
    # weight beats cardinality: one heavy pair over two light ones
    assert match([[1.0, 0.0], [0.7, 0.0]]) == ((1, 1, 1.0),)


def test_unmatched_row_when_column_is_better_elsewhere():
    assert match([[0.6, 0.0], [1.0, 0.0]]) == ((2, 1, 1.0),)


def test_custom_ids():
    S = SimilarityMatrix([[0.0, 0.9]], gold_ids=(7,), pred_ids=(3, 5))
    assert max_weight_matching(S).pairs == ((7, 5, 0.9),)


def test_correspondence_one_to_one():
    with pytest.raises(ValueError):
        NodeCorrespondence(((1, 1, 1.0), (1, 2, 1.0)))


@given(st.integers(0, 10**6))
def test_optimal_against_oracle(seed):
    values = gen_similarity_values(seed)
    corr = max_weight_matching(SimilarityMatrix(values))
    assert corr.total == pytest.approx(oracle_matching(values), abs=1e-9)
    gold = [g for g, _, _ in corr.pairs]
    pred = [p for _, p, _ in corr.pairs]
    assert len(set(gold)) == len(gold) and len(set(pred)) == len(pred)
    assert all(w >= 0.6 for *_, w in corr.pairs)
    assert len(corr) <= min(values.shape)
    assert max_weight_matching(SimilarityMatrix(values)) == corr


def _all_matchings(values):
    rows, cols = values.shape

    def walk(i, used, acc):
        if i == rows:
            yield list(acc)
            return
        yield from walk(i + 1, used, acc)
        for j in range(cols):
            if j not in used and values[i, j] > 0:
                yield from walk(i + 1, used | {j}, acc + [(i + 1, j + 1)])

    return walk(0, frozenset(), [])


@given(st.integers(0, 10**6))
def test_tie_break_is_lexicographic_minimum(seed):
    values = gen_similarity_values(seed, max_side=5)
    scored = [(sum(values[i - 1, j - 1] for i, j in m), m) for m in _all_matchings(values)]
    best = max(t for t, _ in scored)
    expected = min(m for t, m in scored if t >= best - 1e-9)
    got = [(g, p) for g, p, _ in max_weight_matching(SimilarityMatrix(values)).pairs]
    assert got == expected
