import pytest
from hypothesis import given
from hypothesis import strategies as st

from worfeval.core import END, START, build_graph
from worfeval.errors import IndexMismatchError
from worfeval.fixtures import gen_gold_sample
from worfeval.fixtures.instances import case_a_gold, diamond
from worfeval.parser import GoldSample
from worfeval.qc import QcVerdict, check_topo_consistency, filter_complexity, run_qc


class TestTopoConsistency:
    def test_deterministic_order(self):
        assert check_topo_consistency(diamond(), [1, 2, 3, 4])

    def test_other_valid_order(self):
        assert not check_topo_consistency(diamond(), [1, 3, 2, 4])

    def test_single_node(self):
        assert check_topo_consistency(build_graph([(1, "a")], [(START, 1), (1, END)]), [1])

    def test_mismatched_indices(self):
        with pytest.raises(IndexMismatchError):
            check_topo_consistency(diamond(), [1, 2, 3])
        with pytest.raises(IndexMismatchError):
            check_topo_consistency(diamond(), [1, 2, 3, 3])


class TestComplexity:
    def test_single_node(self):
        v = filter_complexity(build_graph([(1, "a")], [(START, 1), (1, END)]))
        assert v == QcVerdict(False, "too-simple")

    def test_parallel_case_study_kept(self):
        assert filter_complexity(case_a_gold()).keep

    def test_empty_workflow(self):
        assert not filter_complexity(build_graph([], [(START, END)])).keep

    def test_two_nodes_single_edge(self):
        assert not filter_complexity(build_graph([(1, "a"), (2, "b")], [(1, 2)])).keep


def _mismatched(sid):
    g = build_graph([(1, "x"), (2, "y"), (3, "z")], [(START, 2), (2, 1), (2, 3), (1, END), (3, END)])
    return GoldSample(sid, "embodied", "", (), g, (1, 2, 3))


def test_run_qc_all_valid():
    res = run_qc([gen_gold_sample(s) for s in range(10)])
    assert len(res.kept) == 10
    assert all(r == 0 for r in res.rates.values())


def test_run_qc_one_mismatch_in_ten():
    samples = [gen_gold_sample(s) for s in range(9)] + [_mismatched("bad")]
    res = run_qc(samples)
    assert res.rates["topo-mismatch"] == pytest.approx(0.1)
    assert res.rates["external-reject"] == 0
    assert res.report_records() == [{"id": "bad", "reason": "topo-mismatch"}]


def test_run_qc_external_predicate():
    samples = [gen_gold_sample(s) for s in range(4)]
    res = run_qc(samples, lambda s: s.id != "rand-2")
    assert [s.id for s in res.kept] == ["rand-0", "rand-1", "rand-3"]
    assert res.discarded[0][1] == "external-reject"


def test_run_qc_empty():
    res = run_qc([])
    assert res.total == 0 and all(v == 0 for v in res.rates.values())


@given(st.integers(0, 10**6))
def test_kept_samples_satisfy_guarantees(seed):
    s = gen_gold_sample(seed)
    alt = GoldSample(s.id, s.scenario, "", (), s.gold_graph, tuple(reversed(s.gold_chain)))
    res = run_qc([s, alt])
    for kept in res.kept:
        g = kept.gold_graph
        assert check_topo_consistency(g, kept.gold_chain) and len(g) >= 2 and len(g.edges) >= 2
    # the filters are independent predicates: reordering them keeps the same set
    simple = {x.id for x in [s, alt] if filter_complexity(x.gold_graph).keep}
    topo = {x.id for x in [s, alt] if check_topo_consistency(x.gold_graph, x.gold_chain)}
    assert {x.id for x in res.kept} <= simple & topo
