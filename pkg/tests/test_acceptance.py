"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v``; the summary section
"acceptance criteria" lists every criterion.  The dataset-dependent
checks read ``WORFEVAL_DATASET`` (any gold JSONL, used for self-evaluation)
and ``WORFEVAL_TEST_SET`` (the released test split, used for statistics).
"""

from __future__ import annotations

import os
import random
import time

import numpy as np
import pytest

from worfeval.chain_eval import score_chain
from worfeval.cli import main
from worfeval.core import build_graph, deterministic_topo_sort, enumerate_topo_orders
from worfeval.errors import FormatError
from worfeval.fixtures import (
    RandomDagSpec,
    corpus_path,
    gen_gold_sample,
    gen_mcis_instance,
    gen_random_dag,
    gen_similarity_values,
    oracle_matching,
    oracle_mcis,
)
from worfeval.fixtures.instances import case_a_gold, diamond
from worfeval.graph_eval import induced_subgraph, mcis
from worfeval.harness import EvalConfig, dataset_stats, evaluate, evaluate_samples
from worfeval.matcher import NodeCorrespondence, max_weight_matching
from worfeval.parser import Prediction, load_dataset, parse_workflow_text, serialize_workflow
from worfeval.qc import check_topo_consistency
from worfeval.schedule import critical_path
from worfeval.similarity import SimilarityMatrix


def _all_orders(g):
    """Full enumeration by plain backtracking, independent of the engine."""
    nodes = list(g.internal)
    preds = {v: {a for a, b in g.internal_edges if b == v} for v in nodes}
    out = []

    def walk(prefix, placed):
        if len(prefix) == len(nodes):
            out.append(tuple(prefix))
            return
        for v in nodes:
            if v not in placed and preds[v] <= placed:
                walk(prefix + [v], placed | {v})

    walk([], frozenset())
    return out


def test_mcis_oracle_equivalence(criterion):
    with criterion("1 mcis-oracle") as info:
        start = time.perf_counter()
        mismatches = 0
        for seed in range(500):
            pred, gold, pairs = gen_mcis_instance(seed, max_pairs=8)
            corr = NodeCorrespondence(pairs)
            sub = induced_subgraph(pred, [p for _, p, _ in pairs])
            k, cert = mcis(sub, gold, corr)
            assert len(cert) == k
            mismatches += k != oracle_mcis(sub, gold, corr)
        took = time.perf_counter() - start
        info["detail"] = f"500 instances, {mismatches} mismatches, {took:.1f}s"
        assert mismatches == 0
        assert took < 60


def test_matching_oracle_equivalence(criterion):
    with criterion("2 matching-oracle") as info:
        worst = 0.0
        for seed in range(500):
            vals = gen_similarity_values(seed, max_side=7, beta=0.6)
            S = SimilarityMatrix(vals, 0.6)
            worst = max(worst, abs(max_weight_matching(S).total - oracle_matching(vals)))
        info["detail"] = f"max abs diff {worst:.2e}"
        assert worst <= 1e-9


def test_cap_sufficiency(criterion):
    with criterion("3 cap-sufficiency") as info:
        diffs = []
        for seed in range(500):
            sample = gen_gold_sample(seed, max_nodes=7)
            rng = random.Random(seed)
            nodes = list(sample.gold_chain)
            chain = tuple(rng.sample(nodes, rng.randint(1, len(nodes))))
            corr = NodeCorrespondence(tuple((g, g, 1.0) for g in chain))
            capped = score_chain(sample.gold_graph, chain, corr, 20)
            full = score_chain(sample.gold_graph, chain, corr, None)
            if (capped.l, capped.f1) != (full.l, full.f1):
                diffs.append((seed, capped.l, full.l))
        info["detail"] = f"500 graphs, {len(diffs)} differ; first (seed, capped l, full l): {diffs[:3]}"
        assert not diffs


def test_self_evaluation_identity(criterion):
    with criterion("4 self-evaluation") as info:
        samples = [gen_gold_sample(seed, max_nodes=8) for seed in range(1000)]
        preds = [
            Prediction(s.id, None, parse_workflow_text(serialize_workflow(s.gold_graph))) for s in samples
        ]
        results = evaluate_samples(samples, preds, EvalConfig(provider="exact"))
        bad = [r.id for r in results if r.chain.f1 != 1.0 or r.graph.f1 != 1.0]
        detail = f"1000 random samples, {len(bad)} below 1.0"
        dataset = os.environ.get("WORFEVAL_DATASET")
        if dataset:
            released = load_dataset(dataset, validate=False)
            rp = [Prediction(s.id, None, parse_workflow_text(serialize_workflow(s.gold_graph))) for s in released]
            rr = evaluate_samples(released, rp, EvalConfig(provider="exact", workers=os.cpu_count() or 1))
            bad += [r.id for r in rr if r.chain.f1 != 1.0 or r.graph.f1 != 1.0]
            detail += f"; {len(released)} released samples checked"
        info["detail"] = detail
        assert not bad


def test_worked_fixtures(criterion):
    with criterion("5 worked-fixtures") as info:
        r = {x.id: x for x in evaluate(corpus_path("gold.jsonl"), corpus_path("pred.jsonl"))}
        got = {
            "case-a": (r["case-a"].chain.f1, r["case-a"].graph.f1),
            "diamond": (r["diamond"].chain.f1, r["diamond"].graph.f1),
            "reversed": r["reversed"].chain.f1,
        }
        info["detail"] = str(got)
        assert got["case-a"][0] == 1.0
        assert abs(got["case-a"][1] - 2 / 3) <= 1e-9
        assert got["diamond"][0] == 1.0
        assert abs(got["diamond"][1] - 0.5) <= 1e-9
        assert abs(got["reversed"] - 1 / 3) <= 1e-9
        # the same instances scored from the in-memory builders
        assert len(case_a_gold()) == 3 and enumerate_topo_orders(diamond()) == [(1, 2, 3, 4), (1, 3, 2, 4)]


def test_qc_determinism(criterion):
    with criterion("6 qc-determinism") as info:
        bad = 0
        for seed in range(1000):
            g = gen_random_dag(RandomDagSpec(1, 8, random.Random(seed).uniform(0.2, 0.8), seed))
            orders = _all_orders(g)
            det = deterministic_topo_sort(g)
            bad += det != min(orders)
            accepted = [o for o in orders if check_topo_consistency(g, o)]
            bad += accepted != [det]
        info["detail"] = f"1000 graphs, {bad} failures"
        assert bad == 0


@pytest.mark.skipif(not os.environ.get("WORFEVAL_TEST_SET"), reason="WORFEVAL_TEST_SET not set")
def test_dataset_statistics(criterion):
    with criterion("7 dataset-statistics") as info:
        stats = dataset_stats(os.environ["WORFEVAL_TEST_SET"])
        expected = {"<=5": 86.39, "<=10": 92.82, "<=20": 96.01, "<=50": 98.22, "<=100": 98.32}
        info["detail"] = f"buckets {stats['topo_order_buckets']}, mean nodes {stats['mean_nodes']:.3f}"
        for key, want in expected.items():
            assert abs(stats["topo_order_buckets"][key] - want) <= 0.1
        full = os.environ.get("WORFEVAL_FULL_SET")
        if full:
            assert abs(dataset_stats(full)["mean_nodes"] - 4.17) <= 0.01


def test_dataset_statistics_reported_when_absent(criterion):
    if os.environ.get("WORFEVAL_TEST_SET"):
        pytest.skip("dataset supplied; covered above")
    with criterion("7 dataset-statistics") as info:
        info["detail"] = "released test set not supplied"
        pytest.skip("WORFEVAL_TEST_SET not set")


def _single_path(g) -> bool:
    order = deterministic_topo_sort(g)
    return all((a, b) in g.edges for a, b in zip(order, order[1:]))


def test_critical_path(criterion):
    with criterion("8 critical-path") as info:
        bad = 0
        singles = 0
        for seed in range(1000):
            rng = random.Random(seed)
            g = gen_random_dag(RandomDagSpec(1, 8, rng.uniform(0.1, 1.0), seed))
            d = {i: float(rng.randint(1, 20)) for i in g.internal}
            length, _ = critical_path(g, d)
            total = sum(d.values())
            single = _single_path(g)
            singles += single
            bad += length > total or (length == total) != single
        fixtures = {}
        r = {s.id: s for s in load_dataset(corpus_path("gold.jsonl"))}
        for sid, dur in (("case-a", [2, 3, 5]), ("diamond", [1, 4, 2, 1]), ("over-generated", [3, 3, 3, 10])):
            fixtures[sid] = critical_path(r[sid].gold_graph, dict(enumerate(dur, start=1)))[0]
        info["detail"] = f"1000 DAGs ({singles} single-path), {bad} failures; fixtures {fixtures}"
        assert bad == 0
        assert (fixtures["case-a"], fixtures["diamond"]) == (5.0, 6.0)
        linear = build_graph([(1, "a"), (2, "b"), (3, "c")], [("START", 1), (1, 2), (2, 3), (3, "END")])
        assert critical_path(linear, {1: 2, 2: 3, 3: 5})[0] == 10.0


_TOKENS = ["Node:", "Edge:", "START", "END", "(", ")", ",", ":", ".", "1", "2", "3", "12", "-", "*", "\n", " ", "a", "x y"]


def _mutate(rng: random.Random, text: str) -> str:
    chars = list(text)
    for _ in range(rng.randint(0, 4)):
        pos = rng.randrange(len(chars) + 1)
        op = rng.random()
        if op < 0.4 and pos < len(chars):
            del chars[pos]
        elif op < 0.8:
            chars.insert(pos, rng.choice(_TOKENS))
        else:
            chars[pos:pos] = chr(rng.randrange(0x20, 0x3000))
    return "".join(chars)


def test_parser_robustness(criterion):
    with criterion("9 parser-robustness") as info:
        for seed in range(1000):
            g = gen_random_dag(RandomDagSpec(1, 10, random.Random(seed).random(), seed))
            nodes, edges = parse_workflow_text(serialize_workflow(g), strict=True)
            assert build_graph(nodes, edges) == g
        rng = np.random.default_rng(0)
        pyrng = random.Random(0)
        outcomes = {"parsed": 0, "format-error": 0}
        for i in range(10_000):
            if i % 3 == 0:
                text = rng.bytes(int(rng.integers(0, 200))).decode("utf-8", errors="replace")
            elif i % 3 == 1:
                text = "".join(pyrng.choice(_TOKENS) for _ in range(pyrng.randint(0, 40)))
            else:
                text = _mutate(pyrng, serialize_workflow(gen_random_dag(RandomDagSpec(1, 6, 0.4, i))))
            for strict in (False, True):
                try:
                    parse_workflow_text(text, strict=strict)
                    outcomes["parsed"] += 1
                except FormatError:
                    outcomes["format-error"] += 1
        info["detail"] = f"1000 round trips; fuzz outcomes {outcomes}"


def test_cli_golden_report(criterion, tmp_path):
    with criterion("10 cli-golden-report") as info:
        golden = corpus_path("golden_report.md").read_bytes()
        same = {}
        for workers in (1, 8):
            out = tmp_path / f"report-{workers}.md"
            args = ["eval", "--gold", str(corpus_path("gold.jsonl")), "--pred", str(corpus_path("pred.jsonl"))]
            assert main(args + ["--workers", str(workers), "--out", str(out)]) == 0
            same[workers] = out.read_bytes() == golden
        info["detail"] = f"byte-identical at workers: {same}"
        assert all(same.values())
