"""Seeded random workflows for property tests."""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from ..core import END, START, WorkflowGraph, build_graph
from ..parser import GoldSample, SCENARIOS

__all__ = [
    "RandomDagSpec",
    "gen_random_dag",
    "gen_gold_sample",
    "gen_similarity_values",
    "gen_mcis_instance",
]

_VERBS = ("go to", "open", "take", "search", "compute", "retrieve", "put", "check", "cool", "summarize")
_OBJECTS = ("fridge", "drawer 2", "the weather API", "user profile", "potato", "garbagecan", "log file", "report")


@dataclass(frozen=True)
class RandomDagSpec:
    min_nodes: int = 1
    max_nodes: int = 8
    edge_prob: float = 0.3
    seed: int = 0
    shuffle: bool = True

    def __post_init__(self) -> None:
        if not 0 <= self.min_nodes <= self.max_nodes:
            raise ValueError("need 0 <= min_nodes <= max_nodes")
        if not 0.0 <= self.edge_prob <= 1.0:
            raise ValueError("edge_prob must lie in [0, 1]")


def _label(rng: random.Random, index: int) -> str:
    return f"{rng.choice(_VERBS)} {rng.choice(_OBJECTS)} {index}"


def gen_random_dag(spec: RandomDagSpec) -> WorkflowGraph:
    """Random workflow with terminals wired to every source and sink.

    Edges only run from lower to higher position in a (shuffled, unless
    ``shuffle`` is off) rank order, so the result is acyclic.  Without
    shuffling the ascending index order is the deterministic topological
    order, as in quality-controlled gold data.
    """
    rng = random.Random(spec.seed)
    n = rng.randint(spec.min_nodes, spec.max_nodes)
    rank = list(range(1, n + 1))
    if spec.shuffle:
        rng.shuffle(rank)
    edges = []
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() < spec.edge_prob:
                edges.append((rank[a], rank[b]))
    has_in = {b for _, b in edges}
    has_out = {a for a, _ in edges}
    edges += [(START, v) for v in range(1, n + 1) if v not in has_in]
    edges += [(v, END) for v in range(1, n + 1) if v not in has_out]
    if n == 0:
        edges.append((START, END))
    nodes = [(i, _label(rng, i)) for i in range(1, n + 1)]
    return build_graph(nodes, edges)


def gen_gold_sample(seed: int, max_nodes: int = 7, edge_prob: float | None = None) -> GoldSample:
    """A sample that satisfies the gold-data guarantees (>= 2 nodes, chain = 1..n)."""
    rng = random.Random(seed)
    p = rng.uniform(0.0, 0.7) if edge_prob is None else edge_prob
    g = gen_random_dag(RandomDagSpec(2, max_nodes, p, seed, shuffle=False))
    return GoldSample(
        id=f"rand-{seed}",
        scenario=rng.choice(SCENARIOS),
        task=f"random task {seed}",
        action_list=(),
        gold_graph=g,
        gold_chain=g.internal,
    )


def gen_similarity_values(seed: int, max_side: int = 7, beta: float = 0.6) -> np.ndarray:
    """Random raw similarity values; a quarter of draws include exact ties."""
    rng = np.random.default_rng(seed)
    rows, cols = rng.integers(0, max_side + 1, size=2)
    if rng.random() < 0.25:
        vals = rng.choice([0.0, 0.5, 0.7, 0.8, 1.0], size=(rows, cols))
    else:
        vals = rng.random((rows, cols))
    return np.where(vals >= beta, vals, 0.0)


def gen_mcis_instance(seed: int, max_pairs: int = 8):
    """Random (pred graph, gold graph, pairs) with a fixed correspondence.

    Gold nodes ``1..n`` pair with a random subset of predicted nodes; the
    predicted graph is an independent random DAG, sometimes perturbed from
    the gold edges so that large agreeing sets occur.
    """
    rng = random.Random(seed)
    gold = gen_random_dag(RandomDagSpec(1, max_pairs, rng.uniform(0.1, 0.7), seed * 2 + 1, shuffle=False))
    n = len(gold)
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    mapping = dict(zip(gold.internal, perm))
    if rng.random() < 0.5:
        # perturb the gold structure; ascending gold index is a topological
        # order, so every added edge a -> b with a < b keeps the graph acyclic
        kept = {e for e in gold.internal_edges if rng.random() < 0.8}
        extra = {(a, b) for a in gold.internal for b in gold.internal if a < b and rng.random() < 0.1}
        pred_edges = [(mapping[a], mapping[b]) for a, b in kept | extra]
        pred = build_graph([(v, f"p{v}") for v in sorted(perm)], pred_edges)
    else:
        pred = gen_random_dag(RandomDagSpec(n, n, rng.uniform(0.1, 0.7), seed * 2 + 2))
    k = rng.randint(0, n)
    chosen = sorted(rng.sample(list(gold.internal), k))
    pairs = tuple((g, mapping[g], 1.0) for g in chosen)
    return pred, gold, pairs
