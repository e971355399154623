"""Workflow-graph scoring by maximum common induced subgraph.

The matcher fixes which predicted node stands for which gold node, so the
common induced subgraph search reduces to: pick the largest set of matched
pairs on which edge presence *and* absence agree in both directions.  Two
pairs are compatible when they agree with each other; a valid set is a
clique in that compatibility graph, found here by branch and bound.
"""

from __future__ import annotations

from collections.abc import Collection
from dataclasses import dataclass

from .chain_eval import f1_score
from .core import TERMINALS, NodeKey, WorkflowGraph, node_sort_key, strip_terminals
from .errors import UnknownNodeError
from .matcher import NodeCorrespondence

__all__ = ["GraphScore", "induced_subgraph", "mcis", "score_graph", "pairs_agree"]

Pair = tuple[NodeKey, NodeKey]


@dataclass(frozen=True)
class GraphScore:
    k: int
    precision: float
    recall: float
    f1: float
    certificate: tuple[Pair, ...] = ()
    empty_prediction: bool = False

    @classmethod
    def zero(cls, empty_prediction: bool = True) -> GraphScore:
        return cls(0, 0.0, 0.0, 0.0, (), empty_prediction)


def induced_subgraph(g: WorkflowGraph, subset: Collection[NodeKey]) -> WorkflowGraph:
    """Nodes in ``subset`` with every edge of ``g`` between them."""
    subset = set(subset)
    unknown = [x for x in subset if x not in g]
    if unknown:
        raise UnknownNodeError(f"nodes not in graph: {sorted(unknown, key=node_sort_key)}")
    labels = tuple((i, lab) for i, lab in g.labels if i in subset)
    edges = frozenset(e for e in g.edges if e[0] in subset and e[1] in subset)
    return WorkflowGraph(labels, edges, terminals=bool(subset & set(TERMINALS)))


def pairs_agree(a: Pair, b: Pair, gold_edges: Collection, pred_edges: Collection) -> bool:
    """Whether matched pairs ``a`` and ``b`` induce the same edges on both sides.

    ``a`` and ``b`` are ``(gold, pred)`` pairs; ``a == b`` checks self-loops.
    """
    (ga, pa), (gb, pb) = a, b
    if ((ga, gb) in gold_edges) != ((pa, pb) in pred_edges):
        return False
    return ((gb, ga) in gold_edges) == ((pb, pa) in pred_edges)


def mcis(
    pred_sub: WorkflowGraph, gold: WorkflowGraph, corr: NodeCorrespondence
) -> tuple[int, tuple[Pair, ...]]:
    """Largest set of matched pairs with induced edge agreement.

    Returns ``(k, certificate)``; the certificate lists ``(gold, pred)``
    pairs sorted by gold node and is the lexicographically smallest optimum.
    """
    pairs: list[Pair] = sorted(((g, p) for g, p, _ in corr.pairs), key=lambda t: node_sort_key(t[0]))
    for g, p in pairs:
        if g not in gold:
            raise UnknownNodeError(f"gold node {g} not in gold graph")
        if p not in pred_sub:
            raise UnknownNodeError(f"predicted node {p} not in predicted graph")
    gold_edges, pred_edges = gold.edges, pred_sub.edges
    verts = [i for i, pr in enumerate(pairs) if pairs_agree(pr, pr, gold_edges, pred_edges)]
    n = len(verts)
    adj = [0] * n
    for x in range(n):
        for y in range(x + 1, n):
            if pairs_agree(pairs[verts[x]], pairs[verts[y]], gold_edges, pred_edges):
                adj[x] |= 1 << y
                adj[y] |= 1 << x

    best: list[int] = []
    current: list[int] = []

    def expand(cand: int) -> None:
        nonlocal best
        if len(current) > len(best):
            best = current.copy()
        while cand:
            if len(current) + cand.bit_count() <= len(best):
                return
            v = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            current.append(v)
            expand(cand & adj[v])
            current.pop()

    expand((1 << n) - 1)
    cert = tuple(pairs[verts[v]] for v in best)
    return len(cert), cert


def score_graph(
    gold: WorkflowGraph,
    pred_graph: WorkflowGraph,
    pred_nodes_total: int,
    corr: NodeCorrespondence,
    *,
    include_terminals: bool = False,
) -> GraphScore:
    """Graph precision/recall/f1 from the MCIS size.

    ``pred_nodes_total`` counts all predicted internal nodes, matched or
    not.  By default terminals are stripped from both graphs; with
    ``include_terminals`` START and END are matched to each other and count
    as nodes on both sides.
    """
    if pred_nodes_total == 0:
        return GraphScore.zero()
    if include_terminals:
        extra = tuple((t, t, 1.0) for t in TERMINALS if t in gold and t in pred_graph)
        corr = NodeCorrespondence(tuple(corr.pairs) + extra)
        n_pred, n_gold = pred_nodes_total + 2, len(gold) + 2
    else:
        gold, pred_graph = strip_terminals(gold), strip_terminals(pred_graph)
        corr = NodeCorrespondence(tuple(t for t in corr.pairs if t[0] not in TERMINALS))
        n_pred, n_gold = pred_nodes_total, len(gold)
    pred_sub = induced_subgraph(pred_graph, [p for _, p, _ in corr.pairs])
    k, cert = mcis(pred_sub, gold, corr)
    precision, recall = k / n_pred, k / n_gold
    return GraphScore(k, precision, recall, f1_score(precision, recall), cert)
