"""Node-chain scoring via longest increasing subsequence."""

from __future__ import annotations

from bisect import bisect_left
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Optional

from .core import DEFAULT_TOPO_CAP, WorkflowGraph, enumerate_topo_orders
from .matcher import NodeCorrespondence

__all__ = ["ChainScore", "lis_length", "score_chain", "f1_score"]


def f1_score(precision: float, recall: float) -> float:
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


@dataclass(frozen=True)
class ChainScore:
    l: int
    precision: float
    recall: float
    f1: float
    orders_used: int
    empty_prediction: bool = False

    @classmethod
    def zero(cls, empty_prediction: bool = True) -> ChainScore:
        return cls(0, 0.0, 0.0, 0.0, 0, empty_prediction)


def lis_length(seq: Sequence[int]) -> int:
    """Length of the longest strictly increasing subsequence (patience sorting)."""
    tails: list[int] = []
    for x in seq:
        k = bisect_left(tails, x)
        if k == len(tails):
            tails.append(x)
        else:
            tails[k] = x
    return len(tails)


def score_chain(
    gold: WorkflowGraph,
    pred_chain: Sequence,
    corr: NodeCorrespondence,
    cap: Optional[int] = DEFAULT_TOPO_CAP,
    *,
    include_terminals: bool = False,
) -> ChainScore:
    """Score a predicted node chain against every enumerated gold order.

    ``pred_chain`` lists predicted node ids in generation order, matched or
    not; ``corr`` maps gold to predicted ids.  ``cap=None`` uses every
    topological order.  With ``include_terminals`` both sides gain a
    leading START and trailing END which always match each other.
    """
    n_gold = len(gold) + (2 if include_terminals else 0)
    n_pred = len(pred_chain) + (2 if include_terminals else 0)
    if not pred_chain:
        return ChainScore.zero()
    pred_to_gold = corr.pred_to_gold
    matched = [pred_to_gold[p] for p in pred_chain if p in pred_to_gold]
    orders = enumerate_topo_orders(gold, cap)
    best = 0
    for order in orders:
        pos = {g: k for k, g in enumerate(order)}
        best = max(best, lis_length([pos[g] for g in matched]))
    if include_terminals:
        best += 2
    precision = best / n_pred
    recall = best / n_gold
    return ChainScore(best, precision, recall, f1_score(precision, recall), len(orders))
