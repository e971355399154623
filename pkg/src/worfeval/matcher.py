"""One-to-one node correspondence by maximum-weight bipartite matching."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .similarity import SimilarityMatrix

__all__ = ["NodeCorrespondence", "max_weight_matching"]

_TOL = 1e-9


@dataclass(frozen=True)
class NodeCorrespondence:
    """Matched ``(gold id, predicted id, weight)`` triples sorted by position."""

    pairs: tuple[tuple[object, object, float], ...] = ()

    def __post_init__(self) -> None:
        gold = [g for g, _, _ in self.pairs]
        pred = [p for _, p, _ in self.pairs]
        if len(set(gold)) != len(gold) or len(set(pred)) != len(pred):
            raise ValueError("correspondence must be one-to-one")

    @property
    def total(self) -> float:
        return float(sum(w for _, _, w in self.pairs))

    @property
    def gold_to_pred(self) -> dict:
        return {g: p for g, p, _ in self.pairs}

    @property
    def pred_to_gold(self) -> dict:
        return {p: g for g, p, _ in self.pairs}

    def __len__(self) -> int:
        return len(self.pairs)

    def without(self, gold_id) -> NodeCorrespondence:
        return NodeCorrespondence(tuple(t for t in self.pairs if t[0] != gold_id))


def _best_total(w: np.ndarray) -> float:
    if w.size == 0:
        return 0.0
    rows, cols = linear_sum_assignment(w, maximize=True)
    return float(w[rows, cols].sum())


def max_weight_matching(S: SimilarityMatrix) -> NodeCorrespondence:
    """Maximum total weight matching over the nonzero entries of ``S``.

    Among optimal matchings the one whose pair list (sorted by row, then
    column) is lexicographically smallest is returned: rows are fixed in
    order, each to the smallest column that still admits an optimum, or
    left unmatched when none does.
    """
    w = np.array(S.values, dtype=float)
    n_rows, n_cols = w.shape
    best = _best_total(w)
    if best <= 0.0:
        return NodeCorrespondence()
    tol = _TOL * max(1.0, best)

    rows_left = list(range(n_rows))
    cols_left = list(range(n_cols))
    fixed = 0.0
    chosen: list[tuple[int, int]] = []
    for i in range(n_rows):
        rows_left.remove(i)
        # no feasible column means every remaining optimum leaves row i unmatched
        for j in cols_left:
            if w[i, j] <= 0.0:
                continue
            rest_cols = [c for c in cols_left if c != j]
            sub = w[np.ix_(rows_left, rest_cols)]
            if fixed + w[i, j] + _best_total(sub) >= best - tol:
                chosen.append((i, j))
                fixed += w[i, j]
                cols_left = rest_cols
                break
    return NodeCorrespondence(
        tuple((S.gold_ids[i], S.pred_ids[j], float(w[i, j])) for i, j in chosen)
    )
