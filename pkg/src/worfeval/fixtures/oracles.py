"""Brute-force oracles used to check the optimized engine.

These deliberately avoid the matcher, scoring and ordering code: they
only read graph fields and enumerate.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Mapping, Sequence

from ..core import TERMINALS, WorkflowGraph
from ..errors import TooLargeError

__all__ = [
    "MAX_MCIS_PAIRS",
    "MAX_MATCHING_SIDE",
    "oracle_mcis",
    "oracle_matching",
    "oracle_topo_orders",
    "oracle_lis",
    "oracle_critical_path",
]

MAX_MCIS_PAIRS = 12
MAX_MATCHING_SIDE = 7


def _pairs(corr) -> list[tuple]:
    raw = corr.pairs if hasattr(corr, "pairs") else corr
    return [(t[0], t[1]) for t in raw]


def oracle_mcis(pred_sub: WorkflowGraph, gold: WorkflowGraph, corr) -> int:
    """Largest subset of matched pairs whose induced edges agree, by 2^n search."""
    pairs = _pairs(corr)
    n = len(pairs)
    if n > MAX_MCIS_PAIRS:
        raise TooLargeError(f"{n} pairs exceeds the oracle limit of {MAX_MCIS_PAIRS}")
    ge, pe = gold.edges, pred_sub.edges
    for size in range(n, 0, -1):
        for subset in itertools.combinations(pairs, size):
            ok = True
            for (ga, pa), (gb, pb) in itertools.product(subset, repeat=2):
                if ((ga, gb) in ge) != ((pa, pb) in pe):
                    ok = False
                    break
            if ok:
                return size
    return 0


def oracle_matching(S) -> float:
    """Maximum total weight over all injective assignments (zeros unusable)."""
    values = getattr(S, "values", S)
    rows = [list(map(float, r)) for r in values]
    n = len(rows)
    m = len(rows[0]) if n else 0
    if n > MAX_MATCHING_SIDE or m > MAX_MATCHING_SIDE:
        raise TooLargeError(f"{n}x{m} exceeds the oracle limit of {MAX_MATCHING_SIDE}")
    if n == 0 or m == 0:
        return 0.0
    best = 0.0

    # every injective partial map rows -> columns; zero entries add nothing,
    # so leaving a row unmatched covers them
    def walk(i: int, used: frozenset, total: float) -> None:
        nonlocal best
        if i == n:
            best = max(best, total)
            return
        walk(i + 1, used, total)
        for j in range(m):
            if j not in used and rows[i][j] > 0:
                walk(i + 1, used | {j}, total + rows[i][j])

    walk(0, frozenset(), 0.0)
    return best


def oracle_topo_orders(g: WorkflowGraph) -> list[tuple[int, ...]]:
    """Every permutation of the internal nodes that respects all internal edges."""
    nodes = [i for i, _ in g.labels]
    if len(nodes) > 9:
        raise TooLargeError("too many nodes for permutation enumeration")
    edges = [(a, b) for a, b in g.edges if a not in TERMINALS and b not in TERMINALS]
    out = []
    for perm in itertools.permutations(sorted(nodes)):
        pos = {v: k for k, v in enumerate(perm)}
        if all(pos[a] < pos[b] for a, b in edges):
            out.append(perm)
    return out


def oracle_lis(seq: Sequence[int]) -> int:
    """Quadratic dynamic program for the longest strictly increasing subsequence."""
    best = [1] * len(seq)
    for i in range(len(seq)):
        for j in range(i):
            if seq[j] < seq[i]:
                best[i] = max(best[i], best[j] + 1)
    return max(best, default=0)


def _all_paths(g: WorkflowGraph) -> Iterable[list[int]]:
    internal = [i for i, _ in g.labels]
    edges = [(a, b) for a, b in g.edges if a not in TERMINALS and b not in TERMINALS]
    succ = {i: sorted(b for a, b in edges if a == i) for i in internal}
    has_pred = {b for _, b in edges}

    def walk(path):
        last = path[-1]
        if not succ[last]:
            yield list(path)
        for s in succ[last]:
            yield from walk(path + [s])

    for v in internal:
        if v not in has_pred:
            yield from walk([v])


def oracle_critical_path(g: WorkflowGraph, d: Mapping[int, float]) -> tuple[float, list[int]]:
    """Enumerate every source-to-sink path; return the heaviest (smallest on ties)."""
    best: tuple[float, list[int]] | None = None
    for path in _all_paths(g):
        w = sum(d[i] for i in path)
        if best is None or w > best[0] + 1e-12 or (abs(w - best[0]) <= 1e-12 and path < best[1]):
            best = (w, path)
    return best if best is not None else (0.0, [])
