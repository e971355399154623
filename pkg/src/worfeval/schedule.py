"""Critical-path analysis for parallel execution of a workflow."""

from __future__ import annotations

import json
import math
import os
from collections.abc import Mapping

from .core import WorkflowGraph, deterministic_topo_sort
from .errors import MissingDurationError, ZeroDurationError

__all__ = ["critical_path", "speedup", "load_durations"]


def _durations(g: WorkflowGraph, d: Mapping[int, float]) -> dict[int, float]:
    out = {}
    for i in g.internal:
        if i not in d:
            raise MissingDurationError(f"no duration for node {i}")
        value = float(d[i])
        if value < 0 or not math.isfinite(value):
            raise ValueError(f"duration of node {i} must be a non-negative number, got {d[i]!r}")
        out[i] = value
    return out


def critical_path(g: WorkflowGraph, d: Mapping[int, float]) -> tuple[float, list[int]]:
    """Longest duration-weighted path through the internal nodes.

    Node weights only; terminals cost nothing.  Paths run from a node with
    no internal predecessor to one with no internal successor, so nodes
    not wired to START/END are still covered.  Ties go to the
    lexicographically smallest node sequence.
    """
    dur = _durations(g, d)
    order = deterministic_topo_sort(g)
    if not order:
        return 0.0, []
    succ: dict[int, list[int]] = {i: [] for i in order}
    has_pred: set[int] = set()
    for a, b in g.internal_edges:
        succ[a].append(b)
        has_pred.add(b)
    # tail[v]: heaviest path starting at v
    tail: dict[int, float] = {}
    for v in reversed(order):
        tail[v] = dur[v] + max((tail[s] for s in succ[v]), default=0.0)

    def close(x: float, y: float) -> bool:
        return math.isclose(x, y, rel_tol=1e-12, abs_tol=1e-12)

    length = max(tail[v] for v in order if v not in has_pred)
    v = min(v for v in order if v not in has_pred and close(tail[v], length))
    path = [v]
    while succ[v]:
        need = tail[v] - dur[v]
        v = min(s for s in succ[v] if close(tail[s], need))
        path.append(v)
    return length, path


def speedup(g: WorkflowGraph, d: Mapping[int, float]) -> float:
    """Sequential time divided by critical-path time."""
    dur = _durations(g, d)
    total = sum(dur.values())
    if total <= 0:
        raise ZeroDurationError("total duration is zero")
    length, _ = critical_path(g, d)
    return total / length


def load_durations(path: str | os.PathLike) -> dict[str, dict[int, float]]:
    """Read ``{id, durations}`` records; ``durations[k]`` belongs to node ``k + 1``."""
    out: dict[str, dict[int, float]] = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                rec = json.loads(line)
                out[rec["id"]] = {i: float(x) for i, x in enumerate(rec["durations"], start=1)}
    return out
