"""Workflow graph model, validation and topological ordering.

A workflow is a DAG whose internal nodes are numbered subtasks (1-based,
numbered by their position in the node chain) plus two bookkeeping
terminals, ``START`` and ``END``.  Terminals are kept in every graph but
the ordering functions here only look at internal nodes.
"""

from __future__ import annotations

import heapq
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from typing import Union

from .errors import CycleError, DanglingEdgeError, DuplicateIndexError, InvalidGraphError

__all__ = [
    "START",
    "END",
    "NodeKey",
    "Edge",
    "NodeChain",
    "WorkflowNode",
    "WorkflowGraph",
    "node_sort_key",
    "build_graph",
    "strip_terminals",
    "deterministic_topo_sort",
    "iter_topo_orders",
    "enumerate_topo_orders",
    "count_topo_orders",
    "DEFAULT_TOPO_CAP",
]

START = "START"
END = "END"
TERMINALS = (START, END)
DEFAULT_TOPO_CAP = 20

NodeKey = Union[int, str]
Edge = tuple[NodeKey, NodeKey]
NodeChain = tuple[int, ...]


def node_sort_key(key: NodeKey) -> tuple[int, int]:
    """Order START first, internal nodes by index, END last."""
    if key == START:
        return (0, 0)
    if key == END:
        return (2, 0)
    return (1, key)


def _normalize_endpoint(value: object) -> NodeKey:
    if isinstance(value, bool):
        raise InvalidGraphError(f"invalid edge endpoint {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        text = value.strip()
        if text.upper() in TERMINALS:
            return text.upper()
        if text.lstrip("-").isdigit():
            return int(text)
    raise InvalidGraphError(f"invalid edge endpoint {value!r}")


@dataclass(frozen=True, order=True)
class WorkflowNode:
    index: int
    label: str
    kind: str = "internal"

    def __post_init__(self) -> None:
        if self.kind == "internal":
            if self.index < 1:
                raise InvalidGraphError(f"internal node index must be >= 1, got {self.index}")
            if not self.label:
                raise InvalidGraphError(f"node {self.index} has an empty label")
        elif self.kind not in ("start", "end"):
            raise InvalidGraphError(f"unknown node kind {self.kind!r}")

    @property
    def key(self) -> NodeKey:
        if self.kind == "start":
            return START
        if self.kind == "end":
            return END
        return self.index


_START_NODE = WorkflowNode(0, START, "start")
_END_NODE = WorkflowNode(0, END, "end")


@dataclass(frozen=True)
class WorkflowGraph:
    """Immutable workflow DAG.

    ``labels`` maps internal node index to its subtask text; ``edges`` holds
    ordered ``(from, to)`` pairs whose endpoints are indices or the
    ``START``/``END`` tokens.  Construct through :func:`build_graph`.
    """

    labels: tuple[tuple[int, str], ...]
    edges: frozenset[Edge] = field(default_factory=frozenset)
    terminals: bool = True

    @cached_property
    def label_of(self) -> dict[int, str]:
        return dict(self.labels)

    @property
    def internal(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.labels)

    @property
    def keys(self) -> tuple[NodeKey, ...]:
        keys: list[NodeKey] = list(self.internal)
        if self.terminals:
            keys = [START, *keys, END]
        return tuple(keys)

    @property
    def nodes(self) -> tuple[WorkflowNode, ...]:
        inner = tuple(WorkflowNode(i, label) for i, label in self.labels)
        if self.terminals:
            return (_START_NODE, *inner, _END_NODE)
        return inner

    @property
    def internal_edges(self) -> frozenset[Edge]:
        return frozenset(e for e in self.edges if e[0] not in TERMINALS and e[1] not in TERMINALS)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges, key=lambda e: (node_sort_key(e[0]), node_sort_key(e[1])))

    @cached_property
    def successors(self) -> dict[NodeKey, tuple[NodeKey, ...]]:
        succ: dict[NodeKey, list[NodeKey]] = {k: [] for k in self.keys}
        for a, b in self.edges:
            succ[a].append(b)
        return {k: tuple(sorted(v, key=node_sort_key)) for k, v in succ.items()}

    @cached_property
    def predecessors(self) -> dict[NodeKey, tuple[NodeKey, ...]]:
        pred: dict[NodeKey, list[NodeKey]] = {k: [] for k in self.keys}
        for a, b in self.edges:
            pred[b].append(a)
        return {k: tuple(sorted(v, key=node_sort_key)) for k, v in pred.items()}

    def __len__(self) -> int:
        return len(self.labels)

    def __contains__(self, key: object) -> bool:
        return key in self.keys


def _find_cycle_free(keys: Sequence[NodeKey], edges: Iterable[Edge]) -> bool:
    indeg = {k: 0 for k in keys}
    succ: dict[NodeKey, list[NodeKey]] = {k: [] for k in keys}
    for a, b in edges:
        succ[a].append(b)
        indeg[b] += 1
    ready = [k for k in keys if indeg[k] == 0]
    seen = 0
    while ready:
        k = ready.pop()
        seen += 1
        for s in succ[k]:
            indeg[s] -= 1
            if indeg[s] == 0:
                ready.append(s)
    return seen == len(keys)


def build_graph(
    nodes: Iterable[tuple[int, str]],
    edges: Iterable[Sequence[object]],
    *,
    check_acyclic: bool = True,
) -> WorkflowGraph:
    """Validate and assemble a :class:`WorkflowGraph`.

    ``nodes`` are ``(index, label)`` pairs; ``edges`` are pairs whose
    endpoints are declared indices or ``START``/``END`` (any case).  The
    terminals are always materialized.  Duplicate edges collapse.

    With ``check_acyclic=False`` cycles and self-loops are tolerated; this
    is used for model predictions, which are scored as authored.
    """
    labels: dict[int, str] = {}
    for index, label in nodes:
        if isinstance(index, bool) or not isinstance(index, int):
            raise InvalidGraphError(f"node index must be an integer, got {index!r}")
        if index in labels:
            raise DuplicateIndexError(f"node index {index} declared twice")
        WorkflowNode(index, label)
        labels[index] = label

    edge_set: set[Edge] = set()
    for pair in edges:
        if len(pair) != 2:
            raise InvalidGraphError(f"edge must have two endpoints, got {pair!r}")
        a, b = (_normalize_endpoint(x) for x in pair)
        for x in (a, b):
            if x not in TERMINALS and x not in labels:
                raise DanglingEdgeError(f"edge {(a, b)} references undeclared node {x}")
        if b == START or a == END:
            raise InvalidGraphError(f"edge {(a, b)} points into START or out of END")
        if check_acyclic and a == b:
            raise CycleError(f"self-loop on node {a}")
        edge_set.add((a, b))

    ordered = tuple(sorted(labels.items()))
    graph = WorkflowGraph(ordered, frozenset(edge_set))
    if check_acyclic and not _find_cycle_free(graph.keys, edge_set):
        raise CycleError("workflow graph contains a directed cycle")
    return graph


def strip_terminals(g: WorkflowGraph) -> WorkflowGraph:
    """Induced subgraph on the internal nodes."""
    return WorkflowGraph(g.labels, g.internal_edges, terminals=False)


def _internal_structure(g: WorkflowGraph) -> tuple[dict[int, int], dict[int, list[int]]]:
    indeg = {i: 0 for i in g.internal}
    succ: dict[int, list[int]] = {i: [] for i in g.internal}
    for a, b in g.internal_edges:
        if a == b:
            raise CycleError(f"self-loop on node {a}")
        succ[a].append(b)
        indeg[b] += 1
    for v in succ.values():
        v.sort()
    return indeg, succ


def deterministic_topo_sort(g: WorkflowGraph) -> NodeChain:
    """Kahn's algorithm removing the smallest ready index first.

    The result is the lexicographically smallest topological order of the
    internal nodes.
    """
    indeg, succ = _internal_structure(g)
    ready = [i for i, d in indeg.items() if d == 0]
    heapq.heapify(ready)
    order: list[int] = []
    while ready:
        i = heapq.heappop(ready)
        order.append(i)
        for s in succ[i]:
            indeg[s] -= 1
            if indeg[s] == 0:
                heapq.heappush(ready, s)
    if len(order) != len(indeg):
        raise CycleError("workflow graph contains a directed cycle")
    return tuple(order)


def iter_topo_orders(g: WorkflowGraph) -> Iterator[NodeChain]:
    """Yield every topological order of the internal nodes, lexicographically."""
    indeg, succ = _internal_structure(g)
    n = len(indeg)
    # fail fast on cycles; otherwise the backtracking simply yields nothing
    deterministic_topo_sort(g)
    order: list[int] = []
    ready = sorted(i for i, d in indeg.items() if d == 0)

    def walk(ready: list[int]) -> Iterator[NodeChain]:
        if len(order) == n:
            yield tuple(order)
            return
        for pos, i in enumerate(ready):
            rest = ready[:pos] + ready[pos + 1 :]
            released = []
            for s in succ[i]:
                indeg[s] -= 1
                if indeg[s] == 0:
                    released.append(s)
            order.append(i)
            yield from walk(sorted(rest + released))
            order.pop()
            for s in succ[i]:
                indeg[s] += 1

    yield from walk(ready)


def enumerate_topo_orders(g: WorkflowGraph, cap: int | None = DEFAULT_TOPO_CAP) -> list[NodeChain]:
    """The first ``cap`` topological orders in lexicographic order.

    ``cap=None`` enumerates every order.
    """
    if cap is not None and cap < 1:
        raise ValueError("cap must be >= 1")
    out: list[NodeChain] = []
    for order in iter_topo_orders(g):
        out.append(order)
        if cap is not None and len(out) >= cap:
            break
    return out


def count_topo_orders(g: WorkflowGraph, limit: int = 101) -> int:
    """Number of topological orders, saturating at ``limit``."""
    if limit < 1:
        raise ValueError("limit must be >= 1")
    count = 0
    for _ in iter_topo_orders(g):
        count += 1
        if count >= limit:
            break
    return count
