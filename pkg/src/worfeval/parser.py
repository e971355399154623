"""Workflow text format and line-delimited dataset files.

Workflow text looks like::

    Node:
    1: go to fridge
    2: open fridge
    Edge:
    (START, 1) (1, 2) (2, END)

The order in which nodes appear is the predicted node chain.
"""

from __future__ import annotations

import json
import re
from collections.abc import Sequence
from dataclasses import dataclass
from os import PathLike
from pathlib import Path
from typing import Any, Optional, Union

from .core import END, START, Edge, NodeChain, NodeKey, WorkflowGraph, build_graph, deterministic_topo_sort
from .errors import FormatError, InvalidGraphError, SchemaError

__all__ = [
    "SCENARIOS",
    "GoldSample",
    "Prediction",
    "ParsedWorkflow",
    "parse_workflow_text",
    "serialize_workflow",
    "load_dataset",
    "load_predictions",
    "dump_records",
    "sample_to_record",
]

SCENARIOS = ("function_call", "problem_solving", "embodied", "open_grounded", "held_out")

ParsedWorkflow = tuple[list[tuple[int, str]], list[Edge]]
PathType = Union[str, "PathLike[str]"]

_NODE_HEADER = re.compile(r"^\W*node(?:s)?\W*:\s*(.*)$", re.IGNORECASE)
_EDGE_HEADER = re.compile(r"^\W*edge(?:s)?\W*:\s*(.*)$", re.IGNORECASE)
_STRICT_NODE = re.compile(r"^(\d+):\s*(.*\S)\s*$")
_LENIENT_NUMBERED = re.compile(r"^(?:[-*+•]\s*)?(\d+)\s*[:.)]\s*(.*\S)\s*$")
_LENIENT_LETTERED = re.compile(r"^(?:[-*+•]\s*)?[A-Za-z][.)]\s+(.*\S)\s*$")
_LENIENT_BULLET = re.compile(r"^[-*+•]\s*(.*\S)\s*$")
_PAIR = re.compile(r"\(([^()]*)\)")
_STRICT_EDGE_LINE = re.compile(r"^(\s*\(\s*(?:\d+|START|END)\s*,\s*(?:\d+|START|END)\s*\))+\s*$")


def _header_rest(pattern: re.Pattern[str], line: str) -> str:
    rest = pattern.match(line).group(1).strip()
    return rest if any(ch.isalnum() for ch in rest) else ""


def _parse_endpoint(token: str, strict: bool) -> NodeKey:
    token = token.strip()
    if token.isdigit():
        return int(token)
    upper = token.upper()
    if upper in (START, END) and (not strict or token == upper):
        return upper
    raise FormatError("bad-edge-token", f"endpoint {token!r}")


def _parse_node_line(line: str, position: int, strict: bool) -> tuple[int, str]:
    if strict:
        m = _STRICT_NODE.match(line)
        if not m:
            raise FormatError("missing-node-section", f"malformed node line {line!r}")
        return int(m.group(1)), m.group(2)
    m = _LENIENT_NUMBERED.match(line)
    if m:
        return int(m.group(1)), m.group(2)
    for pattern in (_LENIENT_LETTERED, _LENIENT_BULLET):
        m = pattern.match(line)
        if m:
            return position, m.group(1)
    return position, line.strip()


def parse_workflow_text(text: str, *, strict: bool = False) -> ParsedWorkflow:
    """Parse ``Node:``/``Edge:`` workflow text into nodes and edges.

    Returns ``(nodes, edges)`` with nodes in textual order.  Lenient mode
    (the default) also accepts ``N.`` numbering, bullets, lettered or
    unnumbered node lines (numbered by position), and case-insensitive
    terminals.  Raises :class:`FormatError` on anything it cannot read.
    """
    if not isinstance(text, str):
        raise FormatError("missing-node-section", "input is not text")
    lines = text.replace("\r\n", "\n").replace("\r", "\n").split("\n")

    node_start = edge_start = None
    for i, line in enumerate(lines):
        if node_start is None and _NODE_HEADER.match(line):
            node_start = i
        elif node_start is not None and _EDGE_HEADER.match(line):
            edge_start = i
            break
    if node_start is None:
        raise FormatError("missing-node-section")
    if edge_start is None:
        raise FormatError("missing-edge-section")

    node_lines = [ln for ln in lines[node_start + 1 : edge_start] if ln.strip()]
    trailing = _header_rest(_NODE_HEADER, lines[node_start])
    if trailing and not strict:
        node_lines.insert(0, trailing)
    if not node_lines:
        raise FormatError("missing-node-section", "no node lines")

    nodes: list[tuple[int, str]] = []
    seen: set[int] = set()
    for position, line in enumerate(node_lines, start=1):
        index, label = _parse_node_line(line, position, strict)
        if index < 1:
            raise FormatError("missing-node-section", f"node index {index} is not positive")
        if index in seen:
            raise FormatError("duplicate-index", f"node {index}")
        seen.add(index)
        nodes.append((index, label))

    edge_text = "\n".join(
        [_header_rest(_EDGE_HEADER, lines[edge_start])] + lines[edge_start + 1 :]
    )
    if strict:
        body = [ln for ln in edge_text.split("\n") if ln.strip()]
        if not body or not all(_STRICT_EDGE_LINE.match(ln) for ln in body):
            raise FormatError("bad-edge-token", "edge section is not a list of pairs")
    leftover = _PAIR.sub(" ", edge_text)
    if leftover.strip(" \t\n,;"):
        raise FormatError("bad-edge-token", f"unexpected text {leftover.strip()[:40]!r}")
    pairs = _PAIR.findall(edge_text)
    if not pairs:
        raise FormatError("missing-edge-section", "no edge pairs")

    edges: list[Edge] = []
    for inner in pairs:
        parts = inner.split(",")
        if len(parts) != 2:
            raise FormatError("bad-edge-token", f"pair ({inner})")
        a, b = (_parse_endpoint(p, strict) for p in parts)
        if b == START or a == END:
            raise FormatError("bad-edge-token", f"pair ({inner}) runs against the terminals")
        for x in (a, b):
            if x not in (START, END) and x not in seen:
                raise FormatError("undefined-node-reference", f"node {x}")
        edges.append((a, b))
    return nodes, edges


def _fmt_key(key: NodeKey) -> str:
    return str(key)


def serialize_workflow(g: WorkflowGraph, chain: Optional[Sequence[int]] = None) -> str:
    """Canonical text for ``g`` with nodes listed in ``chain`` order."""
    order = list(chain) if chain is not None else list(g.internal)
    node_block = "\n".join(f"{i}: {g.label_of[i]}" for i in order)
    edge_block = " ".join(f"({_fmt_key(a)}, {_fmt_key(b)})" for a, b in g.sorted_edges())
    return f"Node:\n{node_block}\nEdge:\n{edge_block}"


@dataclass(frozen=True)
class GoldSample:
    id: str
    scenario: str
    task: str
    action_list: tuple[str, ...]
    gold_graph: WorkflowGraph
    gold_chain: NodeChain


@dataclass(frozen=True)
class Prediction:
    id: str
    raw_text: Optional[str] = None
    parsed: Optional[ParsedWorkflow] = None
    format_error: Optional[FormatError] = None

    @property
    def chain(self) -> NodeChain:
        return tuple(i for i, _ in self.parsed[0]) if self.parsed else ()


def _read_records(path: PathType) -> list[tuple[int, Any]]:
    records = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                records.append((lineno, json.loads(line)))
            except json.JSONDecodeError as exc:
                raise SchemaError(lineno, "<record>", f"invalid JSON: {exc.msg}") from exc
    return records


def _require(record: Any, lineno: int, key: str, kind: type | tuple[type, ...]) -> Any:
    if not isinstance(record, dict):
        raise SchemaError(lineno, "<record>", "record is not an object")
    if key not in record:
        raise SchemaError(lineno, key, "missing")
    value = record[key]
    if not isinstance(value, kind):
        raise SchemaError(lineno, key, f"expected {getattr(kind, '__name__', kind)}")
    return value


def _structured(record: dict, lineno: int) -> tuple[list[tuple[int, str]], list[list]]:
    labels = _require(record, lineno, "nodes", list)
    if not all(isinstance(x, str) and x for x in labels):
        raise SchemaError(lineno, "nodes", "every node must be a non-empty string")
    edges = _require(record, lineno, "edges", list)
    for e in edges:
        if not (isinstance(e, list) and len(e) == 2):
            raise SchemaError(lineno, "edges", f"bad edge {e!r}")
    return list(enumerate(labels, start=1)), edges


def _sample_from_record(record: Any, lineno: int, validate: bool) -> GoldSample:
    sid = _require(record, lineno, "id", str)
    scenario = _require(record, lineno, "scenario", str)
    if scenario not in SCENARIOS:
        raise SchemaError(lineno, "scenario", f"unknown scenario {scenario!r}")
    task = record.get("task", "")
    actions = record.get("action_list", [])
    if not isinstance(task, str):
        raise SchemaError(lineno, "task", "expected str")
    if not isinstance(actions, list) or not all(isinstance(a, str) for a in actions):
        raise SchemaError(lineno, "action_list", "expected array of strings")
    nodes, edges = _structured(record, lineno)
    try:
        graph = build_graph(nodes, edges)
    except InvalidGraphError as exc:
        raise SchemaError(lineno, "edges", str(exc)) from exc
    chain = tuple(i for i, _ in nodes)
    if validate:
        if len(graph) < 2 or len(graph.edges) < 2:
            raise SchemaError(lineno, "nodes", "workflow needs at least 2 nodes and 2 edges")
        if deterministic_topo_sort(graph) != chain:
            raise SchemaError(lineno, "edges", "deterministic topological order differs from node chain")
    return GoldSample(sid, scenario, task, tuple(actions), graph, chain)


def load_dataset(path: PathType, *, validate: bool = True) -> list[GoldSample]:
    """Load gold samples from a line-delimited JSON file.

    With ``validate`` (the default) records must already satisfy the
    quality-control guarantees; pass ``validate=False`` to load a raw pool
    for :func:`worfeval.qc.run_qc`.
    """
    samples = []
    ids: set[str] = set()
    for lineno, record in _read_records(path):
        sample = _sample_from_record(record, lineno, validate)
        if sample.id in ids:
            raise SchemaError(lineno, "id", f"duplicate id {sample.id!r}")
        ids.add(sample.id)
        samples.append(sample)
    return samples


def _prediction_from_record(record: Any, lineno: int, strict: bool) -> Prediction:
    pid = _require(record, lineno, "id", str)
    raw = record.get("raw_text")
    if raw is not None:
        if not isinstance(raw, str):
            raise SchemaError(lineno, "raw_text", "expected str")
        try:
            return Prediction(pid, raw, parse_workflow_text(raw, strict=strict))
        except FormatError as exc:
            return Prediction(pid, raw, format_error=exc)
    if "nodes" not in record and "edges" not in record:
        raise SchemaError(lineno, "raw_text", "record needs raw_text or nodes/edges")
    nodes, edges = _structured(record, lineno)
    try:
        graph = build_graph(nodes, edges, check_acyclic=False)
    except InvalidGraphError as exc:
        category = "undefined-node-reference" if "undeclared" in str(exc) else "bad-edge-token"
        return Prediction(pid, format_error=FormatError(category, str(exc)))
    return Prediction(pid, parsed=(nodes, graph.sorted_edges()))


def load_predictions(path: PathType, *, strict: bool = False) -> list[Prediction]:
    """Load predictions; unparseable workflows become ``format_error`` entries."""
    return [_prediction_from_record(rec, lineno, strict) for lineno, rec in _read_records(path)]


def dump_records(records: Sequence[dict], path: PathType) -> None:
    Path(path).write_text("".join(json.dumps(r, ensure_ascii=False) + "\n" for r in records), encoding="utf-8")


def sample_to_record(sample: GoldSample) -> dict:
    g = sample.gold_graph
    return {
        "id": sample.id,
        "scenario": sample.scenario,
        "task": sample.task,
        "action_list": list(sample.action_list),
        "nodes": [g.label_of[i] for i in sample.gold_chain],
        "edges": [[a, b] for a, b in g.sorted_edges()],
    }
