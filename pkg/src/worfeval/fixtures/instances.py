"""Hand-built workflows with known scores."""

from __future__ import annotations

from ..core import END, START, WorkflowGraph, build_graph
from ..parser import GoldSample

__all__ = [
    "CASE_A_GOLD_NODES",
    "CASE_A_PRED_TEXT",
    "CASE_B_GOLD_NODES",
    "CASE_B_PRED_TEXT",
    "case_a_gold",
    "case_b_gold",
    "diamond",
    "linear",
    "parallel",
    "gold_sample",
    "DIAMOND_LABELS",
]

CASE_A_GOLD_NODES = [
    "Analyze access_logs.txt for potential malicious activity using machine learning.",
    "Retrieve network policy for library 'wscDOqa63Giq' regarding internet access.",
    "Get digital PR metrics for 'Beauty Revolution' campaign from '2022-01-01' to '2022-12-31' "
    "on Twitter, Facebook, and Instagram.",
]

CASE_A_PRED_TEXT = """Node:
a. Analyze the access_logs.txt file for potential malicious activity using a machine learning algorithm.
b. Retrieve the network policy for the library with ID 'wscDOqa63Giq' regarding internet access.
c. Get the digital PR metrics for the 'Beauty Revolution' campaign from '2022-01-01' to '2022-12-31' on Twitter, Facebook, and Instagram.
Edge:
(START, 1) (1, 2) (1, 3) (2, END) (3, END)"""

CASE_B_GOLD_NODES = [
    "go to where the potato is located",
    "take potato from where it is located",
    "go to fridge",
    "cool potato with fridge",
    "go to garbagecan",
    "put potato in/on garbagecan.",
]

CASE_B_PRED_TEXT = """Node:
Go to fridge 1
Take cool potato from fridge 1
Go to garbagecan 1
Put potato in garbagecan 1
Edge:
(START, 1) (1, 2) (2, 3) (3, 4) (4, END)"""

DIAMOND_LABELS = [
    "search flights to Paris",
    "book a hotel near the venue",
    "reserve a rental car",
    "send the itinerary to the user",
]


def _nodes(labels):
    return list(enumerate(labels, start=1))


def case_a_gold() -> WorkflowGraph:
    """Three independent subtasks, each wired START -> i -> END."""
    return build_graph(
        _nodes(CASE_A_GOLD_NODES),
        [(START, 1), (START, 2), (START, 3), (1, END), (2, END), (3, END)],
    )


def case_b_gold() -> WorkflowGraph:
    edges = [(START, 1)] + [(i, i + 1) for i in range(1, 6)] + [(6, END)]
    return build_graph(_nodes(CASE_B_GOLD_NODES), edges)


def diamond(labels=None) -> WorkflowGraph:
    """1 -> {2, 3} -> 4."""
    return build_graph(
        _nodes(labels or DIAMOND_LABELS),
        [(START, 1), (1, 2), (1, 3), (2, 4), (3, 4), (4, END)],
    )


def linear(labels) -> WorkflowGraph:
    n = len(labels)
    edges = [(START, 1)] + [(i, i + 1) for i in range(1, n)] + [(n, END)]
    return build_graph(_nodes(labels), edges)


def parallel(labels) -> WorkflowGraph:
    n = len(labels)
    return build_graph(_nodes(labels), [(START, i) for i in range(1, n + 1)] + [(i, END) for i in range(1, n + 1)])


def gold_sample(sid: str, scenario: str, g: WorkflowGraph, task: str = "") -> GoldSample:
    return GoldSample(sid, scenario, task, (), g, g.internal)
