"""Quality-control filters for gold workflows."""

from __future__ import annotations

from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field
from typing import Optional

from .core import WorkflowGraph, deterministic_topo_sort
from .errors import CycleError, IndexMismatchError
from .parser import GoldSample

__all__ = [
    "REASONS",
    "QcVerdict",
    "QcResult",
    "check_topo_consistency",
    "filter_complexity",
    "run_qc",
]

REASONS = ("ok", "topo-mismatch", "too-simple", "external-reject")


@dataclass(frozen=True)
class QcVerdict:
    keep: bool
    reason: str = "ok"

    def __post_init__(self) -> None:
        if self.reason not in REASONS:
            raise ValueError(f"unknown reason {self.reason!r}")


def check_topo_consistency(g: WorkflowGraph, chain: Sequence[int]) -> bool:
    """True iff the ascending-index topological sort reproduces ``chain``."""
    if sorted(chain) != sorted(g.internal) or len(set(chain)) != len(chain):
        raise IndexMismatchError(f"chain {list(chain)} does not cover nodes {list(g.internal)}")
    return deterministic_topo_sort(g) == tuple(chain)


def filter_complexity(g: WorkflowGraph) -> QcVerdict:
    # internal nodes, but all edges including the START/END ones
    if len(g) <= 1 or len(g.edges) <= 1:
        return QcVerdict(False, "too-simple")
    return QcVerdict(True)


@dataclass
class QcResult:
    kept: list[GoldSample] = field(default_factory=list)
    discarded: list[tuple[GoldSample, str]] = field(default_factory=list)
    total: int = 0

    @property
    def rates(self) -> dict[str, float]:
        """Fraction of all input samples discarded by each filter."""
        out = {r: 0.0 for r in REASONS if r != "ok"}
        if self.total:
            for _, reason in self.discarded:
                out[reason] += 1 / self.total
        return out

    def report_records(self) -> list[dict]:
        return [{"id": s.id, "reason": reason} for s, reason in self.discarded]


def _verdict(
    sample: GoldSample, external: Optional[Callable[[GoldSample], bool]]
) -> QcVerdict:
    verdict = filter_complexity(sample.gold_graph)
    if not verdict.keep:
        return verdict
    try:
        consistent = check_topo_consistency(sample.gold_graph, sample.gold_chain)
    except (IndexMismatchError, CycleError):
        consistent = False
    if not consistent:
        return QcVerdict(False, "topo-mismatch")
    if external is not None and not external(sample):
        return QcVerdict(False, "external-reject")
    return QcVerdict(True)


def run_qc(
    samples: Iterable[GoldSample],
    external_predicate: Optional[Callable[[GoldSample], bool]] = None,
) -> QcResult:
    """Apply the complexity filter, the topological check, then ``external_predicate``.

    A sample is attributed to the first filter that rejects it.  The
    optional predicate returns ``True`` to keep a sample; it is where a
    retrieval-based node check can be plugged in.
    """
    result = QcResult()
    for sample in samples:
        result.total += 1
        verdict = _verdict(sample, external_predicate)
        if verdict.keep:
            result.kept.append(sample)
        else:
            result.discarded.append((sample, verdict.reason))
    return result
