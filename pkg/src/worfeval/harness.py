"""End-to-end evaluation: join gold with predictions, score, aggregate."""

from __future__ import annotations

import csv
import io
import json
import os
import statistics
from collections import Counter
from collections.abc import Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Optional

from .chain_eval import ChainScore, score_chain
from .core import DEFAULT_TOPO_CAP, build_graph, count_topo_orders
from .errors import JoinError
from .graph_eval import GraphScore, score_graph
from .matcher import max_weight_matching
from .parser import SCENARIOS, GoldSample, Prediction, load_dataset, load_predictions
from .similarity import DEFAULT_BETA, build_similarity_matrix, make_provider

__all__ = [
    "EvalConfig",
    "SampleResult",
    "ScenarioSummary",
    "Report",
    "score_sample",
    "evaluate",
    "evaluate_samples",
    "aggregate",
    "dataset_stats",
    "sample_stats",
    "results_to_jsonl",
    "SCENARIO_TITLES",
    "TOPO_BUCKETS",
]

SCENARIO_TITLES = {
    "function_call": "Function Call",
    "problem_solving": "Problem-Solving",
    "embodied": "Embodied",
    "open_grounded": "Open-Grounded",
    "held_out": "Held-Out",
}
TOPO_BUCKETS = (5, 10, 20, 50, 100)


@dataclass(frozen=True)
class EvalConfig:
    beta: float = DEFAULT_BETA
    topo_cap: Optional[int] = DEFAULT_TOPO_CAP
    provider: str = "token_cosine"
    include_terminals: bool = False
    workers: int = 1
    strict: bool = False
    sim_file: Optional[str] = None
    embed_file: Optional[str] = None
    endpoint: Optional[str] = None
    timeout: float = 30.0
    retries: int = 2

    def snapshot(self) -> dict:
        """Parameters that affect scores; worker count and paths are excluded."""
        return {
            "beta": self.beta,
            "topo_cap": self.topo_cap,
            "provider": self.provider,
            "include_terminals": self.include_terminals,
            "strict": self.strict,
        }

    def make_provider(self):
        return make_provider(
            self.provider,
            sim_file=self.sim_file,
            embed_file=self.embed_file,
            endpoint=self.endpoint,
            timeout=self.timeout,
            retries=self.retries,
        )


@dataclass(frozen=True)
class SampleResult:
    id: str
    scenario: str
    chain: ChainScore
    graph: GraphScore
    format_error: bool = False
    missing: bool = False
    error: Optional[str] = None

    def to_record(self) -> dict:
        return {
            "id": self.id,
            "scenario": self.scenario,
            "f1_chain": self.chain.f1,
            "p_chain": self.chain.precision,
            "r_chain": self.chain.recall,
            "l": self.chain.l,
            "orders_used": self.chain.orders_used,
            "f1_graph": self.graph.f1,
            "p_graph": self.graph.precision,
            "r_graph": self.graph.recall,
            "k": self.graph.k,
            "mcis": [[g, p] for g, p in self.graph.certificate],
            "format_error": self.format_error,
            "missing": self.missing,
            "error": self.error,
        }


def score_sample(
    sample: GoldSample, prediction: Optional[Prediction], provider, config: EvalConfig
) -> SampleResult:
    """Parse, match and score one prediction against its gold workflow."""
    if prediction is None:
        return SampleResult(sample.id, sample.scenario, ChainScore.zero(), GraphScore.zero(), missing=True)
    if prediction.format_error is not None:
        return SampleResult(
            sample.id,
            sample.scenario,
            ChainScore.zero(),
            GraphScore.zero(),
            format_error=True,
            error=prediction.format_error.category,
        )
    nodes, edges = prediction.parsed
    pred_graph = build_graph(nodes, edges, check_acyclic=False)
    gold = sample.gold_graph
    S = build_similarity_matrix(
        [gold.label_of[i] for i in sample.gold_chain],
        [label for _, label in nodes],
        provider,
        config.beta,
        sample_id=sample.id,
        gold_ids=sample.gold_chain,
        pred_ids=[i for i, _ in nodes],
    )
    corr = max_weight_matching(S)
    chain = score_chain(
        gold, prediction.chain, corr, config.topo_cap, include_terminals=config.include_terminals
    )
    graph = score_graph(gold, pred_graph, len(nodes), corr, include_terminals=config.include_terminals)
    return SampleResult(sample.id, sample.scenario, chain, graph)


_worker_state: dict = {}


def _init_worker(config: EvalConfig) -> None:
    _worker_state["config"] = config
    _worker_state["provider"] = config.make_provider()


def _score_job(job: tuple[GoldSample, Optional[Prediction]]) -> SampleResult:
    sample, pred = job
    return score_sample(sample, pred, _worker_state["provider"], _worker_state["config"])


def evaluate_samples(
    samples: Sequence[GoldSample], predictions: Iterable[Prediction], config: EvalConfig, provider=None
) -> list[SampleResult]:
    """Score predictions against in-memory gold samples, in gold order.

    Gold samples without a prediction score zero and are flagged
    ``missing``.  A prediction whose id is not in the gold set raises
    :class:`JoinError`.
    """
    gold_ids = {s.id for s in samples}
    by_id: dict[str, Prediction] = {}
    for p in predictions:
        if p.id not in gold_ids:
            raise JoinError(f"prediction {p.id!r} has no gold sample")
        by_id[p.id] = p
    jobs = [(s, by_id.get(s.id)) for s in samples]
    if config.workers <= 1 or len(jobs) <= 1:
        provider = provider or config.make_provider()
        return [score_sample(s, p, provider, config) for s, p in jobs]
    chunk = max(1, len(jobs) // (config.workers * 4))
    with ProcessPoolExecutor(config.workers, initializer=_init_worker, initargs=(config,)) as pool:
        return list(pool.map(_score_job, jobs, chunksize=chunk))


def evaluate(
    gold_path: str | os.PathLike, pred_path: str | os.PathLike, config: EvalConfig = EvalConfig()
) -> list[SampleResult]:
    samples = load_dataset(gold_path)
    predictions = load_predictions(pred_path, strict=config.strict)
    return evaluate_samples(samples, predictions, config)


@dataclass(frozen=True)
class ScenarioSummary:
    scenario: str
    samples: int
    f1_chain: float
    f1_graph: float


@dataclass
class Report:
    scenarios: list[ScenarioSummary] = field(default_factory=list)
    macro_chain: float = 0.0
    macro_graph: float = 0.0
    micro_chain: float = 0.0
    micro_graph: float = 0.0
    samples: int = 0
    format_errors: int = 0
    missing: int = 0
    config: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_markdown(self) -> str:
        def pct(x: float) -> str:
            return f"{100 * x:.2f}"

        titles = [SCENARIO_TITLES[s.scenario] for s in self.scenarios] + ["Average"]
        header = "| |" + "".join(f" {t} f1_chain | {t} f1_graph |" for t in titles)
        rule = "|---|" + "---:|---:|" * len(titles)
        row = "| WorfEval |" + "".join(
            f" {pct(s.f1_chain)} | {pct(s.f1_graph)} |" for s in self.scenarios
        ) + f" {pct(self.macro_chain)} | {pct(self.macro_graph)} |"
        lines = ["# WorfEval report", "", header, rule, row, ""]
        lines += ["| Scenario | Samples | f1_chain | f1_graph |", "|---|---:|---:|---:|"]
        lines += [
            f"| {SCENARIO_TITLES[s.scenario]} | {s.samples} | {pct(s.f1_chain)} | {pct(s.f1_graph)} |"
            for s in self.scenarios
        ]
        lines += [
            f"| Average (macro) | {self.samples} | {pct(self.macro_chain)} | {pct(self.macro_graph)} |",
            f"| Average (micro) | {self.samples} | {pct(self.micro_chain)} | {pct(self.micro_graph)} |",
            "",
            f"- samples: {self.samples}",
            f"- format errors: {self.format_errors}",
            f"- missing predictions: {self.missing}",
            "- config: " + ", ".join(f"{k}={v}" for k, v in self.config.items()),
            "",
        ]
        return "\n".join(lines)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["scenario", "samples", "f1_chain", "f1_graph"])
        for s in self.scenarios:
            writer.writerow([s.scenario, s.samples, repr(s.f1_chain), repr(s.f1_graph)])
        writer.writerow(["average_macro", self.samples, repr(self.macro_chain), repr(self.macro_graph)])
        writer.writerow(["average_micro", self.samples, repr(self.micro_chain), repr(self.micro_graph)])
        return buf.getvalue()


def aggregate(results: Sequence[SampleResult], config: Optional[dict] = None) -> Report:
    """Per-scenario means, their unweighted mean, and the per-sample mean."""
    report = Report(config=dict(config or {}))
    report.samples = len(results)
    report.format_errors = sum(r.format_error for r in results)
    report.missing = sum(r.missing for r in results)
    if not results:
        return report
    present = [s for s in SCENARIOS if any(r.scenario == s for r in results)]
    present += sorted({r.scenario for r in results} - set(present))
    for scen in present:
        rs = [r for r in results if r.scenario == scen]
        report.scenarios.append(
            ScenarioSummary(
                scen,
                len(rs),
                statistics.fmean(r.chain.f1 for r in rs),
                statistics.fmean(r.graph.f1 for r in rs),
            )
        )
    report.macro_chain = statistics.fmean(s.f1_chain for s in report.scenarios)
    report.macro_graph = statistics.fmean(s.f1_graph for s in report.scenarios)
    report.micro_chain = statistics.fmean(r.chain.f1 for r in results)
    report.micro_graph = statistics.fmean(r.graph.f1 for r in results)
    return report


def results_to_jsonl(results: Sequence[SampleResult], report: Report) -> str:
    lines = [json.dumps(r.to_record(), sort_keys=True) for r in results]
    lines.append(json.dumps({"summary": report.to_dict()}, sort_keys=True))
    return "\n".join(lines) + "\n"


def dataset_stats(gold_path: str | os.PathLike) -> dict:
    return sample_stats(load_dataset(gold_path, validate=False))


def sample_stats(samples: Sequence[GoldSample]) -> dict:
    """Topological-order count buckets (percent) and internal node-count statistics."""
    n = len(samples)
    counts = [count_topo_orders(s.gold_graph, limit=TOPO_BUCKETS[-1] + 1) for s in samples]
    sizes = [len(s.gold_graph) for s in samples]
    buckets = {f"<={b}": (100.0 * sum(c <= b for c in counts) / n if n else 0.0) for b in TOPO_BUCKETS}
    return {
        "samples": n,
        "topo_order_buckets": buckets,
        "mean_nodes": statistics.fmean(sizes) if sizes else 0.0,
        "median_nodes": statistics.median(sizes) if sizes else 0.0,
        "node_histogram": {str(k): v for k, v in sorted(Counter(sizes).items())},
    }
