"""Command-line entry point: ``worfeval eval|qc|stats|critpath``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from .core import DEFAULT_TOPO_CAP
from .errors import WorfEvalError
from .harness import EvalConfig, aggregate, dataset_stats, evaluate, results_to_jsonl
from .parser import dump_records, load_dataset
from .qc import run_qc
from .schedule import critical_path, load_durations, speedup
from .similarity import DEFAULT_BETA

PROVIDER_FLAGS = {
    "exact": "exact",
    "token": "token_cosine",
    "embed-file": "embedding_vectors",
    "embed-service": "embedding_service",
    "sim-file": "precomputed_matrix",
}


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _cmd_eval(args: argparse.Namespace) -> int:
    config = EvalConfig(
        beta=args.beta,
        topo_cap=args.topo_cap,
        provider=PROVIDER_FLAGS[args.provider],
        include_terminals=args.include_terminals,
        workers=args.workers,
        strict=args.strict,
        sim_file=args.sim_file,
        embed_file=args.embed_file,
        endpoint=args.embed_endpoint,
        timeout=args.timeout,
        retries=args.retries,
    )
    results = evaluate(args.gold, args.pred, config)
    report = aggregate(results, config.snapshot())
    if args.report == "md":
        text = report.to_markdown()
    elif args.report == "csv":
        text = report.to_csv()
    else:
        text = results_to_jsonl(results, report)
    _emit(text, args.out)
    return 0


def _cmd_qc(args: argparse.Namespace) -> int:
    result = run_qc(load_dataset(args.gold, validate=False))
    dump_records(result.report_records(), args.out)
    summary = {"total": result.total, "kept": len(result.kept), "rates": result.rates}
    sys.stdout.write(json.dumps(summary, sort_keys=True) + "\n")
    return 0


def _cmd_stats(args: argparse.Namespace) -> int:
    sys.stdout.write(json.dumps(dataset_stats(args.gold), indent=2) + "\n")
    return 0


def _cmd_critpath(args: argparse.Namespace) -> int:
    durations = load_durations(args.durations)
    lines = []
    for sample in load_dataset(args.gold, validate=False):
        if sample.id not in durations:
            continue
        d = durations[sample.id]
        length, path = critical_path(sample.gold_graph, d)
        total = sum(d[i] for i in sample.gold_graph.internal)
        rec = {"id": sample.id, "critical_path": length, "path": path, "total": total}
        rec["speedup"] = speedup(sample.gold_graph, d) if total > 0 else None
        lines.append(json.dumps(rec, sort_keys=True))
    _emit("".join(line + "\n" for line in lines), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="worfeval", description="Score agent-generated workflows.")
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="score predictions against gold workflows")
    ev.add_argument("--gold", required=True)
    ev.add_argument("--pred", required=True)
    ev.add_argument("--beta", type=float, default=DEFAULT_BETA)
    ev.add_argument("--topo-cap", type=int, default=DEFAULT_TOPO_CAP)
    ev.add_argument("--provider", choices=sorted(PROVIDER_FLAGS), default="token")
    ev.add_argument("--embed-endpoint", default=None)
    ev.add_argument("--embed-file", default=None)
    ev.add_argument("--sim-file", default=None)
    ev.add_argument("--timeout", type=float, default=30.0)
    ev.add_argument("--retries", type=int, default=2)
    ev.add_argument("--include-terminals", action="store_true")
    ev.add_argument("--strict", action="store_true", help="strict workflow text parsing")
    ev.add_argument("--workers", type=int, default=1)
    ev.add_argument("--report", choices=("md", "csv", "jsonl"), default="md")
    ev.add_argument("--out", default=None)
    ev.set_defaults(func=_cmd_eval)

    qc = sub.add_parser("qc", help="apply quality-control filters to a gold pool")
    qc.add_argument("--gold", required=True)
    qc.add_argument("--out", required=True)
    qc.set_defaults(func=_cmd_qc)

    st = sub.add_parser("stats", help="topological-order and node-count statistics")
    st.add_argument("--gold", required=True)
    st.set_defaults(func=_cmd_stats)

    cp = sub.add_parser("critpath", help="critical-path length and parallel speedup")
    cp.add_argument("--gold", required=True)
    cp.add_argument("--durations", required=True)
    cp.add_argument("--out", default=None)
    cp.set_defaults(func=_cmd_critpath)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "topo_cap", 1) is not None and getattr(args, "topo_cap", 1) < 1:
        print("worfeval: --topo-cap must be >= 1", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (WorfEvalError, OSError, ValueError) as exc:
        print(f"worfeval: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
