"""Regenerate the shipped fixture corpus (gold, predictions, durations)."""

from __future__ import annotations

import json
from pathlib import Path

from ..parser import dump_records, sample_to_record, serialize_workflow
from . import instances as inst

__all__ = ["corpus_records", "qc_pool_records", "write_corpus"]


def corpus_records() -> tuple[list[dict], list[dict], list[dict]]:
    golds = [
        inst.gold_sample("case-a", "function_call", inst.case_a_gold(), "analyze logs, fetch policy, get PR metrics"),
        inst.gold_sample("case-b", "embodied", inst.case_b_gold(), "put a cool potato in garbagecan"),
        inst.gold_sample("diamond", "problem_solving", inst.diamond(), "plan a trip"),
        inst.gold_sample(
            "reversed", "open_grounded", inst.linear(["wash the rice", "boil the water", "cook the rice"]), "cook rice"
        ),
        inst.gold_sample(
            "self", "function_call", inst.linear(["get weather for Paris", "convert units", "reply to user"]), "weather"
        ),
        inst.gold_sample(
            "garbled", "embodied", inst.linear(["go to drawer 1", "open drawer 1", "take key from drawer 1"]), "key"
        ),
        inst.gold_sample(
            "unanswered", "problem_solving", inst.linear(["read the question", "solve the equation"]), "math"
        ),
        inst.gold_sample(
            "over-generated",
            "open_grounded",
            inst.parallel(["buy flour", "buy eggs", "buy milk", "preheat oven"]),
            "prepare to bake",
        ),
        inst.gold_sample(
            "no-edges", "held_out", inst.linear(["list tables", "inspect schema", "write query"]), "sql"
        ),
        inst.gold_sample(
            "partial", "held_out", inst.diamond(["load data", "fit model", "plot data", "write summary"]), "analysis"
        ),
    ]
    gold_records = [sample_to_record(s) for s in golds]
    by_id = {s.id: s for s in golds}

    preds = [
        {"id": "case-a", "raw_text": inst.CASE_A_PRED_TEXT},
        {"id": "case-b", "raw_text": inst.CASE_B_PRED_TEXT},
        {
            "id": "diamond",
            "raw_text": "Node:\n1: search flights to Paris\n2: reserve a rental car\n3: book a hotel near the venue\n"
            "4: send the itinerary to the user\nEdge:\n(START, 1) (1, 2) (2, 3) (3, 4) (4, END)",
        },
        {
            "id": "reversed",
            "raw_text": "Node:\n1: cook the rice\n2: boil the water\n3: wash the rice\n"
            "Edge:\n(START, 1) (1, 2) (2, 3) (3, END)",
        },
        {"id": "self", "raw_text": serialize_workflow(by_id["self"].gold_graph)},
        {"id": "garbled", "raw_text": "I would open the drawer and take the key."},
        {
            "id": "over-generated",
            "nodes": ["buy flour", "buy eggs", "buy sugar", "buy milk", "preheat oven"],
            "edges": [["START", 1], [1, 2], [2, 3], [3, 4], ["START", 5], [4, "END"], [5, "END"]],
        },
        {"id": "no-edges", "raw_text": "Node:\n1: list tables\n2: inspect schema\n3: write query\n"},
        {
            "id": "partial",
            "raw_text": "Node:\n1. load the data\n2. plot data\n3. fit model\n"
            "Edge:\n(START,1)(1,2)(1,3)(2,END)(3,END)",
        },
    ]
    durations = [
        {"id": "case-a", "durations": [2.0, 3.0, 5.0]},
        {"id": "case-b", "durations": [1.0, 1.0, 1.0, 2.0, 1.0, 1.0]},
        {"id": "diamond", "durations": [1.0, 4.0, 2.0, 1.0]},
        {"id": "over-generated", "durations": [3.0, 3.0, 3.0, 10.0]},
    ]
    return gold_records, preds, durations


def qc_pool_records() -> list[dict]:
    """Ten raw samples: eight clean, one single-node, one whose chain disagrees with its edges."""
    gold, _, _ = corpus_records()
    pool = [dict(r) for r in gold[:8]]
    pool.append(
        {"id": "single", "scenario": "embodied", "task": "", "action_list": [], "nodes": ["look around"],
         "edges": [["START", 1], [1, "END"]]}
    )
    pool.append(
        {"id": "misordered", "scenario": "function_call", "task": "", "action_list": [],
         "nodes": ["send email", "draft email", "proofread"],
         "edges": [["START", 2], [2, 1], [2, 3], [1, "END"], [3, "END"]]}
    )
    return pool


def write_corpus(directory: str | Path) -> None:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    gold, preds, durations = corpus_records()
    dump_records(gold, directory / "gold.jsonl")
    dump_records(preds, directory / "pred.jsonl")
    dump_records(durations, directory / "durations.jsonl")
    dump_records(qc_pool_records(), directory / "qc_pool.jsonl")


if __name__ == "__main__":
    import sys

    target = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).with_name("corpus")
    write_corpus(target)
    print(json.dumps({"written": str(target)}))
