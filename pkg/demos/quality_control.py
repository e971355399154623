"""Filter a raw pool of gold workflows and look at what was dropped."""

from worfeval.fixtures import corpus_path, gen_gold_sample
from worfeval.harness import sample_stats
from worfeval.parser import load_dataset
from worfeval.qc import check_topo_consistency, run_qc

pool = load_dataset(corpus_path("qc_pool.jsonl"), validate=False)
result = run_qc(pool)
print(f"kept {len(result.kept)} of {result.total}")
for sample, reason in result.discarded:
    print(f"  dropped {sample.id!r}: {reason}")
print("rates:", result.rates)

# The node chain must be the ascending-index topological order.
bad = next(s for s in pool if s.id == "misordered")
print("misordered chain", bad.gold_chain, "consistent:", check_topo_consistency(bad.gold_graph, bad.gold_chain))

# An external check (for instance a retrieval lookup) can veto samples.
result = run_qc(pool, external_predicate=lambda s: "potato" not in s.task)
print("with external filter:", [(s.id, r) for s, r in result.discarded])

# Topological-order statistics over a random pool
stats = sample_stats([gen_gold_sample(seed) for seed in range(300)])
print("orders per sample (% of pool):", stats["topo_order_buckets"])
print("mean internal nodes:", round(stats["mean_nodes"], 2))
