"""Critical path of a workflow: how much faster a parallel executor could go."""

import numpy as np

from worfeval.fixtures import RandomDagSpec, gen_random_dag
from worfeval.fixtures.instances import case_a_gold, diamond
from worfeval.schedule import critical_path, speedup

g = diamond()
d = {1: 1.0, 2: 4.0, 3: 2.0, 4: 1.0}
length, path = critical_path(g, d)
print(f"diamond: critical path {path} takes {length}, sequential {sum(d.values())}")
print(f"speedup {speedup(g, d):.2f}x")

# Three independent calls run side by side: only the slowest one counts.
d = {1: 2.0, 2: 3.0, 3: 5.0}
print("parallel calls:", critical_path(case_a_gold(), d), f"speedup {speedup(case_a_gold(), d):.1f}x")

# Speedup over random workflows as edges get denser
rng = np.random.default_rng(0)
for p in (0.1, 0.3, 0.6, 0.9):
    ups = []
    for seed in range(200):
        g = gen_random_dag(RandomDagSpec(4, 8, p, seed))
        dur = {i: float(x) for i, x in zip(g.internal, rng.uniform(1, 5, len(g)))}
        ups.append(speedup(g, dur))
    print(f"edge prob {p:.1f}: mean speedup {np.mean(ups):.2f}x")
