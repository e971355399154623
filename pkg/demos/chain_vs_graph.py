"""Why two metrics: a linearized diamond keeps the order but loses the structure."""

from worfeval.chain_eval import score_chain
from worfeval.fixtures.instances import DIAMOND_LABELS, diamond, linear
from worfeval.graph_eval import score_graph
from worfeval.matcher import max_weight_matching
from worfeval.similarity import ExactProvider, build_similarity_matrix

gold = diamond()
# same four labels, executed strictly one after another in the order 1, 3, 2, 4
order = [DIAMOND_LABELS[i] for i in (0, 2, 1, 3)]
pred = linear(order)

S = build_similarity_matrix(DIAMOND_LABELS, order, ExactProvider())
corr = max_weight_matching(S)
chain = score_chain(gold, pred.internal, corr)
graph = score_graph(gold, pred, len(pred), corr)

print("gold edges:", gold.sorted_edges())
print("pred edges:", pred.sorted_edges())
print(f"f1_chain = {chain.f1:.3f}   # [1, 3, 2, 4] is a valid gold order")
print(f"f1_graph = {graph.f1:.3f}   # the induced edges agree on two nodes only")

# Reversing a linear chain is the opposite case: structure mirrored, order wrong.
steps = ["wash the rice", "boil the water", "cook the rice"]
gold = linear(steps)
pred = linear(steps[::-1])
corr = max_weight_matching(build_similarity_matrix(steps, steps[::-1], ExactProvider()))
print(f"reversed chain f1_chain = {score_chain(gold, pred.internal, corr).f1:.3f}")
