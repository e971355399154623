"""Score one predicted workflow against its gold graph, step by step."""

from worfeval.chain_eval import score_chain
from worfeval.fixtures.instances import CASE_A_GOLD_NODES, CASE_A_PRED_TEXT, case_a_gold
from worfeval.graph_eval import score_graph
from worfeval.matcher import max_weight_matching
from worfeval.parser import parse_workflow_text
from worfeval.core import build_graph, enumerate_topo_orders
from worfeval.similarity import TokenCosineProvider, build_similarity_matrix

# The gold workflow: three independent subtasks, so any order is valid.
gold = case_a_gold()
print("gold orders:", enumerate_topo_orders(gold))

# The prediction chains them: 1 before 2 and 3.
nodes, edges = parse_workflow_text(CASE_A_PRED_TEXT)
pred = build_graph(nodes, edges)
for i, label in nodes:
    print(f"  pred {i}: {label[:60]}")

# Label similarity, thresholded at 0.6
S = build_similarity_matrix(CASE_A_GOLD_NODES, [lab for _, lab in nodes], TokenCosineProvider())
print("similarity:\n", S.values.round(2))

corr = max_weight_matching(S)
print("matched (gold, pred, weight):", corr.pairs)

# Chain: the predicted order [1, 2, 3] is itself a gold order.
chain = score_chain(gold, tuple(i for i, _ in nodes), corr)
print(f"f1_chain = {chain.f1:.4f}  (l = {chain.l})")

# Graph: the prediction adds edges 1->2 and 1->3, so only {2, 3} agree.
graph = score_graph(gold, pred, len(nodes), corr)
print(f"f1_graph = {graph.f1:.4f}  (k = {graph.k}, common subgraph {graph.certificate})")
