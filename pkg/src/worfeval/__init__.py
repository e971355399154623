"""Scoring of agent-generated workflows against gold workflow graphs.

Predicted subtasks are matched to gold subtasks by label similarity, then
scored twice: as a node chain (longest increasing subsequence against the
gold topological orders) and as a graph (maximum common induced subgraph
under the node correspondence).
"""

from .chain_eval import ChainScore, lis_length, score_chain
from .core import (
    END,
    START,
    WorkflowGraph,
    WorkflowNode,
    build_graph,
    count_topo_orders,
    deterministic_topo_sort,
    enumerate_topo_orders,
    strip_terminals,
)
from .errors import (
    CycleError,
    DanglingEdgeError,
    DuplicateIndexError,
    FormatError,
    ProviderError,
    SchemaError,
    ServiceError,
    WorfEvalError,
)
from .graph_eval import GraphScore, induced_subgraph, mcis, score_graph
from .harness import EvalConfig, Report, SampleResult, aggregate, dataset_stats, evaluate, evaluate_samples
from .matcher import NodeCorrespondence, max_weight_matching
from .parser import GoldSample, Prediction, load_dataset, load_predictions, parse_workflow_text, serialize_workflow
from .qc import QcVerdict, check_topo_consistency, filter_complexity, run_qc
from .schedule import critical_path, speedup
from .similarity import (
    SimilarityConfig,
    SimilarityMatrix,
    build_similarity_matrix,
    similarity,
)

__version__ = "0.1.0"

__all__ = [
    "ChainScore",
    "lis_length",
    "score_chain",
    "END",
    "START",
    "WorkflowGraph",
    "WorkflowNode",
    "build_graph",
    "count_topo_orders",
    "deterministic_topo_sort",
    "enumerate_topo_orders",
    "strip_terminals",
    "CycleError",
    "DanglingEdgeError",
    "DuplicateIndexError",
    "FormatError",
    "ProviderError",
    "SchemaError",
    "ServiceError",
    "WorfEvalError",
    "GraphScore",
    "induced_subgraph",
    "mcis",
    "score_graph",
    "EvalConfig",
    "Report",
    "SampleResult",
    "aggregate",
    "dataset_stats",
    "evaluate",
    "evaluate_samples",
    "NodeCorrespondence",
    "max_weight_matching",
    "GoldSample",
    "Prediction",
    "load_dataset",
    "load_predictions",
    "parse_workflow_text",
    "serialize_workflow",
    "QcVerdict",
    "check_topo_consistency",
    "filter_complexity",
    "run_qc",
    "critical_path",
    "speedup",
    "SimilarityConfig",
    "SimilarityMatrix",
    "build_similarity_matrix",
    "similarity",
]
