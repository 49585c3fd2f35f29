"""Graph-QA benchmarking: exact oracles, eight graph representations, an
efficiency-aware score, and a learned per-question representation router."""

from .graph import ErConfig, Graph, GraphError, extract_khop_subgraph, generate_er_bipartite, generate_er_graph, read_edge_list
from .harness import EvalResult, RunConfig, StrategySummary, TaskSummary, evaluate, evaluate_routed_from_records
from .kinds import GENERATED_TASKS, POOL_ORDER, TEXTUAL_GTRS, VISUAL_GTRS, GtrId, TaskKind
from .preference import (
    GreDomainError,
    GreParams,
    PreferenceExample,
    ProbeRecord,
    ProbeStore,
    build_gtrp,
    gre,
    mean_gre_per_gtr,
    preferred_set,
    rebuild_from_cache,
)
from .reasoner import (
    EndpointError,
    HttpConfig,
    HttpEndpoint,
    MalformedResponse,
    MockEndpoint,
    MockPolicy,
    PolicyEntry,
    RateLimited,
    ReasonerRequest,
    ReasonerResponse,
    TransportError,
    ask_k_trials,
    policy_from_preferences,
)
from .router import RouterModel, featurize, train_router
from .tasks import Question, ValidityExhausted, generate_dataset, generate_question, read_questions, write_questions
from .textgtr import ParseError, TextGtr
from .visual import Layout, VisualGtr, compute_layout, raster_png, render_visual

__version__ = "0.1.0"

__all__ = [
    "ErConfig",
    "EvalResult",
    "EndpointError",
    "GENERATED_TASKS",
    "Graph",
    "GraphError",
    "GreDomainError",
    "GreParams",
    "GtrId",
    "HttpConfig",
    "HttpEndpoint",
    "Layout",
    "MalformedResponse",
    "MockEndpoint",
    "MockPolicy",
    "POOL_ORDER",
    "ParseError",
    "PolicyEntry",
    "PreferenceExample",
    "ProbeRecord",
    "ProbeStore",
    "Question",
    "RateLimited",
    "ReasonerRequest",
    "ReasonerResponse",
    "RouterModel",
    "RunConfig",
    "StrategySummary",
    "TEXTUAL_GTRS",
    "TaskKind",
    "TaskSummary",
    "TextGtr",
    "TransportError",
    "VISUAL_GTRS",
    "ValidityExhausted",
    "VisualGtr",
    "ask_k_trials",
    "policy_from_preferences",
    "build_gtrp",
    "compute_layout",
    "evaluate",
    "evaluate_routed_from_records",
    "extract_khop_subgraph",
    "featurize",
    "generate_dataset",
    "generate_er_bipartite",
    "generate_er_graph",
    "generate_question",
    "gre",
    "mean_gre_per_gtr",
    "preferred_set",
    "raster_png",
    "read_edge_list",
    "read_questions",
    "rebuild_from_cache",
    "render_visual",
    "train_router",
    "write_questions",
]
