"""Trace analytics for collaborative tagging communities.

The pipeline runs in four stages, each usable on its own:

1. ``trace``: parse and validate tag-assignment traces, build user profiles.
2. ``reuse``: classify assignments as new vs reused, daily series, summaries.
3. ``similarity`` / ``graph``: pairwise interest-sharing weights, their
   distribution, and the thresholded graph's topology.
4. ``recommend``: neighbor-based recommendations with temporal evaluation.

``synth`` generates deterministic traces with planted statistics for
testing, and ``cli`` wires everything into subcommands.
"""

from .errors import (
    ColdStartError,
    ConfigError,
    EmptyInputError,
    EmptyTraceError,
    PairLimitError,
    TagTraceError,
)
from .graph import InterestGraph, TopologyReport, build_graph, knee_threshold, topology
from .recommend import (
    EvalReport,
    Recommendation,
    TemporalSplit,
    UserOutcome,
    evaluate,
    quantile_cutoff,
    recommend,
    split,
)
from .reuse import (
    ClassifiedAssignment,
    DailyReuseRecord,
    ReuseSummary,
    classify,
    daily_series,
    summarize,
)
from .similarity import (
    SimilaritySummary,
    SparseSimilarity,
    WindowStats,
    all_pairs,
    cdf,
    pair_similarity,
    summary,
    windowed,
)
from .synth import GenConfig, GroundTruth, generate
from .trace import (
    TagAssignment,
    Trace,
    UserProfile,
    ValidationReport,
    build_profiles,
    parse_trace,
    parse_trace_text,
)

__version__ = "0.1.0"

__all__ = [
    "TagAssignment",
    "Trace",
    "UserProfile",
    "ValidationReport",
    "parse_trace",
    "parse_trace_text",
    "build_profiles",
    "ClassifiedAssignment",
    "DailyReuseRecord",
    "ReuseSummary",
    "classify",
    "daily_series",
    "summarize",
    "SparseSimilarity",
    "SimilaritySummary",
    "WindowStats",
    "pair_similarity",
    "all_pairs",
    "summary",
    "cdf",
    "windowed",
    "InterestGraph",
    "TopologyReport",
    "build_graph",
    "topology",
    "knee_threshold",
    "TemporalSplit",
    "Recommendation",
    "UserOutcome",
    "EvalReport",
    "split",
    "quantile_cutoff",
    "recommend",
    "evaluate",
    "GenConfig",
    "GroundTruth",
    "generate",
    "TagTraceError",
    "ConfigError",
    "EmptyTraceError",
    "EmptyInputError",
    "ColdStartError",
    "PairLimitError",
    "__version__",
]
