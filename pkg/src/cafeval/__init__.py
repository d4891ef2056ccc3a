"""Audio reasoning-trace fidelity evaluation and structured-reward toolkit.

The package has three layers:

* dataset and trace ingestion (`samples`, `traces`),
* perceptual-fidelity scoring of reasoning traces against ground-truth
  captions via an LLM judge (`judge`, `metrics`, `stats`),
* a structured reward stack for reinforcement-learning post-training
  (`rewards`), plus the data-curation filters used to build training
  corpora (`pipeline`).

Batch entry points live in `cli`; the HTTP reward service lives in
`service`.
"""

__version__ = "0.1.0"

from .samples import AudioQASample, TraceRecord, load_dataset, load_traces
from .traces import (
    ParsedTrace,
    ParseDiagnostics,
    parse_mpar2,
    canonicalize,
    extract_answer,
    count_tokens,
)
from .metrics import (
    EventCounts,
    FidelityMetrics,
    counts_from_extraction,
    compute_metrics,
    aggregate_micro,
    bin_by_length,
)
from .stats import CorrelationResult, pearson
from .rewards import (
    RewardWeights,
    ComponentScores,
    RewardBreakdown,
    combine,
    compute_trace_reward,
)

__all__ = [
    "__version__",
    "AudioQASample",
    "TraceRecord",
    "load_dataset",
    "load_traces",
    "ParsedTrace",
    "ParseDiagnostics",
    "parse_mpar2",
    "canonicalize",
    "extract_answer",
    "count_tokens",
    "EventCounts",
    "FidelityMetrics",
    "counts_from_extraction",
    "compute_metrics",
    "aggregate_micro",
    "bin_by_length",
    "CorrelationResult",
    "pearson",
    "RewardWeights",
    "ComponentScores",
    "RewardBreakdown",
    "combine",
    "compute_trace_reward",
]
