"""thaicurate: curation, normalization and evaluation for Thai ASR corpora."""

__version__ = "0.1.0"

from .chars import CharClass, classify_char
from .consensus import (
    ConsensusResult,
    Hypothesis,
    HttpBackend,
    MockBackend,
    PipelineOutcome,
    run_pipeline,
    vote,
)
from .evaluation import (
    AbJudgment,
    EvalReport,
    ParetoPoint,
    aggregate_ab,
    cer,
    cohens_kappa,
    edit_distance,
    evaluate,
    pareto_export,
)
from .lexicon import Lexicon, Segment, load_default_lexicon, segment
from .manifest import (
    ManifestEntry,
    MixtureReport,
    read_manifest,
    stats,
    write_manifest,
)
from .normalizer import (
    AmbiguityFlag,
    ComplexityReport,
    NormConfig,
    NormalizedText,
    default_config,
    expand_mai_yamok,
    is_complex,
    normalize,
    resolve_symbol,
    transliterate,
)
from .numbers import (
    classify_numeric_span,
    parse_quantity,
    read_digits,
    read_quantity,
)
from .review import AbItem, ReviewStore, ReviewTask

__all__ = [
    "AbItem",
    "AbJudgment",
    "AmbiguityFlag",
    "CharClass",
    "ComplexityReport",
    "ConsensusResult",
    "EvalReport",
    "HttpBackend",
    "Hypothesis",
    "Lexicon",
    "ManifestEntry",
    "MixtureReport",
    "MockBackend",
    "NormConfig",
    "NormalizedText",
    "ParetoPoint",
    "PipelineOutcome",
    "ReviewStore",
    "ReviewTask",
    "Segment",
    "aggregate_ab",
    "cer",
    "classify_char",
    "classify_numeric_span",
    "cohens_kappa",
    "default_config",
    "edit_distance",
    "evaluate",
    "expand_mai_yamok",
    "is_complex",
    "load_default_lexicon",
    "normalize",
    "pareto_export",
    "parse_quantity",
    "read_digits",
    "read_manifest",
    "read_quantity",
    "resolve_symbol",
    "run_pipeline",
    "segment",
    "stats",
    "transliterate",
    "vote",
    "write_manifest",
]
