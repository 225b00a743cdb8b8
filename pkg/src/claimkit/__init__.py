"""claimkit: parse, lint, and score patent claims and abstracts.

The package splits into structural parsing (claims), rule-based linting
(lint), quantitative metrics (scoring, terms, embeddings), corpus and
annotation ingestion (corpus), and the metric-vs-human evaluation
protocol (harness).
"""

from .claims import (
    AncestryError,
    ClaimKind,
    ClaimParseError,
    ClaimSet,
    DependencyRef,
    ParsedClaim,
    RefForm,
    TransitionKind,
    claim_ancestry,
    extract_dependency_refs,
    parse_claim,
    segment_claims,
)
from .corpus import (
    AnnotatedPair,
    CorpusFormatError,
    PatentRecord,
    PreferenceLabel,
    RequiredKind,
    Task,
    filter_eval_corpus,
    load_annotation_pairs,
    load_patent_records,
)
from .embeddings import EmbeddingProvider, HashedBowEmbedder, HttpEmbedder
from .harness import (
    DegenerateVarianceError,
    Metric,
    MetricReport,
    PairRanking,
    TauResult,
    build_metric,
    evaluate_metric,
    kendall_tau_b,
    rank_pair,
)
from .lint import (
    Diagnostic,
    ErrorType,
    Severity,
    detect_repetition_loop,
    lint_abstract,
    lint_next_claim,
)
from .scoring import (
    CoverageUndefinedError,
    RuleCheckerResult,
    cosine_similarity,
    cosine_to_unit,
    ngram_coverage,
    rule_checker_score,
    semsim_abstract,
    semsim_next_claim,
    term_coverage,
    weighted_score,
)
from .terms import TermCandidate, TermSet, extract_candidates, score_candidates, unique_terms

__version__ = "0.1.0"

__all__ = [
    "AncestryError",
    "AnnotatedPair",
    "ClaimKind",
    "ClaimParseError",
    "ClaimSet",
    "CorpusFormatError",
    "CoverageUndefinedError",
    "DegenerateVarianceError",
    "Diagnostic",
    "DependencyRef",
    "EmbeddingProvider",
    "ErrorType",
    "HashedBowEmbedder",
    "HttpEmbedder",
    "Metric",
    "MetricReport",
    "PairRanking",
    "ParsedClaim",
    "PatentRecord",
    "PreferenceLabel",
    "RefForm",
    "RequiredKind",
    "RuleCheckerResult",
    "Severity",
    "Task",
    "TauResult",
    "TermCandidate",
    "TermSet",
    "TransitionKind",
    "build_metric",
    "claim_ancestry",
    "cosine_similarity",
    "cosine_to_unit",
    "detect_repetition_loop",
    "evaluate_metric",
    "extract_candidates",
    "extract_dependency_refs",
    "filter_eval_corpus",
    "kendall_tau_b",
    "lint_abstract",
    "lint_next_claim",
    "load_annotation_pairs",
    "load_patent_records",
    "ngram_coverage",
    "parse_claim",
    "rank_pair",
    "rule_checker_score",
    "score_candidates",
    "segment_claims",
    "semsim_abstract",
    "semsim_next_claim",
    "term_coverage",
    "unique_terms",
    "weighted_score",
]
