"""Quantitative quality metrics for generated claims and abstracts.

Four families: the rule-based checker score (structural checks with
distinctiveness as a gate), term coverage, n-gram coverage, and
embedding cosine similarity. All scores are plain floats; coverage and
checker scores live in [0, 1], cosine values are raw in [-1, 1] with a
helper to map onto the unit interval.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .claims import ClaimKind, ClaimParseError, ClaimSet, parse_claim
from .embeddings import EmbeddingProvider
from .lint import (
    _punctuation_issues,
    check_distinctiveness,
    check_numbering,
    detect_repetition_loop,
)
from .terms import TermSet
from .textutil import ngrams, tokenize

RULE_CHECK_COUNT = 4


class CoverageUndefinedError(ValueError):
    """Raised when a coverage denominator is empty."""


@dataclass(frozen=True)
class RuleCheckerResult:
    """Outcome of the rule-based claim checks.

    Distinctiveness is a gate: a non-distinctive candidate scores 0
    regardless of the other checks. Otherwise the score is the fraction
    of the four remaining checks that passed, so the value is always
    one of {0, 0.25, 0.5, 0.75, 1.0}.
    """

    distinctive: bool
    no_repetition: bool
    punctuation_ok: bool
    numbering_ok: bool
    dependency_ok: bool
    score: float

    @classmethod
    def from_checks(
        cls,
        distinctive: bool,
        no_repetition: bool,
        punctuation_ok: bool,
        numbering_ok: bool,
        dependency_ok: bool,
    ) -> "RuleCheckerResult":
        if not distinctive:
            score = 0.0
        else:
            passed = sum(
                (no_repetition, punctuation_ok, numbering_ok, dependency_ok)
            )
            score = passed / RULE_CHECK_COUNT
        return cls(
            distinctive=distinctive,
            no_repetition=no_repetition,
            punctuation_ok=punctuation_ok,
            numbering_ok=numbering_ok,
            dependency_ok=dependency_ok,
            score=score,
        )

    def to_dict(self) -> dict:
        return {
            "distinctive": self.distinctive,
            "no_repetition": self.no_repetition,
            "punctuation_ok": self.punctuation_ok,
            "numbering_ok": self.numbering_ok,
            "dependency_ok": self.dependency_ok,
            "score": self.score,
        }


def rule_checker_score(
    context: ClaimSet,
    candidate_text: str,
    required: ClaimKind,
) -> RuleCheckerResult:
    """Score a generated claim against the structural rule checks.

    A candidate that repeats a context claim verbatim scores 0. An
    unparseable candidate (no leading claim number) still gets the
    distinctiveness and text-level checks; its numbering and dependency
    checks count as failed rather than raising.
    """
    if not candidate_text.strip():
        raise ValueError("candidate text is empty")
    distinctive = not check_distinctiveness(context, candidate_text)
    no_repetition = detect_repetition_loop(candidate_text) is None
    try:
        candidate = parse_claim(candidate_text)
    except ClaimParseError:
        candidate = None
    if candidate is not None:
        punctuation_ok = not _punctuation_issues(
            candidate.text_after_number, offset=candidate.number_offset
        )
        numbering_ok = not check_numbering(context, candidate)
        dependency_ok = candidate.kind == required
    else:
        punctuation_ok = not _punctuation_issues(candidate_text)
        numbering_ok = False
        dependency_ok = False
    return RuleCheckerResult.from_checks(
        distinctive=distinctive,
        no_repetition=no_repetition,
        punctuation_ok=punctuation_ok,
        numbering_ok=numbering_ok,
        dependency_ok=dependency_ok,
    )


def term_coverage(claims_terms: TermSet, abstract_terms: TermSet) -> float:
    """Fraction of the claims' unique terms present in the abstract."""
    if not claims_terms.terms:
        raise CoverageUndefinedError("claims term set is empty")
    hit = len(claims_terms.terms & abstract_terms.terms)
    return hit / len(claims_terms.terms)


def ngram_coverage_by_n(
    claims_text: str,
    abstract_text: str,
    n_max: int = 4,
) -> dict[int, float]:
    """Per-n unique n-gram coverage of the claims by the abstract.

    An n contributes only when the claims text has at least one n-gram;
    the result maps each defined n to its coverage.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    claims_tokens = tokenize(claims_text)
    abstract_tokens = tokenize(abstract_text)
    out: dict[int, float] = {}
    for n in range(1, n_max + 1):
        claim_grams = set(ngrams(claims_tokens, n))
        if not claim_grams:
            continue
        abstract_grams = set(ngrams(abstract_tokens, n))
        out[n] = len(claim_grams & abstract_grams) / len(claim_grams)
    return out


def ngram_coverage(claims_text: str, abstract_text: str, n_max: int = 4) -> float:
    """Mean n-gram coverage over n = 1..n_max (undefined n skipped)."""
    by_n = ngram_coverage_by_n(claims_text, abstract_text, n_max)
    if not by_n:
        raise CoverageUndefinedError(
            f"claims text has no n-grams for any n in 1..{n_max}"
        )
    return sum(by_n.values()) / len(by_n)


def cosine_similarity(u: np.ndarray, v: np.ndarray) -> float:
    """Raw cosine similarity, clamped to [-1, 1].

    Raises ValueError on dimension mismatch or a zero vector.
    """
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape:
        raise ValueError(f"dimension mismatch: {u.shape} vs {v.shape}")
    nu = np.linalg.norm(u)
    nv = np.linalg.norm(v)
    if nu == 0.0 or nv == 0.0:
        raise ValueError("cosine similarity is undefined for a zero vector")
    value = float(np.dot(u, v) / (nu * nv))
    return max(-1.0, min(1.0, value))


def cosine_to_unit(value: float) -> float:
    """Map a raw cosine in [-1, 1] onto [0, 1] (order preserving)."""
    return (1.0 + value) / 2.0


def semsim_abstract(
    claims_text: str,
    abstract_text: str,
    provider: EmbeddingProvider,
) -> float:
    """Raw cosine similarity between claim-set and abstract embeddings."""
    if not claims_text.strip() or not abstract_text.strip():
        raise ValueError("claims and abstract must be non-empty")
    return cosine_similarity(provider.embed(claims_text), provider.embed(abstract_text))


def concat_claims(context: ClaimSet) -> str:
    """Claim texts joined with single newlines, as fed to the embedder."""
    return "\n".join(c.raw_text for c in context)


def semsim_next_claim(
    context: ClaimSet,
    candidate_text: str,
    provider: EmbeddingProvider,
) -> float:
    """Raw cosine between the input claims and the claims plus candidate.

    The candidate is appended to the concatenated context with a newline;
    a candidate that blends in keeps the embedding close to the context.
    """
    if len(context) == 0:
        raise ValueError("context claim set is empty")
    if not candidate_text.strip():
        raise ValueError("candidate text is empty")
    base = concat_claims(context)
    extended = base + "\n" + candidate_text
    return cosine_similarity(provider.embed(base), provider.embed(extended))


def weighted_score(metric: float, checker: RuleCheckerResult) -> float:
    """Metric score weighted (multiplied) by the rule-checker score."""
    if not 0.0 <= metric <= 1.0:
        raise ValueError(f"metric score must be in [0, 1], got {metric}")
    return metric * checker.score
