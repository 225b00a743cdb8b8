"""Automatic term recognition for claims and abstracts.

Candidates are stopword-delimited token chunks (no POS tagger), ranked
by a termhood score that rewards longer, more frequent phrases and
phrases nested inside other candidates. The stopword list ships as a
data file and is configurable, so the whole pipeline is deterministic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .textutil import strip_edge_punct

# Termhood weights for nested-phrase evidence: a candidate contained in
# other candidates is likely a real term (weight 0.75); containing other
# candidates is weaker evidence (weight 0.1).
CONTAINED_IN_OTHERS_WEIGHT = 0.75
CONTAINS_OTHERS_WEIGHT = 0.1
MAX_TERM_WORDS = 6

_CHUNK_BREAK_PUNCT = ".,;:!?"


@dataclass(frozen=True)
class TermCandidate:
    """A candidate term with its corpus frequency and termhood score."""

    text: str
    frequency: int
    score: float = 0.0

    @property
    def length_words(self) -> int:
        return len(self.text.split())


@dataclass(frozen=True)
class TermSet:
    """Unique normalized terms extracted from one text."""

    terms: frozenset[str]
    source: str = ""

    def __len__(self) -> int:
        return len(self.terms)

    def __contains__(self, term: str) -> bool:
        return term in self.terms

    def __iter__(self):
        return iter(sorted(self.terms))


def default_stopwords() -> frozenset[str]:
    text = resources.files("claimkit").joinpath("data/stopwords.txt").read_text("utf-8")
    return _parse_stopwords(text)


def load_stopwords(path: str | Path) -> frozenset[str]:
    """Read a one-token-per-line stopword file; # comments skipped."""
    return _parse_stopwords(Path(path).read_text(encoding="utf-8"))


def _parse_stopwords(text: str) -> frozenset[str]:
    words = set()
    for line in text.splitlines():
        word = line.strip().casefold()
        if word and not word.startswith("#"):
            words.add(word)
    return frozenset(words)


def _chunk_tokens(text: str, stopwords: frozenset[str]) -> list[list[str]]:
    """Split text into maximal runs of content tokens.

    Runs break at stopwords, digit-only tokens, claim references, and
    sentence punctuation. Tokens are case-folded with edge punctuation
    stripped.
    """
    runs: list[list[str]] = []
    current: list[str] = []

    def flush() -> None:
        nonlocal current
        if current:
            runs.append(current)
            current = []

    for raw in text.split():
        word = strip_edge_punct(raw).casefold()
        breaking = bool(raw) and raw[-1] in _CHUNK_BREAK_PUNCT
        if not word or word.isdigit() or word in stopwords or word in ("claim", "claims"):
            flush()
            continue
        current.append(word)
        if breaking:
            flush()
    flush()
    return runs


def extract_candidates(
    text: str,
    stopwords: frozenset[str] | None = None,
) -> list[TermCandidate]:
    """Candidate terms: maximal content-token runs of 1..6 words.

    Frequencies count identical runs over the whole text. Runs longer
    than 6 words are skipped (too long to be a term). Candidates come
    back in first-appearance order, unscored.
    """
    if stopwords is None:
        stopwords = default_stopwords()
    counts: dict[str, int] = {}
    for run in _chunk_tokens(text, stopwords):
        if not 1 <= len(run) <= MAX_TERM_WORDS:
            continue
        phrase = " ".join(run)
        counts[phrase] = counts.get(phrase, 0) + 1
    return [TermCandidate(text=t, frequency=n) for t, n in counts.items()]


def _is_subphrase(inner: list[str], outer: list[str]) -> bool:
    if len(inner) >= len(outer):
        return False
    return any(
        outer[i:i + len(inner)] == inner
        for i in range(len(outer) - len(inner) + 1)
    )


def score_candidates(candidates: list[TermCandidate]) -> list[TermCandidate]:
    """Score and rank candidates by termhood.

    score = words * ln(frequency + 1)
          + 0.75 * (number of other candidates containing the phrase)
          + 0.1  * (number of other candidates contained in the phrase)

    Result is sorted by descending score, ties broken lexicographically.
    """
    words = {c.text: c.text.split() for c in candidates}
    scored = []
    for cand in candidates:
        mine = words[cand.text]
        contained_in = sum(
            1 for other in candidates
            if other.text != cand.text and _is_subphrase(mine, words[other.text])
        )
        contains = sum(
            1 for other in candidates
            if other.text != cand.text and _is_subphrase(words[other.text], mine)
        )
        score = (
            cand.length_words * math.log(cand.frequency + 1)
            + CONTAINED_IN_OTHERS_WEIGHT * contained_in
            + CONTAINS_OTHERS_WEIGHT * contains
        )
        scored.append(TermCandidate(text=cand.text, frequency=cand.frequency, score=score))
    scored.sort(key=lambda c: (-c.score, c.text))
    return scored


def unique_terms(
    text: str,
    top_k: int | None = None,
    stopwords: frozenset[str] | None = None,
    source: str = "",
) -> TermSet:
    """The unique-term set of a text: extract, score, rank, take top_k.

    With top_k=None (the default) every positive-scoring candidate is
    kept; membership is set-valued, so duplicating the input text
    changes frequencies but not the resulting terms.
    """
    ranked = score_candidates(extract_candidates(text, stopwords=stopwords))
    kept = [c for c in ranked if c.score > 0]
    if top_k is not None:
        kept = kept[:top_k]
    return TermSet(terms=frozenset(c.text for c in kept), source=source)
