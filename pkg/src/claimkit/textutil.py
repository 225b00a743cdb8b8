"""Shared low-level text helpers: tokenization, spans, normalization.

Every metric and detector in this package tokenizes through these
functions so that term extraction, n-gram coverage, and the fallback
embedder all agree on what a "token" is.
"""
from __future__ import annotations

import re
import string
from dataclasses import dataclass

_EDGE_PUNCT = string.punctuation + "‘’“”–—"

_CLAIM_NUMBER_RE = re.compile(r"^\s*(\d+)\.\s*")

_WS_TOKEN_RE = re.compile(r"\S+")


@dataclass(frozen=True)
class Token:
    """A whitespace-delimited token with its character span in the source."""

    text: str
    start: int
    end: int


def tokenize(text: str) -> list[str]:
    """Case-folded tokens, whitespace-split, punctuation stripped at edges.

    Tokens that are empty after stripping are dropped.
    """
    out = []
    for raw in text.split():
        tok = raw.strip(_EDGE_PUNCT).casefold()
        if tok:
            out.append(tok)
    return out


def tokenize_with_spans(text: str) -> list[Token]:
    """Whitespace-delimited tokens with character offsets, no normalization."""
    return [Token(m.group(), m.start(), m.end()) for m in _WS_TOKEN_RE.finditer(text)]


def word_count(text: str) -> int:
    """Number of whitespace-delimited words."""
    return len(text.split())


def strip_edge_punct(token: str) -> str:
    return token.strip(_EDGE_PUNCT)


def split_claim_number(text: str) -> tuple[int | None, str, int]:
    """Split a leading ``N.`` claim number off ``text``.

    Returns ``(number, remainder, offset)`` where ``offset`` is the index
    in ``text`` at which the remainder starts. ``number`` is None when no
    leading claim number is present (then remainder is the whole text).
    """
    m = _CLAIM_NUMBER_RE.match(text)
    if m is None:
        return None, text, 0
    return int(m.group(1)), text[m.end():], m.end()


def normalize_claim_text(text: str) -> str:
    """Normalization used for claim-identity comparisons.

    Strips a leading claim number, collapses whitespace, case-folds.
    """
    _, rest, _ = split_claim_number(text)
    return " ".join(rest.split()).casefold()


def squash(text: str) -> str:
    """Reduce text to its alphanumeric content, case-folded.

    Used for loose "same content up to whitespace/punctuation" checks.
    """
    return "".join(ch for ch in text.casefold() if ch.isalnum())


def ngrams(tokens: list[str], n: int) -> list[tuple[str, ...]]:
    if n < 1 or len(tokens) < n:
        return []
    return [tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1)]
