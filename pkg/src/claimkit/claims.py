"""Structural parsing of patent claim sets.

Turns raw claim text into a typed structure: claim segmentation by
number, preamble / transitional phrase / body decomposition, dependency
reference extraction, and independent/dependent classification. The
parser is deterministic and purely lexical: no POS tagging, no
normalization that would break span bookkeeping against the original
text.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum

from .textutil import split_claim_number, squash


class ClaimParseError(ValueError):
    """Raised when text cannot be structured as a claim or claim set."""


class AncestryError(ValueError):
    """Raised when a dependency chain cannot be resolved."""


class ClaimKind(Enum):
    INDEPENDENT = "independent"
    DEPENDENT = "dependent"


class TransitionKind(Enum):
    """Scope-defining transitional phrase between preamble and body.

    OTHER marks a recognized transition-like connector outside the
    standard lexicon (kept verbatim so the lint layer can flag it);
    NONE means no transition was found at all.
    """

    COMPRISING = "comprising"
    CONSISTING_OF = "consisting of"
    CONSISTING_ESSENTIALLY_OF = "consisting essentially of"
    INCLUDING = "including"
    HAVING = "having"
    OTHER = "other"
    NONE = "none"

    @property
    def is_lexicon(self) -> bool:
        """True for transitions in the standard closed lexicon."""
        return self not in (TransitionKind.OTHER, TransitionKind.NONE)


# Ordered by specificity: longer phrases first so "consisting essentially
# of" never matches as "consisting of".
_LEXICON_TRANSITIONS: list[tuple[str, TransitionKind]] = [
    ("consisting essentially of", TransitionKind.CONSISTING_ESSENTIALLY_OF),
    ("consisting of", TransitionKind.CONSISTING_OF),
    ("comprising", TransitionKind.COMPRISING),
    ("including", TransitionKind.INCLUDING),
    ("having", TransitionKind.HAVING),
]

# Connectors that act like transitions but fall outside the standard
# lexicon. Recognized so the claim-body linter can flag them; anything
# not matched here or above yields TransitionKind.NONE.
_OTHER_TRANSITIONS: list[str] = [
    "characterized by",
    "characterised by",
    "composed of",
    "constituted of",
    "containing",
    "made with",
    "made of",
    "made from",
    "formed of",
    "formed from",
]


def _transition_pattern(phrases: list[str]) -> re.Pattern[str]:
    alts = "|".join(re.escape(p).replace(r"\ ", r"\s+") for p in phrases)
    return re.compile(r"\b(?:" + alts + r")\b", re.IGNORECASE)

_LEXICON_RE = _transition_pattern([p for p, _ in _LEXICON_TRANSITIONS])
_OTHER_RE = _transition_pattern(_OTHER_TRANSITIONS)


class RefForm(Enum):
    SINGLE = "single"
    MULTIPLE_ALTERNATIVE = "multiple_alternative"
    MULTIPLE_CONJUNCTIVE = "multiple_conjunctive"


@dataclass(frozen=True)
class DependencyRef:
    """One reference from a claim to one or more prior claims."""

    targets: frozenset[int]
    form: RefForm
    source_span: tuple[int, int]

    def __post_init__(self) -> None:
        if not self.targets:
            raise ValueError("dependency ref needs at least one target")
        if any(t < 1 for t in self.targets):
            raise ValueError("claim numbers are positive")
        if (self.form is RefForm.SINGLE) != (len(self.targets) == 1):
            raise ValueError("SINGLE form iff exactly one target")

    @property
    def sorted_targets(self) -> tuple[int, ...]:
        return tuple(sorted(self.targets))

    def to_dict(self) -> dict:
        return {
            "targets": list(self.sorted_targets),
            "form": self.form.value,
            "source_span": list(self.source_span),
        }


@dataclass(frozen=True)
class ParsedClaim:
    """A single claim decomposed into its structural parts.

    ``raw_text`` keeps the exact source substring (including the claim
    number); all other fields are derived views. ``kind`` is DEPENDENT
    exactly when ``refs`` is non-empty.
    """

    number: int
    raw_text: str
    preamble: str
    transition: TransitionKind
    transition_text: str | None
    body_elements: tuple[str, ...]
    refs: tuple[DependencyRef, ...]
    kind: ClaimKind = field(init=False)

    def __post_init__(self) -> None:
        kind = ClaimKind.DEPENDENT if self.refs else ClaimKind.INDEPENDENT
        object.__setattr__(self, "kind", kind)

    @property
    def text_after_number(self) -> str:
        """Claim text with the leading ``N.`` stripped."""
        return split_claim_number(self.raw_text)[1]

    @property
    def number_offset(self) -> int:
        """Index in raw_text where the text after the claim number starts."""
        return split_claim_number(self.raw_text)[2]

    def to_dict(self) -> dict:
        return {
            "number": self.number,
            "kind": self.kind.value,
            "preamble": self.preamble,
            "transition": self.transition.value,
            "transition_text": self.transition_text,
            "body_elements": list(self.body_elements),
            "refs": [r.to_dict() for r in self.refs],
            "raw_text": self.raw_text,
        }


@dataclass(frozen=True)
class ClaimSet:
    """An ordered set of parsed claims plus the original source text."""

    claims: tuple[ParsedClaim, ...]
    source_text: str

    def __post_init__(self) -> None:
        numbers = [c.number for c in self.claims]
        if len(set(numbers)) != len(numbers):
            dupes = sorted({n for n in numbers if numbers.count(n) > 1})
            raise ClaimParseError(f"duplicate claim number(s): {dupes}")

    def numbers(self) -> list[int]:
        return [c.number for c in self.claims]

    @property
    def max_number(self) -> int:
        return max(c.number for c in self.claims)

    def claim(self, number: int) -> ParsedClaim:
        for c in self.claims:
            if c.number == number:
                return c
        raise KeyError(f"no claim numbered {number}")

    def __len__(self) -> int:
        return len(self.claims)

    def __iter__(self):
        return iter(self.claims)

    def to_dict(self) -> dict:
        return {"claims": [c.to_dict() for c in self.claims]}


# Candidate claim starts: "<int>." followed by whitespace. A candidate
# only counts when it sits at the start of the text, at the start of a
# line, or right after a sentence boundary ([.;:] plus whitespace), so
# decimal numbers and in-sentence numbers never split a claim.
_CLAIM_NUM_TOKEN_RE = re.compile(r"(\d+)\.(?=\s)")


def _is_claim_initial(text: str, pos: int) -> bool:
    before = text[:pos]
    stripped = before.rstrip(" \t")
    if not stripped or stripped.endswith("\n"):
        return True
    return stripped[-1] in ".;:" and len(stripped) < len(before)


def segment_claims(text: str) -> ClaimSet:
    """Split a raw claim-set string into parsed claims.

    Any prose before the first numbered claim (e.g. "What is claimed
    is:") is tolerated and excluded from the claims. Raises
    ClaimParseError when no claim-number pattern is found anywhere.
    """
    if not text.strip():
        raise ClaimParseError("empty claim text")
    starts = []
    for m in _CLAIM_NUM_TOKEN_RE.finditer(text):
        if _is_claim_initial(text, m.start()):
            starts.append((m.start(), int(m.group(1))))
    if not starts:
        raise ClaimParseError("no claim-number pattern found in text")
    claims = []
    for i, (pos, number) in enumerate(starts):
        end = starts[i + 1][0] if i + 1 < len(starts) else len(text)
        raw = text[pos:end].rstrip()
        claims.append(parse_claim(raw, number=number))
    return ClaimSet(claims=tuple(claims), source_text=text)


def parse_claim(raw: str, number: int | None = None) -> ParsedClaim:
    """Parse a single claim string into its structural parts.

    ``raw`` must begin with "<integer>." unless ``number`` is supplied.
    The transition is the first occurrence of a transitional-phrase
    lexeme; the preamble is whatever sits between the claim number and
    the transition; the body is the remainder split on semicolons with
    the final period stripped. A claim with no transition keeps its
    whole text (minus the number) as a single body element.
    """
    parsed_number, rest, rest_offset = split_claim_number(raw)
    if parsed_number is None and number is None:
        raise ClaimParseError(f"claim does not start with '<integer>.': {raw[:40]!r}")
    if parsed_number is None:
        rest = raw
        rest_offset = 0
    claim_number = parsed_number if parsed_number is not None else number
    if claim_number is not None and claim_number < 1:
        raise ClaimParseError(f"claim number must be positive, got {claim_number}")

    match = _LEXICON_RE.search(rest)
    kind_table = {p.replace(" ", ""): k for p, k in _LEXICON_TRANSITIONS}
    if match is not None:
        transition_text = match.group()
        transition = kind_table["".join(transition_text.casefold().split())]
    else:
        match = _OTHER_RE.search(rest)
        if match is not None:
            transition_text = match.group()
            transition = TransitionKind.OTHER
        else:
            transition_text = None
            transition = TransitionKind.NONE

    if match is not None:
        preamble = " ".join(rest[:match.start()].split()).rstrip(",").rstrip()
        body_elements = _split_body(rest[match.end():])
    else:
        # No transition: the whole text after the number is one body
        # element (terminal period stripped).
        preamble = ""
        single = " ".join(rest.split())
        if single.endswith("."):
            single = single[:-1]
        body_elements = [single] if single else []

    # Ref spans index the full raw text, so shift past the claim number.
    refs = tuple(
        DependencyRef(
            targets=r.targets,
            form=r.form,
            source_span=(r.source_span[0] + rest_offset, r.source_span[1] + rest_offset),
        )
        for r in extract_dependency_refs(rest)
    )
    return ParsedClaim(
        number=claim_number,
        raw_text=raw,
        preamble=preamble,
        transition=transition,
        transition_text=transition_text,
        body_elements=tuple(body_elements),
        refs=refs,
    )


def _split_body(body_text: str) -> list[str]:
    text = " ".join(body_text.split())
    text = text.lstrip(":").strip()
    if text.endswith("."):
        text = text[:-1]
    parts = [p.strip() for p in text.split(";")]
    return [p for p in parts if p]


# Dependency reference grammar. The anchor phrase introduces the
# reference; the list expression covers "1", "1 to 3", "1 or 2",
# "1 and 2", "1, 2, or 3", with optional repeated "claim" words.
_NUM_OR_RANGE = r"\d+(?:\s*(?:-|–|—|to|through)\s*\d+)?"
_REF_RE = re.compile(
    r"""
    \b(?:of|according\s+to|as\s+claimed\s+in|as\s+recited\s+in|
        as\s+set\s+forth\s+in|as\s+defined\s+in)\s+
    (?P<any>any\s+(?:one\s+)?of\s+)?
    (?:the\s+)?(?:preceding\s+)?
    claims?\s+
    (?P<list>
        {num}
        (?:\s*(?:,\s*(?:and\s+|or\s+)?|\s+(?:and|or)\s+)\s*(?:claims?\s+)?{num})*
    )
    """.format(num=_NUM_OR_RANGE),
    re.IGNORECASE | re.VERBOSE,
)
_RANGE_RE = re.compile(r"(\d+)\s*(?:-|–|—|to|through)\s*(\d+)", re.IGNORECASE)
_OR_WORD_RE = re.compile(r"\bor\b", re.IGNORECASE)


def extract_dependency_refs(text: str) -> list[DependencyRef]:
    """Find references to prior claims, in textual order.

    Recognizes "of claim N", "according to claim N", "as claimed in
    claim N", alternative forms ("any one of claims 1 to 3",
    "claim 1 or 2"), and conjunctive forms ("claims 1 and 2").
    Ranges expand to explicit target sets. Unmatched text yields no
    refs, never an error.
    """
    refs = []
    for m in _REF_RE.finditer(text):
        list_text = m.group("list")
        targets: set[int] = set()
        for rng in _RANGE_RE.finditer(list_text):
            lo, hi = int(rng.group(1)), int(rng.group(2))
            if lo > hi:
                lo, hi = hi, lo
            targets.update(range(lo, hi + 1))
        remainder = _RANGE_RE.sub(" ", list_text)
        targets.update(int(n) for n in re.findall(r"\d+", remainder))
        if not targets or any(t < 1 for t in targets):
            continue
        if len(targets) == 1:
            form = RefForm.SINGLE
        elif m.group("any") or _OR_WORD_RE.search(list_text) or _RANGE_RE.search(list_text):
            form = RefForm.MULTIPLE_ALTERNATIVE
        else:
            form = RefForm.MULTIPLE_CONJUNCTIVE
        refs.append(DependencyRef(
            targets=frozenset(targets),
            form=form,
            source_span=(m.start(), m.end()),
        ))
    return refs


def claim_ancestry(claim_set: ClaimSet, number: int) -> list[ParsedClaim]:
    """Chain from the root independent claim down to claim ``number``.

    Follows single dependency references; when a claim carries multiple
    targets, the lowest-numbered one is followed (deterministic, and
    recoverable from the returned claims' refs). Raises AncestryError
    for an absent claim number, a reference to a missing claim, or a
    forward/self reference.
    """
    try:
        current = claim_set.claim(number)
    except KeyError:
        raise AncestryError(f"claim {number} is not in the set") from None
    chain = [current]
    while current.refs:
        targets = sorted(t for ref in current.refs for t in ref.targets)
        target = targets[0]
        if target >= current.number:
            raise AncestryError(
                f"claim {current.number} references claim {target}, "
                "which is not an earlier claim"
            )
        try:
            current = claim_set.claim(target)
        except KeyError:
            raise AncestryError(
                f"claim {chain[-1].number} references missing claim {target}"
            ) from None
        chain.append(current)
    chain.reverse()
    return chain


def reassembles(claim: ParsedClaim) -> bool:
    """Check that preamble + transition + body reproduce the claim text.

    Comparison is up to whitespace/punctuation normalization; only
    meaningful when a transition was found.
    """
    if claim.transition is TransitionKind.NONE:
        return True
    joined = " ".join(
        [claim.preamble, claim.transition_text or ""] + list(claim.body_elements)
    )
    return squash(joined) == squash(claim.text_after_number)
