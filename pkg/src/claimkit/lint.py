"""Rule-based quality checks for generated claims and abstracts.

The error typology is a closed label set covering both abstract-side and
claim-side defects. Only the machine-checkable subset has detectors
here; the remaining labels exist so annotation files carrying human
judgments can always be represented. Detectors are total functions:
they return diagnostics, never raise on odd input.

Span convention: every Diagnostic span indexes the inspected text (the
candidate claim's raw text, or the abstract), so rendering
``text[start:end]`` always works.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from .claims import (
    AncestryError,
    ClaimKind,
    ClaimParseError,
    ClaimSet,
    ParsedClaim,
    claim_ancestry,
    segment_claims,
)
from .textutil import Token, normalize_claim_text, tokenize, tokenize_with_spans, word_count


class ErrorType(Enum):
    """Closed error typology for patent abstracts and claims."""

    # Abstract side
    GRAMMATICAL_ERRORS = "Grammatical Errors"
    IRRELEVANT_CONTENT = "Irrelevant Content"
    INCOMPLETE_COVERAGE = "Incomplete Coverage"
    OVERLY_WORDY = "Overly Wordy"
    CONTRADICTORY_INFORMATION = "Contradictory Information"
    UNCLARITY = "Unclarity"
    INEFFECTIVE_SUMMARIZATION = "Ineffective Summarization"
    # Claim side
    GRAMMATICAL_INACCURACY = "Grammatical Inaccuracy"
    PUNCTUATION_DISCREPANCY = "Punctuation Discrepancy"
    CLAIM_NUMBERING_ERROR = "Claim Numbering Error"
    PREAMBLE_INCONSISTENCY = "Preamble Inconsistency"
    TRANSITIONAL_PHRASE_ERROR = "Transitional Phrase Error"
    CLAIM_BODY_DISCONNECTION = "Claim Body Disconnection"
    NON_COMPLIANT_DEPENDENCY = "Non-Compliant Dependency"
    DEPENDENCY_CLARITY_ERROR = "Dependency Clarity Error"
    BROAD_SCOPE_DEPENDENT_CLAIM = "Broad Scope Dependent Claim"
    INSUFFICIENT_DIFFERENTIATION = "Insufficient Differentiation"
    VAGUENESS = "Vagueness"
    ANTECEDENT_REFERENCE_ERROR = "Antecedent Reference Error"
    TERMINOLOGICAL_INCONSISTENCY = "Terminological Inconsistency"
    WISHFUL_CLAIMING = "Wishful Claiming"
    VERBOSE_REDUNDANCY = "Verbose Redundancy"
    SUB_OPTIMAL_CLAIM_STRUCTURE = "Sub-Optimal Claim Structure"
    IRRELEVANT_MATTER = "Irrelevant Matter"
    CONTRADICTORY_CLAIMS = "Contradictory Claims"
    NON_DISTINCTIVE_REPETITION = "Non-Distinctive Repetition"

    @classmethod
    def from_label(cls, label: str) -> "ErrorType":
        """Resolve a label string, tolerating common longer variants."""
        key = " ".join(label.split()).casefold()
        try:
            return _LABEL_INDEX[key]
        except KeyError:
            raise ValueError(f"unknown error label: {label!r}") from None


# Longer label variants seen in annotation exports map onto the
# canonical enum values.
_LABEL_ALIASES = {
    "Overly Wordy or Lengthy": ErrorType.OVERLY_WORDY,
    "Non-Distinctive Claim Repetition": ErrorType.NON_DISTINCTIVE_REPETITION,
    "Non-compliant Dependency with instruction": ErrorType.NON_COMPLIANT_DEPENDENCY,
    "Antecedent Reference Errors": ErrorType.ANTECEDENT_REFERENCE_ERROR,
    "Broad Scope Dependent Claims": ErrorType.BROAD_SCOPE_DEPENDENT_CLAIM,
    "Insufficient Differentiation of Independent Claims": ErrorType.INSUFFICIENT_DIFFERENTIATION,
    "Irrelevant Matter Introduction": ErrorType.IRRELEVANT_MATTER,
    "Preamble Inconsistency Error": ErrorType.PREAMBLE_INCONSISTENCY,
}

_LABEL_INDEX: dict[str, ErrorType] = {}
for _et in ErrorType:
    _LABEL_INDEX[_et.value.casefold()] = _et
for _alias, _et in _LABEL_ALIASES.items():
    _LABEL_INDEX[_alias.casefold()] = _et


class Severity(Enum):
    ERROR = "error"
    ADVISORY = "advisory"


@dataclass(frozen=True)
class Diagnostic:
    """One detected issue: typology label, span, severity, message."""

    error: ErrorType
    span: tuple[int, int]
    severity: Severity
    message: str
    detector: str

    def to_dict(self) -> dict:
        return {
            "error": self.error.value,
            "severity": self.severity.value,
            "start": self.span[0],
            "end": self.span[1],
            "message": self.message,
            "detector": self.detector,
        }


DEFAULT_VAGUENESS_LEXICON: tuple[str, ...] = (
    "substantially",
    "about",
    "approximately",
    "relatively",
    "thin",
    "thick",
    "strong",
    "large",
    "small",
    "optionally",
)

ABSTRACT_WORD_LIMIT = 150
VERBATIM_COPY_THRESHOLD = 0.8
REPEAT_MIN_SEQ = 3
REPEAT_MIN_COUNT = 3


def load_lexicon(path: str | Path) -> tuple[str, ...]:
    """Read a one-term-per-line lexicon file; blank lines and # comments skipped."""
    terms = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        term = line.strip()
        if term and not term.startswith("#"):
            terms.append(term)
    return tuple(terms)


# ---------------------------------------------------------------------------
# Repetition loops

def detect_repetition_loop(text: str) -> tuple[int, int] | None:
    """Span of the first maximal repeated-phrase region, if any.

    Fires when a contiguous sequence of at least REPEAT_MIN_SEQ tokens
    repeats consecutively at least REPEAT_MIN_COUNT times. Tokens are
    whitespace-delimited and case-folded. Returns character offsets
    covering the whole repeated region, or None.
    """
    toks = tokenize_with_spans(text)
    words = [t.text.casefold() for t in toks]
    n = len(words)
    for i in range(n):
        best_total = 0
        best_len = 0
        max_len = (n - i) // REPEAT_MIN_COUNT
        for seq_len in range(REPEAT_MIN_SEQ, max_len + 1):
            seq = words[i:i + seq_len]
            reps = 1
            while words[i + reps * seq_len:i + (reps + 1) * seq_len] == seq:
                reps += 1
            if reps >= REPEAT_MIN_COUNT:
                total = reps * seq_len
                if total > best_total or (total == best_total and seq_len < best_len):
                    best_total = total
                    best_len = seq_len
        if best_total:
            return (toks[i].start, toks[i + best_total - 1].end)
    return None


# ---------------------------------------------------------------------------
# Punctuation

# Tokens that legitimately end with a period mid-sentence.
_ABBREVIATIONS = frozenset({
    "no", "nos", "fig", "figs", "pat", "ser", "app", "vol", "ref",
    "eq", "eqs", "etc", "al", "approx", "cf", "e.g", "i.e", "u.s",
    "mr", "mrs", "dr", "jr", "sr", "st",
})

_MID_SENTENCE_RE = re.compile(r"\.\s+[A-Z]")


def _punctuation_issues(text: str, offset: int = 0) -> list[Diagnostic]:
    """Punctuation checks over claim text (claim number already removed).

    ``offset`` shifts spans so they index the original inspected string.
    """
    out = []
    stripped = text.rstrip()
    if not (stripped.endswith(".") and not stripped.endswith("..")):
        out.append(Diagnostic(
            error=ErrorType.PUNCTUATION_DISCREPANCY,
            span=(offset, offset + len(stripped)),
            severity=Severity.ERROR,
            message="claim must end with exactly one period",
            detector="punctuation",
        ))
    final_dot = len(stripped) - 1 if stripped.endswith(".") else len(stripped)
    for m in _MID_SENTENCE_RE.finditer(text):
        dot = m.start()
        if dot >= final_dot:
            continue
        head = text[:dot].split()
        prev = head[-1].casefold() if head else ""
        prev = prev.lstrip("(\"'")
        if prev in _ABBREVIATIONS or prev.rstrip(".") in _ABBREVIATIONS:
            continue
        out.append(Diagnostic(
            error=ErrorType.PUNCTUATION_DISCREPANCY,
            span=(offset + dot, offset + dot + 1),
            severity=Severity.ERROR,
            message="sentence-terminal period inside the claim",
            detector="punctuation",
        ))
    return out


def check_punctuation(claim: ParsedClaim) -> list[Diagnostic]:
    """PunctuationDiscrepancy for a missing/duplicated terminal period or
    a sentence break inside the claim."""
    return _punctuation_issues(claim.text_after_number, offset=claim.number_offset)


# ---------------------------------------------------------------------------
# Numbering and dependencies

def check_numbering(context: ClaimSet, candidate: ParsedClaim) -> list[Diagnostic]:
    """ClaimNumberingError unless the candidate continues the sequence."""
    expected = context.max_number + 1
    if candidate.number == expected:
        return []
    return [Diagnostic(
        error=ErrorType.CLAIM_NUMBERING_ERROR,
        span=(0, len(candidate.raw_text)),
        severity=Severity.ERROR,
        message=f"expected claim number {expected}, got {candidate.number}",
        detector="numbering",
    )]


def check_dependency(
    context: ClaimSet,
    candidate: ParsedClaim,
    required: ClaimKind | None,
) -> list[Diagnostic]:
    """Dependency-kind compliance plus reference-clarity checks.

    NonCompliantDependency fires when the candidate's kind differs from
    the required kind. DependencyClarityError fires for self/forward
    references, references to claims absent from the context, and
    conjunctive (non-alternative) multiple dependencies.
    """
    out = []
    if required is not None and candidate.kind != required:
        out.append(Diagnostic(
            error=ErrorType.NON_COMPLIANT_DEPENDENCY,
            span=(0, len(candidate.raw_text)),
            severity=Severity.ERROR,
            message=(
                f"claim is {candidate.kind.value} but the required kind "
                f"is {required.value}"
            ),
            detector="dependency-compliance",
        ))
    numbers = set(context.numbers())
    for ref in candidate.refs:
        for target in ref.sorted_targets:
            if target >= candidate.number:
                out.append(Diagnostic(
                    error=ErrorType.DEPENDENCY_CLARITY_ERROR,
                    span=ref.source_span,
                    severity=Severity.ERROR,
                    message=(
                        f"reference to claim {target} is not a reference "
                        "to an earlier claim"
                    ),
                    detector="dependency-clarity",
                ))
            elif target not in numbers:
                out.append(Diagnostic(
                    error=ErrorType.DEPENDENCY_CLARITY_ERROR,
                    span=ref.source_span,
                    severity=Severity.ERROR,
                    message=f"reference to claim {target}, which does not exist",
                    detector="dependency-clarity",
                ))
        if ref.form.value == "multiple_conjunctive":
            out.append(Diagnostic(
                error=ErrorType.DEPENDENCY_CLARITY_ERROR,
                span=ref.source_span,
                severity=Severity.ERROR,
                message=(
                    "multiple dependency must use the alternative form "
                    "(\"any one of\" / \"or\"), not a conjunctive list"
                ),
                detector="dependency-clarity",
            ))
    return out


# ---------------------------------------------------------------------------
# Distinctiveness

def check_distinctiveness(context: ClaimSet, candidate_text: str) -> list[Diagnostic]:
    """NonDistinctiveRepetition when the candidate equals any context claim.

    Comparison ignores the leading claim number, letter case, and
    whitespace layout.
    """
    norm = normalize_claim_text(candidate_text)
    for claim in context:
        if normalize_claim_text(claim.raw_text) == norm:
            return [Diagnostic(
                error=ErrorType.NON_DISTINCTIVE_REPETITION,
                span=(0, len(candidate_text)),
                severity=Severity.ERROR,
                message=f"candidate repeats claim {claim.number} verbatim",
                detector="distinctiveness",
            )]
    return []


# ---------------------------------------------------------------------------
# Antecedent basis

# Function words and claim boilerplate that terminate a noun phrase.
_NP_BREAK = frozenset("""
a an the said of to in on at by for with from as into onto upon over under
above below between among through during before after within without about
against along around behind beside beyond near per via and or but nor is are
was were be been being am has have had do does did can could may might must
shall should will would not no that which who whom whose when where whether
while wherein whereby whereupon thereof therein thereto thereby thereon
therefrom herein hereby hereof each every either neither both all any some
such same other another so than then too very also further furthermore
moreover respectively claim claims one least more
comprising comprises comprise consisting consists consist including includes
include having
""".split())

# Collective nouns whose "<collective> of X" construction introduces X.
_COLLECTIVES = frozenset({
    "plurality", "number", "set", "pair", "series", "group", "array",
    "multiplicity",
})

# -ing words that are almost always nouns in claim language.
_ING_NOUNS = frozenset({
    "housing", "opening", "spring", "casing", "bearing", "coating",
    "coupling", "lining", "fitting", "tubing", "piping",
})

_INTRO_QUANTIFIERS = (("at", "least", "one"), ("one", "or", "more"))


def _verb_like(word: str) -> bool:
    if word.endswith("ed") and len(word) > 4:
        return True
    if word.endswith("ing") and len(word) >= 5 and word not in _ING_NOUNS:
        return True
    return False


def _norm_word(token: str) -> str:
    return token.strip("()[]{}\"'`.,;:!?").casefold()


def _fold_plural(phrase: str) -> str:
    words = phrase.split()
    if words:
        last = words[-1]
        if len(last) > 3 and last.endswith("s") and not last.endswith("ss"):
            words[-1] = last[:-1]
    return " ".join(words)


_TERMINAL_PUNCT = ".,;:"


@dataclass(frozen=True)
class _Mention:
    """A noun phrase introduced ("a X") or referenced ("the X"/"said X")."""

    phrase: str
    marker: str
    span: tuple[int, int]
    is_reference: bool


def _collect_phrase(toks: list[Token], j: int) -> tuple[str, int, int]:
    """Collect noun-phrase words starting at token index ``j``.

    Returns (normalized phrase, end char offset, next token index). The
    first token is always taken even when verb-like, so heads such as
    "spring" survive; later verb-like tokens end the phrase.
    """
    words: list[str] = []
    end = toks[j].start if j < len(toks) else 0
    while j < len(toks) and len(words) < 6:
        raw = toks[j].text
        word = _norm_word(raw)
        if not word or word.isdigit() or word in _NP_BREAK:
            if len(words) == 1 and words[0] in _COLLECTIVES and word == "of":
                words = []
                j += 1
                continue
            break
        if words and _verb_like(word):
            break
        words.append(word)
        end = toks[j].end
        j += 1
        if raw[-1] in _TERMINAL_PUNCT:
            break
    return " ".join(words), end, j


def _scan_mentions(text: str) -> list[_Mention]:
    """Find article-marked noun phrases in claim text, in textual order."""
    toks = tokenize_with_spans(text)
    norm = [_norm_word(t.text) for t in toks]
    mentions = []
    i = 0
    while i < len(toks):
        word = norm[i]
        broke = toks[i].text[-1] in _TERMINAL_PUNCT if toks[i].text else False
        if word in ("a", "an") and not broke:
            phrase, end, nxt = _collect_phrase(toks, i + 1)
            if phrase:
                mentions.append(_Mention(
                    phrase=_fold_plural(phrase),
                    marker=word,
                    span=(toks[i].start, end),
                    is_reference=False,
                ))
            i = max(nxt, i + 1)
            continue
        matched_quant = None
        for quant in _INTRO_QUANTIFIERS:
            if tuple(norm[i:i + len(quant)]) == quant:
                matched_quant = quant
                break
        if matched_quant and not broke:
            phrase, end, nxt = _collect_phrase(toks, i + len(matched_quant))
            if phrase:
                mentions.append(_Mention(
                    phrase=_fold_plural(phrase),
                    marker=" ".join(matched_quant),
                    span=(toks[i].start, end),
                    is_reference=False,
                ))
            i = max(nxt, i + 1)
            continue
        if word in ("the", "said") and not broke:
            j = i + 1
            for quant in _INTRO_QUANTIFIERS:
                if tuple(norm[j:j + len(quant)]) == quant:
                    j += len(quant)
                    break
            phrase, end, nxt = _collect_phrase(toks, j)
            if phrase:
                mentions.append(_Mention(
                    phrase=_fold_plural(phrase),
                    marker=word,
                    span=(toks[i].start, end),
                    is_reference=True,
                ))
            i = max(nxt, i + 1)
            continue
        i += 1
    return mentions


def _phrase_introduced(phrase: str, introduced: set[str]) -> bool:
    if phrase in introduced:
        return True
    return any(intro.endswith(" " + phrase) for intro in introduced)


def check_antecedent_basis(chain: list[ParsedClaim]) -> list[Diagnostic]:
    """AntecedentReferenceError for "the X"/"said X" without a prior "a X".

    ``chain`` is ordered root-first; the last claim is the one under
    inspection. Introductions ("a"/"an"/"at least one"/"one or more")
    accumulate over the whole chain; references in the last claim must
    be introduced earlier in the chain or earlier in the same claim.
    Spans index the last claim's raw text.
    """
    if not chain:
        return []
    introduced: set[str] = set()
    for claim in chain[:-1]:
        for mention in _scan_mentions(claim.raw_text):
            if not mention.is_reference:
                introduced.add(mention.phrase)
    out = []
    last = chain[-1]
    for mention in _scan_mentions(last.raw_text):
        if mention.is_reference:
            if not _phrase_introduced(mention.phrase, introduced):
                out.append(Diagnostic(
                    error=ErrorType.ANTECEDENT_REFERENCE_ERROR,
                    span=mention.span,
                    severity=Severity.ERROR,
                    message=(
                        f'"{mention.marker} {mention.phrase}" lacks an '
                        "antecedent basis"
                    ),
                    detector="antecedent-basis",
                ))
        else:
            introduced.add(mention.phrase)
    return out


# ---------------------------------------------------------------------------
# Claim body and transition

def check_claim_body(claim: ParsedClaim) -> list[Diagnostic]:
    """Structure checks for independent claims.

    A standard-lexicon transition must introduce at least two body
    elements; a non-lexicon or missing transition is itself an error on
    an independent claim. Dependent claims are exempt (they commonly
    have no transition at all).
    """
    if claim.kind is not ClaimKind.INDEPENDENT:
        return []
    out = []
    if claim.transition.is_lexicon:
        if len(claim.body_elements) < 2:
            out.append(Diagnostic(
                error=ErrorType.CLAIM_BODY_DISCONNECTION,
                span=(0, len(claim.raw_text)),
                severity=Severity.ERROR,
                message=(
                    f"claim body lists {len(claim.body_elements)} element(s); "
                    "an independent claim needs at least two"
                ),
                detector="claim-body",
            ))
    else:
        if claim.transition_text is not None:
            pos = claim.raw_text.find(claim.transition_text)
            span = (pos, pos + len(claim.transition_text)) if pos >= 0 else (0, len(claim.raw_text))
            detail = f'non-standard transitional phrase "{claim.transition_text}"'
        else:
            span = (0, len(claim.raw_text))
            detail = "no transitional phrase found"
        out.append(Diagnostic(
            error=ErrorType.TRANSITIONAL_PHRASE_ERROR,
            span=span,
            severity=Severity.ERROR,
            message=f"{detail} on an independent claim",
            detector="transitional-phrase",
        ))
    return out


# ---------------------------------------------------------------------------
# Vagueness and terminology

def check_vagueness(
    claim: ParsedClaim,
    lexicon: tuple[str, ...] = DEFAULT_VAGUENESS_LEXICON,
) -> list[Diagnostic]:
    """Advisory Vagueness on each whole-word lexicon hit."""
    out = []
    for term in lexicon:
        pattern = re.compile(r"\b" + re.escape(term) + r"\b", re.IGNORECASE)
        for m in pattern.finditer(claim.raw_text):
            out.append(Diagnostic(
                error=ErrorType.VAGUENESS,
                span=(m.start(), m.end()),
                severity=Severity.ADVISORY,
                message=f'relative or vague term "{m.group()}"',
                detector="vagueness",
            ))
    out.sort(key=lambda d: d.span)
    return out


def check_term_consistency(claim: ParsedClaim) -> list[Diagnostic]:
    """Advisory when the same phrase is referenced with both "the" and "said"."""
    by_marker: dict[str, dict[str, _Mention]] = {"the": {}, "said": {}}
    for mention in _scan_mentions(claim.raw_text):
        if mention.is_reference and mention.phrase not in by_marker[mention.marker]:
            by_marker[mention.marker][mention.phrase] = mention
    out = []
    for phrase in sorted(set(by_marker["the"]) & set(by_marker["said"])):
        later = max(
            by_marker["the"][phrase], by_marker["said"][phrase],
            key=lambda mention: mention.span,
        )
        out.append(Diagnostic(
            error=ErrorType.TERMINOLOGICAL_INCONSISTENCY,
            span=later.span,
            severity=Severity.ADVISORY,
            message=f'"{phrase}" is referenced with both "the" and "said"',
            detector="said-the-consistency",
        ))
    return out


def _preamble_head(text: str) -> str | None:
    words = [_norm_word(w) for w in text.split()]
    words = [w for w in words if w and not w.isdigit() and w not in _NP_BREAK]
    if not words:
        return None
    return _fold_plural(words[-1])


def check_preamble_consistency(
    root: ParsedClaim, candidate: ParsedClaim
) -> list[Diagnostic]:
    """Advisory PreambleInconsistency when the dependent claim's opening
    noun differs from the root claim's preamble head."""
    if not candidate.refs:
        return []
    first_ref_start = min(ref.source_span[0] for ref in candidate.refs)
    dep_preamble = candidate.raw_text[candidate.number_offset:first_ref_start]
    dep_head = _preamble_head(dep_preamble)
    root_head = _preamble_head(root.preamble)
    if dep_head is None or root_head is None or dep_head == root_head:
        return []
    return [Diagnostic(
        error=ErrorType.PREAMBLE_INCONSISTENCY,
        span=(candidate.number_offset, first_ref_start),
        severity=Severity.ADVISORY,
        message=(
            f'preamble names "{dep_head}" but the root claim\'s preamble '
            f'names "{root_head}"'
        ),
        detector="preamble-consistency",
    )]


# ---------------------------------------------------------------------------
# Entry points

def _candidate_chain(context: ClaimSet, candidate: ParsedClaim) -> list[ParsedClaim]:
    """Root-first ancestry for the candidate, falling back to the candidate
    alone when its references do not resolve inside the context."""
    if not candidate.refs:
        return [candidate]
    targets = sorted(t for ref in candidate.refs for t in ref.targets)
    target = targets[0]
    if target >= candidate.number or target not in set(context.numbers()):
        return [candidate]
    try:
        return claim_ancestry(context, target) + [candidate]
    except AncestryError:
        return [candidate]


def lint_next_claim(
    context: ClaimSet,
    candidate: ParsedClaim,
    required: ClaimKind | None = None,
    vagueness_lexicon: tuple[str, ...] = DEFAULT_VAGUENESS_LEXICON,
) -> list[Diagnostic]:
    """Run all claim detectors against a generated next claim.

    Detectors run in a fixed order and never short-circuit; the result
    is every diagnostic that fired, with spans into the candidate's raw
    text.
    """
    out: list[Diagnostic] = []
    loop = detect_repetition_loop(candidate.raw_text)
    if loop is not None:
        out.append(Diagnostic(
            error=ErrorType.GRAMMATICAL_INACCURACY,
            span=loop,
            severity=Severity.ERROR,
            message="repeated phrase loop",
            detector="repetition-loop",
        ))
    out.extend(check_punctuation(candidate))
    out.extend(check_numbering(context, candidate))
    out.extend(check_dependency(context, candidate, required))
    out.extend(check_distinctiveness(context, candidate.raw_text))
    chain = _candidate_chain(context, candidate)
    out.extend(check_antecedent_basis(chain))
    out.extend(check_claim_body(candidate))
    out.extend(check_vagueness(candidate, vagueness_lexicon))
    out.extend(check_term_consistency(candidate))
    if len(chain) > 1:
        out.extend(check_preamble_consistency(chain[0], candidate))
    return out


def _claim_texts(claims_text: str) -> list[str]:
    try:
        return [c.text_after_number for c in segment_claims(claims_text)]
    except ClaimParseError:
        return [claims_text]


def _longest_common_run(a: list[str], b: list[str]) -> int:
    """Length of the longest common contiguous token run."""
    if not a or not b:
        return 0
    prev = [0] * (len(b) + 1)
    best = 0
    for i in range(1, len(a) + 1):
        cur = [0] * (len(b) + 1)
        for j in range(1, len(b) + 1):
            if a[i - 1] == b[j - 1]:
                cur[j] = prev[j - 1] + 1
                if cur[j] > best:
                    best = cur[j]
        prev = cur
    return best


def verbatim_copy_ratio(claim_text: str, abstract_text: str) -> float:
    """Fraction of the abstract covered by its longest token run shared
    with the claim."""
    abstract_tokens = tokenize(abstract_text)
    if not abstract_tokens:
        return 0.0
    run = _longest_common_run(tokenize(claim_text), abstract_tokens)
    return run / len(abstract_tokens)


def lint_abstract(claims_text: str, abstract_text: str) -> list[Diagnostic]:
    """Run the abstract detectors: word limit, verbatim claim copying,
    and repetition loops. Other abstract labels are annotation-only."""
    out: list[Diagnostic] = []
    words = word_count(abstract_text)
    if words > ABSTRACT_WORD_LIMIT:
        out.append(Diagnostic(
            error=ErrorType.OVERLY_WORDY,
            span=(0, len(abstract_text)),
            severity=Severity.ERROR,
            message=f"abstract has {words} words; the limit is {ABSTRACT_WORD_LIMIT}",
            detector="word-limit",
        ))
    for claim_text in _claim_texts(claims_text):
        ratio = verbatim_copy_ratio(claim_text, abstract_text)
        if ratio >= VERBATIM_COPY_THRESHOLD:
            out.append(Diagnostic(
                error=ErrorType.INEFFECTIVE_SUMMARIZATION,
                span=(0, len(abstract_text)),
                severity=Severity.ERROR,
                message=(
                    f"abstract copies a claim nearly verbatim "
                    f"(copy ratio {ratio:.2f})"
                ),
                detector="verbatim-copy",
            ))
            break
    loop = detect_repetition_loop(abstract_text)
    if loop is not None:
        out.append(Diagnostic(
            error=ErrorType.GRAMMATICAL_ERRORS,
            span=loop,
            severity=Severity.ERROR,
            message="repeated phrase loop",
            detector="repetition-loop",
        ))
    return out
