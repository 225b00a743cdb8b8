from __future__ import annotations

import json

import pytest

from claimkit.claims import ClaimKind, parse_claim, segment_claims
from claimkit.lint import (
    ErrorType,
    Severity,
    check_antecedent_basis,
    check_claim_body,
    check_dependency,
    check_distinctiveness,
    check_numbering,
    check_punctuation,
    check_vagueness,
    detect_repetition_loop,
    lint_abstract,
    lint_next_claim,
    verbatim_copy_ratio,
)

from conftest import HALLUCINATED_ABSTRACT, LOOP_PHRASE, PENCIL_CLAIMS


def errors_of(diags):
    return [d.error for d in diags]


class TestErrorType:
    def test_canonical_label_roundtrip(self):
        for et in ErrorType:
            assert ErrorType.from_label(et.value) is et

    def test_alias_labels(self):
        assert ErrorType.from_label("Overly Wordy or Lengthy") is ErrorType.OVERLY_WORDY
        assert (
            ErrorType.from_label("Non-Distinctive Claim Repetition")
            is ErrorType.NON_DISTINCTIVE_REPETITION
        )

    def test_unknown_label(self):
        with pytest.raises(ValueError, match="Totally Fine"):
            ErrorType.from_label("Totally Fine")

    def test_typology_is_complete(self):
        # 7 abstract labels + 19 claim labels.
        assert len(ErrorType) == 26


class TestRepetitionLoop:
    def test_minimal_three_by_three(self):
        text = "a b c a b c a b c"
        assert detect_repetition_loop(text) == (0, len(text))

    def test_two_repeats_do_not_fire(self):
        assert detect_repetition_loop("a b a b") is None

    def test_short_sequences_do_not_fire(self):
        assert detect_repetition_loop("x y x y x y") is None

    def test_hallucinated_tail_span(self):
        span = detect_repetition_loop(HALLUCINATED_ABSTRACT)
        assert span is not None
        start, end = span
        region = HALLUCINATED_ABSTRACT[start:end]
        assert region == LOOP_PHRASE + (" " + LOOP_PHRASE) * 3

    def test_case_folded(self):
        assert detect_repetition_loop("A b C a B c a b c") is not None


class TestPunctuation:
    def test_pencil_claim_is_clean(self):
        cs = segment_claims(PENCIL_CLAIMS)
        assert check_punctuation(cs.claim(1)) == []
        assert check_punctuation(cs.claim(2)) == []

    def test_missing_terminal_period(self):
        c = parse_claim("1. A device comprising a lever and a cam")
        diags = check_punctuation(c)
        assert errors_of(diags) == [ErrorType.PUNCTUATION_DISCREPANCY]

    def test_double_terminal_period(self):
        c = parse_claim("1. A device comprising a lever and a cam..")
        assert errors_of(check_punctuation(c)) == [ErrorType.PUNCTUATION_DISCREPANCY]

    def test_mid_claim_sentence_break(self):
        c = parse_claim("1. A device. It also has a lever.")
        diags = check_punctuation(c)
        assert errors_of(diags) == [ErrorType.PUNCTUATION_DISCREPANCY]
        start, end = diags[0].span
        assert c.raw_text[start:end] == "."
        # The flagged period is the one after "device", not the final one.
        assert start == c.raw_text.index("device.") + len("device")

    def test_abbreviations_exempt(self):
        c = parse_claim("1. A bracket as shown in FIG. A comprising: a base; and an arm.")
        assert check_punctuation(c) == []

    def test_claim_number_period_exempt(self):
        c = parse_claim("1. A device comprising: a lever; and a cam.")
        assert check_punctuation(c) == []


class TestNumbering:
    def test_consecutive_ok(self, device_set):
        c = parse_claim("4. The device of claim 1, wherein the cam is steel.")
        assert check_numbering(device_set, c) == []

    def test_duplicate_number(self, device_set):
        c = parse_claim("3. The device of claim 1, wherein the cam is steel.")
        assert errors_of(check_numbering(device_set, c)) == [ErrorType.CLAIM_NUMBERING_ERROR]

    def test_skipped_number(self, device_set):
        c = parse_claim("6. The device of claim 1, wherein the cam is steel.")
        assert errors_of(check_numbering(device_set, c)) == [ErrorType.CLAIM_NUMBERING_ERROR]

    def test_exhaustive_boundary(self):
        # Numbering fires iff candidate.number != max+1, over small grids.
        for size in range(1, 6):
            context = segment_claims("\n".join(
                f"{i}. A part number {i} comprising: a rod; and a cap."
                if i == 1 else f"{i}. The part of claim 1, variant {i}."
                for i in range(1, size + 1)
            ))
            for number in range(1, 11):
                candidate = parse_claim(
                    f"{number}. The part of claim 1, wherein it is blue."
                )
                fired = bool(check_numbering(context, candidate))
                assert fired == (number != size + 1)


class TestDependency:
    def test_compliant_dependent(self, device_set):
        c = parse_claim("4. The device of claim 1, wherein the cam is steel.")
        assert check_dependency(device_set, c, ClaimKind.DEPENDENT) == []

    def test_non_compliant_kind(self, device_set):
        c = parse_claim("4. The device of claim 1, wherein the cam is steel.")
        diags = check_dependency(device_set, c, ClaimKind.INDEPENDENT)
        assert ErrorType.NON_COMPLIANT_DEPENDENCY in errors_of(diags)

    def test_nonexistent_target(self, device_set):
        c = parse_claim("4. The device of claim 7, wherein the cam is steel.")
        diags = check_dependency(device_set, c, ClaimKind.DEPENDENT)
        assert ErrorType.DEPENDENCY_CLARITY_ERROR in errors_of(diags)

    def test_self_reference(self, device_set):
        c = parse_claim("4. The device of claim 4, wherein the cam is steel.")
        diags = check_dependency(device_set, c, ClaimKind.DEPENDENT)
        assert ErrorType.DEPENDENCY_CLARITY_ERROR in errors_of(diags)

    def test_conjunctive_multiple_flagged(self, device_set):
        c = parse_claim("4. The device of claims 1 and 2, wherein the cam is steel.")
        diags = check_dependency(device_set, c, ClaimKind.DEPENDENT)
        assert ErrorType.DEPENDENCY_CLARITY_ERROR in errors_of(diags)

    def test_alternative_multiple_ok(self, device_set):
        c = parse_claim("4. The device of any one of claims 1 to 3, wherein the cam is steel.")
        assert check_dependency(device_set, c, ClaimKind.DEPENDENT) == []

    def test_no_required_kind_skips_compliance(self, device_set):
        c = parse_claim("4. The device of claim 1, wherein the cam is steel.")
        assert check_dependency(device_set, c, None) == []


class TestAntecedentBasis:
    def test_pencil_claim_2_all_introduced(self, pencil_set):
        chain = [pencil_set.claim(1), pencil_set.claim(2)]
        assert check_antecedent_basis(chain) == []

    def test_missing_antecedent(self, device_set):
        candidate = parse_claim("4. The device of claim 1, wherein the flange is red.")
        diags = check_antecedent_basis([device_set.claim(1), candidate])
        assert errors_of(diags) == [ErrorType.ANTECEDENT_REFERENCE_ERROR]
        start, end = diags[0].span
        assert candidate.raw_text[start:end] == "the flange"

    def test_same_claim_introduction(self):
        c = parse_claim("1. A widget comprising a lever, the lever being curved.")
        assert check_antecedent_basis([c]) == []

    def test_said_reference(self, device_set):
        candidate = parse_claim("4. The device of claim 1, wherein said lever is curved.")
        assert check_antecedent_basis([device_set.claim(1), candidate]) == []

    def test_quantifier_introduction(self):
        context = parse_claim(
            "1. A panel comprising: at least one button; and a frame."
        )
        ok = parse_claim("2. The panel of claim 1, wherein the at least one button is round.")
        assert check_antecedent_basis([context, ok]) == []
        plain = parse_claim("2. The panel of claim 1, wherein the button is round.")
        assert check_antecedent_basis([context, plain]) == []

    def test_plurality_of_introduction(self):
        context = parse_claim("1. A tray comprising: a plurality of slots; and a lid.")
        ok = parse_claim("2. The tray of claim 1, wherein the slots are tapered.")
        assert check_antecedent_basis([context, ok]) == []


class TestClaimBody:
    def test_pencil_claim_1_ok(self, pencil_set):
        assert check_claim_body(pencil_set.claim(1)) == []

    def test_single_element_fires(self):
        c = parse_claim("1. A device comprising a lever.")
        assert errors_of(check_claim_body(c)) == [ErrorType.CLAIM_BODY_DISCONNECTION]

    def test_non_lexicon_transition_fires(self):
        c = parse_claim("1. A device made with a lever and a cam.")
        diags = check_claim_body(c)
        assert errors_of(diags) == [ErrorType.TRANSITIONAL_PHRASE_ERROR]
        start, end = diags[0].span
        assert c.raw_text[start:end] == "made with"

    def test_missing_transition_fires_on_independent(self):
        c = parse_claim("1. A device with no transition at all.")
        assert errors_of(check_claim_body(c)) == [ErrorType.TRANSITIONAL_PHRASE_ERROR]

    def test_dependent_claims_exempt(self, pencil_set):
        assert check_claim_body(pencil_set.claim(2)) == []


class TestVagueness:
    def test_default_lexicon_hit(self):
        c = parse_claim("1. A block comprising: a substantially flat surface; and a rim.")
        diags = check_vagueness(c)
        assert errors_of(diags) == [ErrorType.VAGUENESS]
        assert diags[0].severity is Severity.ADVISORY
        start, end = diags[0].span
        assert c.raw_text[start:end] == "substantially"

    def test_pencil_claim_clean(self, pencil_set):
        assert check_vagueness(pencil_set.claim(1)) == []

    def test_custom_lexicon(self):
        c = parse_claim("1. A rig comprising: a flexible rod; and a base.")
        diags = check_vagueness(c, lexicon=("flexible",))
        assert len(diags) == 1
        start, end = diags[0].span
        assert c.raw_text[start:end] == "flexible"

    def test_whole_word_only(self):
        c = parse_claim("1. A thinking machine comprising: a core; and a shell.")
        assert check_vagueness(c, lexicon=("thin",)) == []


class TestDistinctiveness:
    def test_exact_copy(self, device_set):
        diags = check_distinctiveness(device_set, device_set.claims[1].raw_text)
        assert errors_of(diags) == [ErrorType.NON_DISTINCTIVE_REPETITION]

    def test_whitespace_case_and_number_normalized(self, device_set):
        restyled = "9.   the DEVICE of claim 1,  wherein the cam is round."
        diags = check_distinctiveness(device_set, restyled)
        assert errors_of(diags) == [ErrorType.NON_DISTINCTIVE_REPETITION]

    def test_fresh_claim_is_distinct(self, device_set):
        assert check_distinctiveness(
            device_set, "4. The device of claim 1, wherein the cam is oval."
        ) == []


class TestLintNextClaim:
    def test_clean_dependent_candidate(self, device_set):
        candidate = parse_claim("4. The device of claim 1, wherein the lever is long.")
        assert lint_next_claim(device_set, candidate, required=ClaimKind.DEPENDENT) == []

    def test_verbatim_copy_contains_repetition(self, device_set):
        for claim in device_set:
            for required in (ClaimKind.DEPENDENT, ClaimKind.INDEPENDENT, None):
                candidate = parse_claim(claim.raw_text)
                diags = lint_next_claim(device_set, candidate, required=required)
                assert ErrorType.NON_DISTINCTIVE_REPETITION in errors_of(diags)

    def test_copy_with_renumbering_still_fires(self, device_set):
        renumbered = "4. " + device_set.claim(2).text_after_number
        diags = lint_next_claim(device_set, parse_claim(renumbered), required=ClaimKind.DEPENDENT)
        assert ErrorType.NON_DISTINCTIVE_REPETITION in errors_of(diags)

    def test_bad_numbering(self, device_set):
        candidate = parse_claim("6. The device of claim 1, wherein the lever is long.")
        diags = lint_next_claim(device_set, candidate, required=ClaimKind.DEPENDENT)
        assert ErrorType.CLAIM_NUMBERING_ERROR in errors_of(diags)

    def test_never_short_circuits(self, device_set):
        # Wrong number, wrong kind, missing antecedent, vague term: all fire.
        candidate = parse_claim(
            "9. The device of claim 1, wherein the flange is substantially thin."
        )
        diags = lint_next_claim(device_set, candidate, required=ClaimKind.INDEPENDENT)
        found = set(errors_of(diags))
        assert ErrorType.CLAIM_NUMBERING_ERROR in found
        assert ErrorType.NON_COMPLIANT_DEPENDENCY in found
        assert ErrorType.ANTECEDENT_REFERENCE_ERROR in found
        assert ErrorType.VAGUENESS in found

    def test_preamble_inconsistency_advisory(self, device_set):
        candidate = parse_claim("4. The gearbox of claim 1, wherein the lever is long.")
        diags = lint_next_claim(device_set, candidate, required=ClaimKind.DEPENDENT)
        hits = [d for d in diags if d.error is ErrorType.PREAMBLE_INCONSISTENCY]
        assert len(hits) == 1
        assert hits[0].severity is Severity.ADVISORY

    def test_said_the_mix_advisory(self, device_set):
        candidate = parse_claim(
            "4. The device of claim 1, wherein the lever is long and said lever is steel."
        )
        diags = lint_next_claim(device_set, candidate, required=ClaimKind.DEPENDENT)
        hits = [d for d in diags if d.error is ErrorType.TERMINOLOGICAL_INCONSISTENCY]
        assert len(hits) == 1
        assert hits[0].severity is Severity.ADVISORY

    def test_deterministic_output(self, device_set):
        candidate = parse_claim(
            "9. The device of claim 1, wherein the flange is substantially thin."
        )
        first = [d.to_dict() for d in
                 lint_next_claim(device_set, candidate, required=ClaimKind.INDEPENDENT)]
        second = [d.to_dict() for d in
                  lint_next_claim(device_set, candidate, required=ClaimKind.INDEPENDENT)]
        assert json.dumps(first) == json.dumps(second)

    def test_spans_index_real_text(self, device_set):
        candidate = parse_claim(
            "9. The device of claim 8. Another sentence about a flange, "
            "which is substantially large."
        )
        for d in lint_next_claim(device_set, candidate, required=ClaimKind.DEPENDENT):
            start, end = d.span
            assert 0 <= start <= end <= len(candidate.raw_text)
            candidate.raw_text[start:end]


class TestLintAbstract:
    def test_word_limit_boundary(self):
        claims = "1. A device comprising: a lever; and a cam."
        ok = " ".join(["word"] * 150)
        over = " ".join(["word"] * 151)
        assert ErrorType.OVERLY_WORDY not in errors_of(lint_abstract(claims, ok))
        assert ErrorType.OVERLY_WORDY in errors_of(lint_abstract(claims, over))

    def test_verbatim_claim_copy(self, pencil_set):
        claims_text = pencil_set.source_text
        abstract = pencil_set.claim(1).text_after_number
        diags = lint_abstract(claims_text, abstract)
        assert ErrorType.INEFFECTIVE_SUMMARIZATION in errors_of(diags)

    def test_fresh_summary_not_flagged(self, pencil_set):
        abstract = (
            "A writing instrument carries an integrated illumination source "
            "so users can write in dark environments."
        )
        diags = lint_abstract(pencil_set.source_text, abstract)
        assert ErrorType.INEFFECTIVE_SUMMARIZATION not in errors_of(diags)

    def test_hallucination_loop_flagged(self):
        claims = "1. A system for selecting a version of a webpage, comprising: a processor; and a memory."
        diags = lint_abstract(claims, HALLUCINATED_ABSTRACT)
        assert ErrorType.GRAMMATICAL_ERRORS in errors_of(diags)

    def test_copy_ratio_definition(self):
        # 4 of 5 abstract tokens form the longest run shared with the claim.
        assert verbatim_copy_ratio("a b c d", "a b c d x") == pytest.approx(0.8)
