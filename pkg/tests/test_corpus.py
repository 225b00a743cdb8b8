from __future__ import annotations

import json

import pytest
from hypothesis import given, strategies as st

from claimkit.corpus import (
    AnnotatedPair,
    CorpusFormatError,
    PatentRecord,
    PreferenceLabel,
    RequiredKind,
    Task,
    dump_patent_records,
    filter_eval_corpus,
    load_annotation_pairs,
    load_patent_records,
)
from claimkit.lint import ErrorType


def record_line(**overrides) -> str:
    data = {
        "id": "US1",
        "claims": "1. A device.",
        "abstract": "A device is provided.",
        "ipc_section": "G",
        "granted": True,
    }
    data.update(overrides)
    return json.dumps(data)


def pair_line(**overrides) -> str:
    data = {
        "pair_id": "p1",
        "task": "claims2abstract",
        "input_claims": "1. A device.",
        "output_a": "Alpha output.",
        "output_b": "Beta output.",
        "human_label": "a",
        "required_kind": None,
        "errors_a": [],
        "errors_b": [],
    }
    data.update(overrides)
    return json.dumps(data)


class TestPatentRecord:
    def test_empty_claims_rejected(self):
        with pytest.raises(ValueError):
            PatentRecord(id="x", claims_text="   ")

    def test_bad_ipc_section_rejected(self):
        with pytest.raises(ValueError):
            PatentRecord(id="x", claims_text="1. A device.", ipc_section="Z")

    def test_all_sections_accepted(self):
        for section in "ABCDEFGH":
            PatentRecord(id="x", claims_text="1. A device.", ipc_section=section)


class TestLoadPatentRecords:
    def test_single_line(self, tmp_path):
        path = tmp_path / "one.jsonl"
        path.write_text(record_line() + "\n", encoding="utf-8")
        report = load_patent_records(path)
        assert report.ok
        assert len(report.records) == 1
        assert report.records[0].id == "US1"

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.jsonl"
        path.write_text("", encoding="utf-8")
        report = load_patent_records(path)
        assert report.records == ()
        assert report.ok

    def test_malformed_line_collected_not_dropped(self, tmp_path):
        path = tmp_path / "mixed.jsonl"
        lines = [record_line(id="US1"), "{not json", record_line(id="US3")]
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        report = load_patent_records(path)
        assert [r.id for r in report.records] == ["US1", "US3"]
        assert len(report.errors) == 1
        assert report.errors[0].line == 2
        assert "line 2" in report.summary()

    def test_missing_field_is_a_line_error(self, tmp_path):
        path = tmp_path / "missing.jsonl"
        path.write_text(json.dumps({"id": "US1"}) + "\n", encoding="utf-8")
        report = load_patent_records(path)
        assert report.records == ()
        assert "claims" in report.errors[0].message

    def test_unreadable_file(self, tmp_path):
        with pytest.raises(CorpusFormatError):
            load_patent_records(tmp_path / "absent.jsonl")

    def test_round_trip(self, tmp_path):
        path = tmp_path / "rt.jsonl"
        lines = [
            record_line(id="US1"),
            record_line(id="US2", abstract=None, ipc_section=None, granted=False),
        ]
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        first = load_patent_records(path).records
        out = tmp_path / "rt2.jsonl"
        dump_patent_records(list(first), out)
        second = load_patent_records(out).records
        assert first == second


class TestFilterEvalCorpus:
    def make(self, *, granted=True, claims="1. A device."):
        return PatentRecord(id="x", claims_text=claims, granted=granted)

    def test_not_granted_excluded(self):
        assert filter_eval_corpus([self.make(granted=False)]) == []

    def test_canceled_claims_excluded(self):
        record = self.make(claims="1. A device.\n2. (canceled)")
        assert filter_eval_corpus([record]) == []

    def test_case_insensitive_and_british_spelling(self):
        for text in ("2. (CANCELED)", "2. (Cancelled)"):
            record = self.make(claims="1. A device.\n" + text)
            assert filter_eval_corpus([record]) == []

    def test_clean_granted_included_unchanged(self):
        record = self.make()
        assert filter_eval_corpus([record]) == [record]

    def test_idempotent_and_subsequence(self):
        records = [
            self.make(),
            self.make(granted=False),
            self.make(claims="1. (canceled)\n2. A widget."),
            PatentRecord(id="y", claims_text="1. A widget.", granted=True),
        ]
        once = filter_eval_corpus(records)
        assert filter_eval_corpus(once) == once
        it = iter(records)
        assert all(r in it for r in once)  # order-preserving subsequence

    @given(st.lists(st.tuples(st.booleans(), st.booleans()), max_size=20))
    def test_idempotence_property(self, flags):
        records = [
            PatentRecord(
                id=str(i),
                claims_text="1. A widget." + ("\n2. (canceled)" if canceled else ""),
                granted=granted,
            )
            for i, (granted, canceled) in enumerate(flags)
        ]
        once = filter_eval_corpus(records)
        assert filter_eval_corpus(once) == once


class TestLoadAnnotationPairs:
    def test_tie_label(self, tmp_path):
        path = tmp_path / "pairs.jsonl"
        path.write_text(pair_line(human_label="tie") + "\n", encoding="utf-8")
        pairs = load_annotation_pairs(path)
        assert pairs[0].human_label is PreferenceLabel.TIE

    def test_next_claim_requires_kind(self, tmp_path):
        path = tmp_path / "pairs.jsonl"
        path.write_text(
            pair_line(task="next_claim", required_kind=None) + "\n", encoding="utf-8"
        )
        with pytest.raises(CorpusFormatError, match="required_kind"):
            load_annotation_pairs(path)

    def test_known_error_label_stored(self, tmp_path):
        path = tmp_path / "pairs.jsonl"
        path.write_text(
            pair_line(errors_b=["Claim Numbering Error"]) + "\n", encoding="utf-8"
        )
        pairs = load_annotation_pairs(path)
        assert ErrorType.CLAIM_NUMBERING_ERROR in pairs[0].error_labels_b

    def test_unknown_error_label_rejected_by_name(self, tmp_path):
        path = tmp_path / "pairs.jsonl"
        path.write_text(
            pair_line(errors_a=["Made Up Error"]) + "\n", encoding="utf-8"
        )
        with pytest.raises(CorpusFormatError, match="Made Up Error"):
            load_annotation_pairs(path)

    def test_error_names_line(self, tmp_path):
        path = tmp_path / "pairs.jsonl"
        path.write_text(
            pair_line() + "\n" + pair_line(human_label="nope") + "\n",
            encoding="utf-8",
        )
        with pytest.raises(CorpusFormatError, match="line 2"):
            load_annotation_pairs(path)

    def test_next_claim_pair(self, tmp_path):
        path = tmp_path / "pairs.jsonl"
        path.write_text(
            pair_line(task="next_claim", required_kind="dependent") + "\n",
            encoding="utf-8",
        )
        pair = load_annotation_pairs(path)[0]
        assert pair.task is Task.NEXT_CLAIM
        assert pair.required_kind is RequiredKind.DEPENDENT

    def test_claims2abstract_must_not_set_kind(self):
        with pytest.raises(ValueError):
            AnnotatedPair(
                pair_id="p",
                task=Task.CLAIMS2ABSTRACT,
                input_claims="1. A device.",
                output_a="a",
                output_b="b",
                human_label=PreferenceLabel.TIE,
                required_kind=RequiredKind.DEPENDENT,
            )

    def test_empty_output_rejected(self):
        with pytest.raises(ValueError):
            AnnotatedPair(
                pair_id="p",
                task=Task.CLAIMS2ABSTRACT,
                input_claims="1. A device.",
                output_a="",
                output_b="b",
                human_label=PreferenceLabel.TIE,
            )
