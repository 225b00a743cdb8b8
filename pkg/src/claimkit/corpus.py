"""Data model and JSONL ingestion for patent records and annotation pairs.

Patent records load with partial-success semantics: malformed lines go
into an error summary instead of aborting, since large corpora carry
sporadic defects. Annotation pairs load strictly: a bad label or a
missing field is an error naming the line, because a damaged evaluation
set silently corrupts every downstream correlation.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from .lint import ErrorType

IPC_SECTIONS = frozenset("ABCDEFGH")

_CANCELED_MARKERS = ("(canceled)", "(cancelled)")


class CorpusFormatError(ValueError):
    """Raised when an input file cannot be used at all."""


class Task(Enum):
    CLAIMS2ABSTRACT = "claims2abstract"
    NEXT_CLAIM = "next_claim"


class PreferenceLabel(Enum):
    PREFER_A = "a"
    PREFER_B = "b"
    TIE = "tie"


class RequiredKind(Enum):
    INDEPENDENT = "independent"
    DEPENDENT = "dependent"


@dataclass(frozen=True)
class PatentRecord:
    """One patent: its claim set, optional abstract, and metadata."""

    id: str
    claims_text: str
    abstract_text: str | None = None
    ipc_section: str | None = None
    granted: bool = False

    def __post_init__(self) -> None:
        if not self.claims_text.strip():
            raise ValueError("claims_text must be non-empty")
        if self.ipc_section is not None and self.ipc_section not in IPC_SECTIONS:
            raise ValueError(
                f"ipc_section must be one of A-H, got {self.ipc_section!r}"
            )

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "claims": self.claims_text,
            "abstract": self.abstract_text,
            "ipc_section": self.ipc_section,
            "granted": self.granted,
        }


@dataclass(frozen=True)
class AnnotatedPair:
    """One human pairwise judgment over two candidate outputs."""

    pair_id: str
    task: Task
    input_claims: str
    output_a: str
    output_b: str
    human_label: PreferenceLabel
    required_kind: RequiredKind | None = None
    error_labels_a: frozenset[ErrorType] = field(default_factory=frozenset)
    error_labels_b: frozenset[ErrorType] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if not self.output_a.strip() or not self.output_b.strip():
            raise ValueError("output_a and output_b must be non-empty")
        if (self.task is Task.NEXT_CLAIM) != (self.required_kind is not None):
            raise ValueError("required_kind is required exactly for next_claim pairs")

    def to_dict(self) -> dict:
        return {
            "pair_id": self.pair_id,
            "task": self.task.value,
            "input_claims": self.input_claims,
            "output_a": self.output_a,
            "output_b": self.output_b,
            "human_label": self.human_label.value,
            "required_kind": self.required_kind.value if self.required_kind else None,
            "errors_a": sorted(e.value for e in self.error_labels_a),
            "errors_b": sorted(e.value for e in self.error_labels_b),
        }


@dataclass(frozen=True)
class LineError:
    line: int
    message: str


@dataclass(frozen=True)
class LoadReport:
    """Records parsed from a JSONL file plus per-line failures."""

    records: tuple[PatentRecord, ...]
    errors: tuple[LineError, ...]

    @property
    def ok(self) -> bool:
        return not self.errors

    def summary(self) -> str:
        if self.ok:
            return f"{len(self.records)} record(s), no errors"
        lines = ", ".join(f"line {e.line}: {e.message}" for e in self.errors)
        return f"{len(self.records)} record(s), {len(self.errors)} error(s): {lines}"


def _record_from_dict(data: dict) -> PatentRecord:
    if not isinstance(data, dict):
        raise ValueError("record must be a JSON object")
    missing = [k for k in ("id", "claims") if k not in data]
    if missing:
        raise ValueError(f"missing field(s): {', '.join(missing)}")
    granted = data.get("granted", False)
    if not isinstance(granted, bool):
        raise ValueError("granted must be a boolean")
    return PatentRecord(
        id=str(data["id"]),
        claims_text=str(data["claims"]),
        abstract_text=data.get("abstract"),
        ipc_section=data.get("ipc_section"),
        granted=granted,
    )


def load_patent_records(path: str | Path) -> LoadReport:
    """Load patent records from a JSONL file, in file order.

    Malformed lines become LineError entries (1-based line numbers) in
    the returned report; well-formed lines still load.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise CorpusFormatError(f"cannot read {path}: {exc}") from exc
    records: list[PatentRecord] = []
    errors: list[LineError] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            records.append(_record_from_dict(json.loads(line)))
        except (json.JSONDecodeError, ValueError) as exc:
            errors.append(LineError(line=lineno, message=str(exc)))
    return LoadReport(records=tuple(records), errors=tuple(errors))


def has_canceled_claims(record: PatentRecord) -> bool:
    text = record.claims_text.casefold()
    return any(marker in text for marker in _CANCELED_MARKERS)


def filter_eval_corpus(records: list[PatentRecord]) -> list[PatentRecord]:
    """Keep granted records whose claims carry no canceled-claim marker.

    Both the one-l and two-l spellings of the marker count; order is
    preserved and the operation is idempotent.
    """
    return [r for r in records if r.granted and not has_canceled_claims(r)]


def _pair_from_dict(data: dict) -> AnnotatedPair:
    if not isinstance(data, dict):
        raise ValueError("annotation pair must be a JSON object")
    required_fields = (
        "pair_id", "task", "input_claims", "output_a", "output_b", "human_label",
    )
    missing = [k for k in required_fields if k not in data]
    if missing:
        raise ValueError(f"missing field(s): {', '.join(missing)}")
    try:
        task = Task(data["task"])
    except ValueError:
        raise ValueError(f"unknown task: {data['task']!r}") from None
    try:
        label = PreferenceLabel(data["human_label"])
    except ValueError:
        raise ValueError(f"unknown human_label: {data['human_label']!r}") from None
    raw_kind = data.get("required_kind")
    if task is Task.NEXT_CLAIM and raw_kind is None:
        raise ValueError("required_kind is missing for a next_claim pair")
    kind = RequiredKind(raw_kind) if raw_kind is not None else None

    def parse_labels(key: str) -> frozenset[ErrorType]:
        return frozenset(ErrorType.from_label(lbl) for lbl in data.get(key, []))

    return AnnotatedPair(
        pair_id=str(data["pair_id"]),
        task=task,
        input_claims=str(data["input_claims"]),
        output_a=str(data["output_a"]),
        output_b=str(data["output_b"]),
        human_label=label,
        required_kind=kind,
        error_labels_a=parse_labels("errors_a"),
        error_labels_b=parse_labels("errors_b"),
    )


def load_annotation_pairs(path: str | Path) -> list[AnnotatedPair]:
    """Load human annotation pairs from a JSONL file.

    Strict: any malformed line, unknown error label, or missing
    required_kind raises CorpusFormatError naming the line.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise CorpusFormatError(f"cannot read {path}: {exc}") from exc
    pairs: list[AnnotatedPair] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            pairs.append(_pair_from_dict(json.loads(line)))
        except (json.JSONDecodeError, ValueError) as exc:
            raise CorpusFormatError(f"{path} line {lineno}: {exc}") from exc
    return pairs


def dump_patent_records(records: list[PatentRecord], path: str | Path) -> None:
    """Write records back out as JSONL (inverse of load_patent_records)."""
    lines = [json.dumps(r.to_dict(), ensure_ascii=False) for r in records]
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")
