"""Metric-vs-human evaluation protocol.

Each annotated pair is scored by a metric on both outputs; the higher
score wins the pair and exact score equality is a tie. The resulting
preference sequence is correlated against the human sequence with
Kendall's tau-b, which is the right variant here because the protocol
produces genuine ties. Failed metric evaluations are excluded from the
correlation and disclosed, never silently scored.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .claims import ClaimKind, segment_claims
from .corpus import AnnotatedPair, PreferenceLabel, RequiredKind, Task
from .embeddings import EmbeddingProvider, HashedBowEmbedder
from .scoring import (
    cosine_to_unit,
    ngram_coverage,
    rule_checker_score,
    semsim_abstract,
    semsim_next_claim,
    term_coverage,
    weighted_score,
)
from .terms import unique_terms

TAU_VARIANT = "tau-b"

_ORDINAL = {
    PreferenceLabel.PREFER_A: 1,
    PreferenceLabel.TIE: 0,
    PreferenceLabel.PREFER_B: -1,
}


class DegenerateVarianceError(ValueError):
    """Raised when a label sequence has no variance, so tau is undefined."""


class PairRankingError(RuntimeError):
    """A metric failed to score one of a pair's outputs."""

    def __init__(self, pair_id: str, side: str, cause: Exception) -> None:
        super().__init__(f"pair {pair_id}: metric failed on output_{side}: {cause}")
        self.pair_id = pair_id
        self.side = side
        self.cause = cause


@dataclass(frozen=True)
class PairRanking:
    """One pair's metric scores and the preference they imply."""

    pair_id: str
    label: PreferenceLabel
    score_a: float
    score_b: float

    def to_dict(self) -> dict:
        return {
            "pair_id": self.pair_id,
            "label": self.label.value,
            "score_a": self.score_a,
            "score_b": self.score_b,
        }


@dataclass(frozen=True)
class TauResult:
    """Kendall tau-b plus the pair counts it was computed from."""

    tau: float
    concordant: int
    discordant: int
    ties_metric: int
    ties_human: int
    n_pairs: int

    def to_dict(self) -> dict:
        return {
            "tau": self.tau,
            "concordant": self.concordant,
            "discordant": self.discordant,
            "ties_metric": self.ties_metric,
            "ties_human": self.ties_human,
            "n_pairs": self.n_pairs,
        }


def _as_ordinal(label) -> int:
    if isinstance(label, PreferenceLabel):
        return _ORDINAL[label]
    value = int(label)
    if value not in (-1, 0, 1):
        raise ValueError(f"ordinal labels must be -1, 0, or +1, got {label!r}")
    return value


def kendall_tau_b(metric_labels: Sequence, human_labels: Sequence) -> TauResult:
    """Kendall's tau-b between two preference sequences.

    Labels may be PreferenceLabel values or ordinals in {-1, 0, +1}.
    Over every index pair, a concordant pair moves in the same
    direction in both sequences and a discordant pair moves in opposite
    directions; ties in a single sequence feed the tie-correction terms:

        tau_b = (C - D) / sqrt((C + D + T_metric) * (C + D + T_human))

    Raises DegenerateVarianceError when either sequence is all ties.
    """
    if len(metric_labels) != len(human_labels):
        raise ValueError(
            f"label sequences differ in length: "
            f"{len(metric_labels)} vs {len(human_labels)}"
        )
    if len(metric_labels) < 2:
        raise ValueError("need at least two labels to correlate")
    m = [_as_ordinal(x) for x in metric_labels]
    h = [_as_ordinal(x) for x in human_labels]
    n = len(m)
    concordant = discordant = ties_metric = ties_human = 0
    for i in range(n):
        for j in range(i + 1, n):
            dm = m[i] - m[j]
            dh = h[i] - h[j]
            if dm and dh:
                if (dm > 0) == (dh > 0):
                    concordant += 1
                else:
                    discordant += 1
            elif dm == 0 and dh != 0:
                ties_metric += 1
            elif dh == 0 and dm != 0:
                ties_human += 1
            # Pairs tied in both sequences fall outside every count.
    metric_varied = concordant + discordant + ties_human
    human_varied = concordant + discordant + ties_metric
    if metric_varied == 0 or human_varied == 0:
        which = "metric" if metric_varied == 0 else "human"
        raise DegenerateVarianceError(
            f"{which} labels are all tied; tau-b is undefined"
        )
    tau = (concordant - discordant) / math.sqrt(metric_varied * human_varied)
    return TauResult(
        tau=tau,
        concordant=concordant,
        discordant=discordant,
        ties_metric=ties_metric,
        ties_human=ties_human,
        n_pairs=n,
    )


# ---------------------------------------------------------------------------
# Metrics

MetricFn = Callable[[str, str, "RequiredKind | None"], float]


@dataclass(frozen=True)
class Metric:
    """A named scoring function plus the tasks it applies to."""

    name: str
    tasks: frozenset[Task]
    fn: MetricFn

    def score(self, input_claims: str, output: str, required: RequiredKind | None) -> float:
        return self.fn(input_claims, output, required)


def _required_to_kind(required: RequiredKind | None) -> ClaimKind:
    if required is None:
        raise ValueError("this metric needs a required dependency kind")
    return ClaimKind(required.value)


def build_metric(
    name: str,
    provider: EmbeddingProvider | None = None,
    stopwords: frozenset[str] | None = None,
) -> Metric:
    """Construct a built-in metric by name.

    Names: rule-checker, term-coverage, ngram-coverage, semsim,
    semsim-weighted. Embedding metrics default to the fallback provider.
    """
    if name == "rule-checker":
        def checker_fn(claims: str, output: str, required: RequiredKind | None) -> float:
            context = segment_claims(claims)
            return rule_checker_score(context, output, _required_to_kind(required)).score
        return Metric(name, frozenset({Task.NEXT_CLAIM}), checker_fn)

    if name == "term-coverage":
        def terms_fn(claims: str, output: str, required: RequiredKind | None) -> float:
            return term_coverage(
                unique_terms(claims, stopwords=stopwords, source="claims"),
                unique_terms(output, stopwords=stopwords, source="abstract"),
            )
        return Metric(name, frozenset({Task.CLAIMS2ABSTRACT}), terms_fn)

    if name == "ngram-coverage":
        def ngram_fn(claims: str, output: str, required: RequiredKind | None) -> float:
            return ngram_coverage(claims, output, n_max=4)
        return Metric(name, frozenset({Task.CLAIMS2ABSTRACT}), ngram_fn)

    if name == "semsim":
        emb = provider if provider is not None else HashedBowEmbedder()

        def semsim_fn(claims: str, output: str, required: RequiredKind | None) -> float:
            if required is None:
                return semsim_abstract(claims, output, emb)
            return semsim_next_claim(segment_claims(claims), output, emb)
        return Metric(name, frozenset({Task.CLAIMS2ABSTRACT, Task.NEXT_CLAIM}), semsim_fn)

    if name == "semsim-weighted":
        emb = provider if provider is not None else HashedBowEmbedder()

        def weighted_fn(claims: str, output: str, required: RequiredKind | None) -> float:
            context = segment_claims(claims)
            checker = rule_checker_score(context, output, _required_to_kind(required))
            similarity = cosine_to_unit(semsim_next_claim(context, output, emb))
            return weighted_score(similarity, checker)
        return Metric(name, frozenset({Task.NEXT_CLAIM}), weighted_fn)

    raise ValueError(f"unknown metric: {name!r}")


METRIC_NAMES = ("rule-checker", "term-coverage", "ngram-coverage", "semsim", "semsim-weighted")


# ---------------------------------------------------------------------------
# Protocol

def rank_pair(metric: Metric, pair: AnnotatedPair, tie_epsilon: float = 0.0) -> PairRanking:
    """Score both outputs of a pair and derive a preference label.

    Exact score equality (or a difference within the opt-in epsilon)
    is a tie. A metric failure on either output raises PairRankingError
    carrying the pair id.
    """
    if pair.task not in metric.tasks:
        raise ValueError(
            f"metric {metric.name!r} does not apply to task {pair.task.value!r}"
        )
    try:
        score_a = metric.score(pair.input_claims, pair.output_a, pair.required_kind)
    except Exception as exc:
        raise PairRankingError(pair.pair_id, "a", exc) from exc
    try:
        score_b = metric.score(pair.input_claims, pair.output_b, pair.required_kind)
    except Exception as exc:
        raise PairRankingError(pair.pair_id, "b", exc) from exc
    if abs(score_a - score_b) <= tie_epsilon:
        label = PreferenceLabel.TIE
    elif score_a > score_b:
        label = PreferenceLabel.PREFER_A
    else:
        label = PreferenceLabel.PREFER_B
    return PairRanking(pair_id=pair.pair_id, label=label, score_a=score_a, score_b=score_b)


@dataclass(frozen=True)
class PairFailure:
    pair_id: str
    message: str

    def to_dict(self) -> dict:
        return {"pair_id": self.pair_id, "message": self.message}


@dataclass(frozen=True)
class MetricReport:
    """A metric's rankings and its correlation with the human labels."""

    metric_name: str
    tau_variant: str
    rankings: tuple[PairRanking, ...]
    tau: TauResult | None
    tau_error: str | None
    per_task: dict[str, TauResult | None] = field(default_factory=dict)
    per_task_errors: dict[str, str] = field(default_factory=dict)
    failures: tuple[PairFailure, ...] = ()

    @property
    def n_evaluated(self) -> int:
        return len(self.rankings)

    @property
    def n_failed(self) -> int:
        return len(self.failures)

    def to_dict(self) -> dict:
        return {
            "metric_name": self.metric_name,
            "tau_variant": self.tau_variant,
            "tau": self.tau.to_dict() if self.tau else None,
            "tau_error": self.tau_error,
            "per_task": {
                task: (res.to_dict() if res else None)
                for task, res in self.per_task.items()
            },
            "per_task_errors": dict(self.per_task_errors),
            "n_evaluated": self.n_evaluated,
            "n_failed": self.n_failed,
            "failures": [f.to_dict() for f in self.failures],
            "rankings": [r.to_dict() for r in self.rankings],
        }

    def to_markdown(self) -> str:
        lines = [
            f"| Task | Metric | Kendall's tau ({self.tau_variant}) |",
            "|---|---|---|",
        ]

        def cell(res: TauResult | None, err: str | None) -> str:
            if res is not None:
                return f"{res.tau:.4f}"
            return f"n/a ({err})" if err else "n/a"

        lines.append(f"| all | {self.metric_name} | {cell(self.tau, self.tau_error)} |")
        for task in sorted(set(self.per_task) | set(self.per_task_errors)):
            lines.append(
                f"| {task} | {self.metric_name} | "
                f"{cell(self.per_task.get(task), self.per_task_errors.get(task))} |"
            )
        lines.append("")
        lines.append(
            f"Pairs evaluated: {self.n_evaluated}; failed and excluded: {self.n_failed}."
        )
        return "\n".join(lines)


def _tau_entry(metric_seq, human_seq):
    try:
        return kendall_tau_b(metric_seq, human_seq), None
    except (DegenerateVarianceError, ValueError) as exc:
        return None, str(exc)


def evaluate_metric(
    metric: Metric,
    pairs: list[AnnotatedPair],
    tie_epsilon: float = 0.0,
    jobs: int = 1,
) -> MetricReport:
    """Run the full protocol: rank every pair, correlate against humans.

    Pairs whose metric evaluation fails are excluded from the
    correlation and listed in the report. Tau is reported jointly and
    per task; degenerate-variance cases surface as error strings rather
    than numbers.
    """
    if not pairs:
        raise ValueError("no annotation pairs to evaluate")

    def run(pair: AnnotatedPair):
        try:
            return rank_pair(metric, pair, tie_epsilon=tie_epsilon), None
        except (PairRankingError, ValueError) as exc:
            return None, PairFailure(pair_id=pair.pair_id, message=str(exc))

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run, pairs))
    else:
        results = [run(p) for p in pairs]

    rankings: list[PairRanking] = []
    ranked_pairs: list[AnnotatedPair] = []
    failures: list[PairFailure] = []
    for pair, (ranking, failure) in zip(pairs, results):
        if ranking is not None:
            rankings.append(ranking)
            ranked_pairs.append(pair)
        else:
            failures.append(failure)
    if not rankings:
        raise ValueError("metric failed on every pair")

    metric_seq = [r.label for r in rankings]
    human_seq = [p.human_label for p in ranked_pairs]
    tau, tau_error = _tau_entry(metric_seq, human_seq)

    per_task: dict[str, TauResult | None] = {}
    per_task_errors: dict[str, str] = {}
    for task in sorted({p.task for p in ranked_pairs}, key=lambda t: t.value):
        idx = [i for i, p in enumerate(ranked_pairs) if p.task is task]
        t_res, t_err = _tau_entry(
            [metric_seq[i] for i in idx], [human_seq[i] for i in idx]
        )
        per_task[task.value] = t_res
        if t_err:
            per_task_errors[task.value] = t_err

    return MetricReport(
        metric_name=metric.name,
        tau_variant=TAU_VARIANT,
        rankings=tuple(rankings),
        tau=tau,
        tau_error=tau_error,
        per_task=per_task,
        per_task_errors=per_task_errors,
        failures=tuple(failures),
    )
