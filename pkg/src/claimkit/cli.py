"""Command-line interface.

Subcommands bind the library into reproducible batch runs: parse,
lint-claim, lint-abstract, score, terms, evaluate, generate. Exit codes:
0 success, 1 lint found Error-severity diagnostics under --strict,
2 usage or I/O errors. Output is deterministic for fixed inputs and
configuration.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .claims import ClaimKind, ClaimParseError, parse_claim, segment_claims
from .corpus import CorpusFormatError, load_annotation_pairs
from .embeddings import EmbeddingProvider, HashedBowEmbedder, HttpEmbedder, make_provider
from .generation import GenerationClient, GenerationError
from .harness import METRIC_NAMES, build_metric, evaluate_metric
from .lint import (
    DEFAULT_VAGUENESS_LEXICON,
    Severity,
    lint_abstract,
    lint_next_claim,
    load_lexicon,
)
from .scoring import (
    cosine_to_unit,
    ngram_coverage,
    ngram_coverage_by_n,
    rule_checker_score,
    semsim_abstract,
    semsim_next_claim,
    term_coverage,
)
from .terms import extract_candidates, load_stopwords, score_candidates, unique_terms

EMBED_URL_ENV = "CLAIMKIT_EMBED_URL"
GENERATE_URL_ENV = "CLAIMKIT_GENERATE_URL"

EXIT_OK = 0
EXIT_LINT = 1
EXIT_USAGE = 2


class UsageError(Exception):
    """A one-line user-facing problem with flags or input files."""


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _emit(payload, fmt: str, out=None) -> None:
    out = out if out is not None else sys.stdout
    if fmt == "json":
        json.dump(payload, out, indent=2, ensure_ascii=False)
        out.write("\n")
    else:
        out.write(str(payload))
        if not str(payload).endswith("\n"):
            out.write("\n")


def _provider_from_args(args) -> EmbeddingProvider:
    spec = getattr(args, "embedder", None)
    if spec:
        return make_provider(spec)
    env_url = os.environ.get(EMBED_URL_ENV)
    if env_url:
        return HttpEmbedder(env_url)
    return HashedBowEmbedder()


def _required_from_args(args) -> ClaimKind | None:
    value = getattr(args, "required", None)
    return ClaimKind(value) if value else None


def _stopwords_from_args(args):
    path = getattr(args, "stopwords", None)
    return load_stopwords(path) if path else None


def _lexicon_from_args(args):
    path = getattr(args, "vagueness_lexicon", None)
    return load_lexicon(path) if path else DEFAULT_VAGUENESS_LEXICON


def _write_or_print(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


# ---------------------------------------------------------------------------
# Subcommand handlers

def _cmd_parse(args) -> int:
    text = _read_text(args.claims_file)
    claim_set = segment_claims(text)
    _emit(claim_set.to_dict(), "json")
    return EXIT_OK


def _lint_exit(diagnostics, strict: bool) -> int:
    _emit([d.to_dict() for d in diagnostics], "json")
    if strict and any(d.severity is Severity.ERROR for d in diagnostics):
        return EXIT_LINT
    return EXIT_OK


def _cmd_lint_claim(args) -> int:
    context = segment_claims(_read_text(args.context))
    candidate_text = _read_text(args.candidate).strip()
    candidate = parse_claim(candidate_text)
    diagnostics = lint_next_claim(
        context,
        candidate,
        required=_required_from_args(args),
        vagueness_lexicon=_lexicon_from_args(args),
    )
    return _lint_exit(diagnostics, args.strict)


def _cmd_lint_abstract(args) -> int:
    diagnostics = lint_abstract(_read_text(args.claims), _read_text(args.abstract))
    return _lint_exit(diagnostics, args.strict)


def _cmd_score(args) -> int:
    claims_text = _read_text(args.claims)
    if args.metric in ("rule-checker", "semsim-weighted") or (
        args.metric == "semsim" and args.candidate
    ):
        if not args.candidate:
            raise UsageError(f"--metric {args.metric} needs --candidate")
    if args.metric in ("term-coverage", "ngram-coverage") and not args.abstract:
        raise UsageError(f"--metric {args.metric} needs --abstract")

    detail: dict = {}
    if args.metric == "rule-checker":
        required = _required_from_args(args)
        if required is None:
            raise UsageError("--metric rule-checker needs --required")
        result = rule_checker_score(
            segment_claims(claims_text), _read_text(args.candidate).strip(), required
        )
        score = result.score
        detail = result.to_dict()
    elif args.metric == "term-coverage":
        stopwords = _stopwords_from_args(args)
        score = term_coverage(
            unique_terms(claims_text, stopwords=stopwords, source="claims"),
            unique_terms(_read_text(args.abstract), stopwords=stopwords, source="abstract"),
        )
    elif args.metric == "ngram-coverage":
        abstract_text = _read_text(args.abstract)
        score = ngram_coverage(claims_text, abstract_text, n_max=args.n_max)
        detail = {
            "by_n": {str(n): v for n, v in
                     ngram_coverage_by_n(claims_text, abstract_text, args.n_max).items()}
        }
    elif args.metric == "semsim":
        provider = _provider_from_args(args)
        if args.candidate:
            raw = semsim_next_claim(
                segment_claims(claims_text), _read_text(args.candidate).strip(), provider
            )
        elif args.abstract:
            raw = semsim_abstract(claims_text, _read_text(args.abstract), provider)
        else:
            raise UsageError("--metric semsim needs --candidate or --abstract")
        score = raw
        detail = {"raw_cosine": raw, "unit_interval": cosine_to_unit(raw)}
    elif args.metric == "semsim-weighted":
        required = _required_from_args(args)
        if required is None:
            raise UsageError("--metric semsim-weighted needs --required")
        provider = _provider_from_args(args)
        context = segment_claims(claims_text)
        candidate_text = _read_text(args.candidate).strip()
        checker = rule_checker_score(context, candidate_text, required)
        raw = semsim_next_claim(context, candidate_text, provider)
        score = cosine_to_unit(raw) * checker.score
        detail = {"raw_cosine": raw, "checker": checker.to_dict()}
    else:
        raise UsageError(f"unknown metric: {args.metric}")

    if args.format == "json":
        payload = {"metric": args.metric, "score": score}
        if detail:
            payload["detail"] = detail
        _emit(payload, "json")
    else:
        _emit(str(float(score)), "plain")
    return EXIT_OK


def _cmd_terms(args) -> int:
    text = _read_text(args.file)
    stopwords = _stopwords_from_args(args)
    ranked = score_candidates(extract_candidates(text, stopwords=stopwords))
    if args.top_k is not None:
        ranked = ranked[:args.top_k]
    if args.format == "json":
        _emit(
            [{"term": c.text, "frequency": c.frequency, "score": c.score} for c in ranked],
            "json",
        )
    else:
        for c in ranked:
            sys.stdout.write(f"{c.text}\t{c.frequency}\t{c.score:.6f}\n")
    return EXIT_OK


def _cmd_evaluate(args) -> int:
    pairs = load_annotation_pairs(args.annotations)
    reports = []
    for name in args.metric:
        metric = build_metric(
            name,
            provider=_provider_from_args(args),
            stopwords=_stopwords_from_args(args),
        )
        applicable = [p for p in pairs if p.task in metric.tasks]
        if not applicable:
            raise UsageError(
                f"metric {name!r} applies to no pair in {args.annotations}"
            )
        report = evaluate_metric(
            metric, applicable, tie_epsilon=args.tie_epsilon, jobs=args.jobs
        )
        reports.append(_sorted_report(report))
    if args.format == "md":
        _write_or_print("\n\n".join(r.to_markdown() for r in reports), args.output)
    elif len(reports) == 1:
        _write_or_print(
            json.dumps(reports[0].to_dict(), indent=2, ensure_ascii=False), args.output
        )
    else:
        _write_or_print(
            json.dumps([r.to_dict() for r in reports], indent=2, ensure_ascii=False),
            args.output,
        )
    return EXIT_OK


def _sorted_report(report):
    from dataclasses import replace

    rankings = tuple(sorted(report.rankings, key=lambda r: r.pair_id))
    failures = tuple(sorted(report.failures, key=lambda f: f.pair_id))
    return replace(report, rankings=rankings, failures=failures)


def _cmd_generate(args) -> int:
    url = args.url or os.environ.get(GENERATE_URL_ENV)
    if not url:
        raise UsageError(f"--url or ${GENERATE_URL_ENV} is required")
    client = GenerationClient(url=url, model=args.model)
    text = client.generate(args.kind, _read_text(args.claims))
    if args.format == "json":
        _emit({"kind": args.kind, "text": text}, "json")
    else:
        _emit(text, "plain")
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="claimkit",
        description=(
            "Parse, lint, and score patent claims and abstracts; evaluate "
            "metrics against human pairwise annotations."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse a claim set to JSON")
    p.add_argument("claims_file")
    p.add_argument("--format", choices=["json"], default="json")
    p.set_defaults(handler=_cmd_parse)

    p = sub.add_parser("lint-claim", help="lint a generated next claim")
    p.add_argument("--context", required=True, help="file with the input claim set")
    p.add_argument("--candidate", required=True, help="file with the candidate claim")
    p.add_argument("--required", choices=["independent", "dependent"])
    p.add_argument("--vagueness-lexicon", help="file with one vague term per line")
    p.add_argument("--strict", action="store_true",
                   help="exit 1 when any Error-severity diagnostic fires")
    p.add_argument("--format", choices=["json"], default="json")
    p.set_defaults(handler=_cmd_lint_claim)

    p = sub.add_parser("lint-abstract", help="lint a generated abstract")
    p.add_argument("--claims", required=True)
    p.add_argument("--abstract", required=True)
    p.add_argument("--strict", action="store_true")
    p.add_argument("--format", choices=["json"], default="json")
    p.set_defaults(handler=_cmd_lint_abstract)

    p = sub.add_parser("score", help="score one candidate or abstract")
    p.add_argument("--metric", required=True, choices=list(METRIC_NAMES))
    p.add_argument("--claims", required=True)
    p.add_argument("--candidate")
    p.add_argument("--abstract")
    p.add_argument("--required", choices=["independent", "dependent"])
    p.add_argument("--embedder", help="fallback or http:<url>")
    p.add_argument("--stopwords")
    p.add_argument("--n-max", type=int, default=4)
    p.add_argument("--format", choices=["json", "plain"], default="plain")
    p.set_defaults(handler=_cmd_score)

    p = sub.add_parser("terms", help="rank term candidates from a text file")
    p.add_argument("file")
    p.add_argument("--stopwords")
    p.add_argument("--top-k", type=int)
    p.add_argument("--format", choices=["tsv", "json"], default="tsv")
    p.set_defaults(handler=_cmd_terms)

    p = sub.add_parser("evaluate", help="correlate metrics with human annotations")
    p.add_argument("--annotations", required=True, help="annotation pairs JSONL")
    p.add_argument("--metric", required=True, action="append",
                   choices=list(METRIC_NAMES),
                   help="metric to evaluate; repeat the flag for several")
    p.add_argument("--tie-epsilon", type=float, default=0.0,
                   help="score difference treated as a tie (default 0 = exact)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--embedder", help="fallback or http:<url>")
    p.add_argument("--stopwords")
    p.add_argument("--output", help="write the report here instead of stdout")
    p.add_argument("--format", choices=["json", "md"], default="json")
    p.set_defaults(handler=_cmd_evaluate)

    p = sub.add_parser("generate", help="mint a candidate output via an endpoint")
    p.add_argument("--claims", required=True)
    p.add_argument("--kind", required=True,
                   choices=["abstract", "dependent", "independent"])
    p.add_argument("--url")
    p.add_argument("--model")
    p.add_argument("--format", choices=["plain", "json"], default="plain")
    p.set_defaults(handler=_cmd_generate)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ClaimParseError, CorpusFormatError, GenerationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
