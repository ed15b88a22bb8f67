"""Command-line entry point.

Subcommands: ``attack`` runs a dataset suite and writes a report, ``rank``
prints word importances for one input (debug aid), ``metrics`` recomputes
the summary of an existing report.  Exit status: 0 on full success, 1 on
usage or data errors, 2 when backends failed for part of the suite.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from urllib.parse import urlparse

from . import demo
from .attack import AttackConfig, rank_words
from .embeddings import load_embeddings
from .harness import (
    Backends,
    compute_metrics,
    format_table,
    load_dataset,
    read_report,
    run_suite,
    write_report,
)
from .models import (
    CLASSIFICATION,
    ENTAILMENT,
    BackendError,
    NullChecker,
    TaskInput,
    ToyEncoder,
    ToyLinearClassifier,
    ToyMaskedLM,
    classify,
)
from .remote import (
    HttpGrammarChecker,
    HttpMaskedLM,
    HttpSentenceEncoder,
    HttpTargetModel,
)
from .text import tokenize

ENV_SERVER_URL = "MODEL_SERVER_URL"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage; the contract here is 1
    def error(self, message):
        raise UsageError(message)


def _resolve_http(selector: str, flag: str) -> str:
    url = selector[len("http:"):] if selector.startswith("http:") else ""
    if not url:
        url = os.environ.get(ENV_SERVER_URL, "")
        if not url:
            raise UsageError(
                f"{flag}: no URL given and {ENV_SERVER_URL} is unset"
            )
    parsed = urlparse(url)
    if parsed.scheme not in ("http", "https") or not parsed.netloc:
        raise UsageError(f"{flag}: {url!r} is not an absolute http(s) URL")
    return url


def _load_json(path: str, flag: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, ValueError) as exc:
        raise UsageError(f"{flag}: cannot read {path}: {exc}") from exc


def _make_target(selector: str, num_classes: int | None):
    if selector == "toy":
        return ToyLinearClassifier(demo.DEMO_CLASS_WEIGHTS)
    if selector.startswith("toy:"):
        spec = _load_json(selector[4:], "--target")
        return ToyLinearClassifier(spec["class_weights"])
    return HttpTargetModel(_resolve_http(selector, "--target"), num_classes=num_classes)


def _make_mlm(selector: str):
    if selector == "toy":
        return ToyMaskedLM(demo.DEMO_SYNONYMS)
    if selector.startswith("toy:"):
        spec = _load_json(selector[4:], "--mlm")
        table = {w: [(c, float(p)) for c, p in entries] for w, entries in spec["table"].items()}
        return ToyMaskedLM(table)
    return HttpMaskedLM(_resolve_http(selector, "--mlm"))


def _make_encoder(selector: str, store):
    if selector == "toy":
        if store is None:
            raise UsageError("--encoder toy needs --embeddings to build word vectors")
        return ToyEncoder({w: store.get(w) for w in store.words()})
    if selector.startswith("toy:"):
        spec = _load_json(selector[4:], "--encoder")
        return ToyEncoder(spec["vectors"])
    return HttpSentenceEncoder(_resolve_http(selector, "--encoder"))


def _make_grammar(selector: str):
    if selector == "none":
        return None
    if selector == "toy":
        return NullChecker()
    return HttpGrammarChecker(_resolve_http(selector, "--grammar"))


def build_parser() -> _Parser:
    parser = _Parser(prog="masksub", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", metavar="{attack,rank,metrics}")

    atk = sub.add_parser("attack", help="attack every example in a dataset")
    atk.add_argument("--dataset", required=True, help="JSONL dataset path (required)")
    atk.add_argument("--task", choices=[CLASSIFICATION, ENTAILMENT],
                     default=CLASSIFICATION, help="task type (default: classification)")
    atk.add_argument("--target", default="toy",
                     help="target model: toy | toy:<weights.json> | http:<url> (default: toy)")
    atk.add_argument("--mlm", default="toy",
                     help="masked LM: toy | toy:<table.json> | http:<url> (default: toy)")
    atk.add_argument("--encoder", default="toy",
                     help="sentence encoder: toy | toy:<vectors.json> | http:<url> (default: toy)")
    atk.add_argument("--grammar", default="toy",
                     help="grammar checker: toy | none | http:<url> (default: toy, always 0 errors)")
    atk.add_argument("--embeddings", required=True,
                     help="word embedding file for the candidate filter (required)")
    atk.add_argument("--num-classes", type=int, default=None,
                     help="expected class count, enforced on responses (default: inferred)")
    atk.add_argument("--k", type=int, default=50,
                     help="masked-LM candidates per position (default: 50)")
    atk.add_argument("--lambda", dest="lambda_sim", type=float, default=None,
                     help="sentence similarity threshold (default: 0.8 classification, 0.6 entailment)")
    atk.add_argument("--delta", type=float, default=0.7,
                     help="embedding similarity threshold (default: 0.7)")
    atk.add_argument("--window", type=int, default=30,
                     help="context window in word tokens (default: 30)")
    atk.add_argument("--workers", type=int, default=1,
                     help="parallel attack workers (default: 1)")
    atk.add_argument("--seed", type=int, default=0,
                     help="reserved for stochastic backends; toy backends ignore it (default: 0)")
    atk.add_argument("--out", required=True, help="report output path (required)")

    rnk = sub.add_parser("rank", help="print word importances for one input")
    rnk.add_argument("--text", default=None, help="classification input text")
    rnk.add_argument("--premise", default=None, help="entailment premise")
    rnk.add_argument("--hypothesis", default=None, help="entailment hypothesis")
    rnk.add_argument("--task", choices=[CLASSIFICATION, ENTAILMENT],
                     default=CLASSIFICATION, help="task type (default: classification)")
    rnk.add_argument("--target", default="toy",
                     help="target model: toy | toy:<weights.json> | http:<url> (default: toy)")
    rnk.add_argument("--num-classes", type=int, default=None,
                     help="expected class count (default: inferred)")

    met = sub.add_parser("metrics", help="recompute the summary of a report file")
    met.add_argument("--report", required=True, help="report file written by attack (required)")
    return parser


def _cmd_attack(args) -> int:
    try:
        store = load_embeddings(args.embeddings)
        dataset = load_dataset(args.dataset, args.task, args.num_classes)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    cfg = AttackConfig(
        task=args.task, k=args.k, lambda_sim=args.lambda_sim,
        delta_embed=args.delta, window=args.window,
    )
    backends = Backends(
        target=_make_target(args.target, args.num_classes),
        mlm=_make_mlm(args.mlm),
        encoder=_make_encoder(args.encoder, store),
        grammar=_make_grammar(args.grammar),
    )
    try:
        report = run_suite(dataset, backends, store, cfg, workers=args.workers)
    except BackendError as exc:
        print(f"backend failure: {exc}", file=sys.stderr)
        return 2
    write_report(report, args.out)
    print(format_table(report.metrics, report.counts))
    return 2 if report.counts["errored"] else 0


def _cmd_rank(args) -> int:
    if args.task == CLASSIFICATION:
        if args.text is None:
            raise UsageError("rank: --text is required for classification")
        task_input = TaskInput.for_classification(tokenize(args.text))
    else:
        if args.premise is None or args.hypothesis is None:
            raise UsageError("rank: --premise and --hypothesis are required for entailment")
        task_input = TaskInput.for_entailment(args.premise, tokenize(args.hypothesis))
    target = _make_target(args.target, args.num_classes)
    doc = task_input.document
    if not doc.eligible_indices():
        print("error: no eligible words to rank", file=sys.stderr)
        return 1
    try:
        dist = classify(target, task_input)
        ranked = rank_words(doc, task_input, target, dist.predicted)
    except BackendError as exc:
        print(f"backend failure: {exc}", file=sys.stderr)
        return 2
    print(f"predicted class: {dist.predicted}")
    for rw in ranked:
        print(f"{rw.index:4d}  {doc.tokens[rw.index].text:<20s} {rw.importance:+.6f}")
    return 0


def _cmd_metrics(args) -> int:
    try:
        report = read_report(args.report)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        print(f"error: cannot read report: {exc}", file=sys.stderr)
        return 1
    recomputed = compute_metrics(report.records)
    if recomputed != report.metrics:
        print("error: stored summary does not match records", file=sys.stderr)
        return 1
    print(format_table(recomputed, report.counts))
    return 0


def run_cli(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.subcommand is None:
            raise UsageError("a subcommand is required: attack, rank or metrics")
        if args.subcommand == "attack":
            return _cmd_attack(args)
        if args.subcommand == "rank":
            return _cmd_rank(args)
        return _cmd_metrics(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        print(parser.format_usage(), file=sys.stderr, end="")
        return 1
    except SystemExit as exc:  # argparse --help
        code = exc.code
        return int(code) if code else 0


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
