"""Dataset ingestion, batch attack execution and the summary metrics.

The suite runner fans examples out to a bounded thread pool (attacks are
independent and backends are read-only), but records always come back in
dataset order and, with deterministic backends, are byte-identical for any
worker count.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .attack import AttackConfig, AttackStatus, attack
from .models import (
    CLASSIFICATION,
    ENTAILMENT,
    BackendError,
    GrammarChecker,
    MaskedLM,
    SentenceEncoder,
    TargetModel,
    TaskInput,
    classify,
    grammar_errors,
)
from .embeddings import EmbeddingStore
from .text import detokenize, tokenize

ERRORED = "errored"


@dataclass(frozen=True)
class Dataset:
    """Examples to attack: (id, task input, gold label) triples."""

    examples: tuple[tuple[int, TaskInput, int], ...]
    task: str
    num_classes: int

    def __len__(self) -> int:
        return len(self.examples)


@dataclass(frozen=True)
class Metrics:
    original_accuracy: float
    after_attack_accuracy: float
    avg_perturbation_rate: float
    grammar_error_increase: float
    avg_queries: float
    avg_similarity: float

    def as_dict(self) -> dict[str, float]:
        return {
            "original_accuracy": self.original_accuracy,
            "after_attack_accuracy": self.after_attack_accuracy,
            "avg_perturbation_rate": self.avg_perturbation_rate,
            "grammar_error_increase": self.grammar_error_increase,
            "avg_queries": self.avg_queries,
            "avg_similarity": self.avg_similarity,
        }


@dataclass
class Backends:
    """The scorers one suite runs against.  ``grammar`` may be None."""

    target: TargetModel
    mlm: MaskedLM
    encoder: SentenceEncoder
    grammar: GrammarChecker | None = None


@dataclass(frozen=True)
class Report:
    """Per-example records plus the summary computed from them."""

    records: tuple[dict, ...]
    metrics: Metrics
    counts: dict[str, int]


def load_dataset(path: str | Path, task: str, num_classes: int | None = None) -> Dataset:
    """Read a line-delimited JSON dataset.

    Classification lines carry "text" and "label"; entailment lines carry
    "premise", "hypothesis" and "label".  Ids are 0-based line numbers.
    Malformed lines are hard errors naming the line.
    """
    if task not in (CLASSIFICATION, ENTAILMENT):
        raise ValueError(f"unknown task {task!r}")
    path = Path(path)
    examples = []
    max_label = -1
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"{path}:{lineno + 1}: invalid JSON: {exc}") from None
            if not isinstance(obj, dict):
                raise ValueError(f"{path}:{lineno + 1}: expected a JSON object")
            label = obj.get("label")
            if not isinstance(label, int) or isinstance(label, bool):
                raise ValueError(f"{path}:{lineno + 1}: missing or non-integer label")
            if label < 0 or (num_classes is not None and label >= num_classes):
                raise ValueError(f"{path}:{lineno + 1}: label out of range: {label}")
            if task == CLASSIFICATION:
                if "text" not in obj:
                    raise ValueError(f"{path}:{lineno + 1}: missing field 'text'")
                task_input = TaskInput.for_classification(tokenize(str(obj["text"])))
            else:
                for field_name in ("premise", "hypothesis"):
                    if field_name not in obj:
                        raise ValueError(f"{path}:{lineno + 1}: missing field {field_name!r}")
                task_input = TaskInput.for_entailment(
                    str(obj["premise"]), tokenize(str(obj["hypothesis"]))
                )
            examples.append((lineno, task_input, label))  # id = 0-based line number
            max_label = max(max_label, label)
    if not examples:
        raise ValueError(f"{path}: empty dataset")
    return Dataset(
        examples=tuple(examples),
        task=task,
        num_classes=num_classes if num_classes is not None else max_label + 1,
    )


def _attack_record(
    example: tuple[int, TaskInput, int],
    backends: Backends,
    store: EmbeddingStore,
    cfg: AttackConfig,
) -> dict:
    """Attack one example and flatten the outcome into a report record."""
    example_id, task_input, gold = example
    doc = task_input.document
    record = {
        "id": example_id,
        "status": None,
        "original": detokenize(doc),
        "premise": task_input.premise,
        "adversarial": None,
        "gold": gold,
        "pred_before": None,
        "pred_after": None,
        "word_count": doc.word_count,
        "perturbed_indices": [],
        "similarity": None,
        "target_queries": 0,
        "mlm_queries": 0,
        "encoder_queries": 0,
        "grammar_orig": None,
        "grammar_adv": None,
        "error": None,
    }
    try:
        result = attack(
            task_input, gold, backends.target, backends.mlm, backends.encoder,
            store=store, cfg=cfg,
        )
        record["status"] = result.status.value
        record["pred_before"] = result.pred_before
        record["pred_after"] = result.pred_after
        record["perturbed_indices"] = list(result.perturbed_indices)
        record["similarity"] = result.similarity
        record.update(result.ledger.as_dict())
        if result.adversarial is not None:
            record["adversarial"] = detokenize(result.adversarial)
            if backends.grammar is not None:
                record["grammar_orig"] = grammar_errors(backends.grammar, record["original"])
                record["grammar_adv"] = grammar_errors(backends.grammar, record["adversarial"])
    except BackendError as exc:
        record["status"] = ERRORED
        record["error"] = str(exc)
    return record


def run_suite(
    dataset: Dataset,
    backends: Backends,
    store: EmbeddingStore,
    cfg: AttackConfig,
    workers: int = 1,
) -> Report:
    """Attack every example once and summarize.

    Probes the target first so a dead backend fails fast.  Backend failures
    on individual examples mark those records as errored and the suite keeps
    going.  Workers parallelize across examples only; records come back in
    dataset order.
    """
    if workers < 1:
        raise ValueError("workers must be >= 1")
    if dataset.task != cfg.task:
        raise ValueError(f"dataset task {dataset.task!r} != config task {cfg.task!r}")
    probe_doc = tokenize("probe")
    probe = (
        TaskInput.for_classification(probe_doc)
        if dataset.task == CLASSIFICATION
        else TaskInput.for_entailment("probe", probe_doc)
    )
    classify(backends.target, probe)

    def job(example):
        return _attack_record(example, backends, store, cfg)

    if workers == 1:
        records = [job(ex) for ex in dataset.examples]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(job, dataset.examples))
    metrics = compute_metrics(records)
    counts = {
        "total": len(records),
        "success": sum(1 for r in records if r["status"] == AttackStatus.SUCCESS.value),
        "failed": sum(1 for r in records if r["status"] == AttackStatus.FAILED.value),
        "skipped": sum(1 for r in records if r["status"] == AttackStatus.SKIPPED.value),
        "errored": sum(1 for r in records if r["status"] == ERRORED),
    }
    return Report(records=tuple(records), metrics=metrics, counts=counts)


def compute_metrics(records) -> Metrics:
    """Summary statistics over per-example records.

    Errored records are excluded from every denominator.  Skipped examples
    count as misclassified both before and after the attack, successes as
    misclassified after, so after-attack accuracy is the failed fraction.
    Perturbation and grammar rates are per-success, normalized by the word
    count of the attacked document; avg_queries is the mean number of
    target-model queries over attacked (non-skipped) examples.
    """
    scored = [r for r in records if r["status"] != ERRORED]
    n = len(scored)
    successes = [r for r in scored if r["status"] == AttackStatus.SUCCESS.value]
    failed = [r for r in scored if r["status"] == AttackStatus.FAILED.value]
    attacked = [r for r in scored if r["status"] != AttackStatus.SKIPPED.value]

    def mean(values) -> float:
        values = list(values)
        return sum(values) / len(values) if values else 0.0

    pert_rates = [
        100.0 * len(r["perturbed_indices"]) / r["word_count"] for r in successes
    ]
    grammar_rates = [
        100.0 * (r["grammar_adv"] - r["grammar_orig"]) / r["word_count"]
        for r in successes
        if r["grammar_adv"] is not None and r["grammar_orig"] is not None
    ]
    return Metrics(
        original_accuracy=100.0 * len(attacked) / n if n else 0.0,
        after_attack_accuracy=100.0 * len(failed) / n if n else 0.0,
        avg_perturbation_rate=mean(pert_rates),
        grammar_error_increase=mean(grammar_rates),
        avg_queries=mean(r["target_queries"] for r in attacked),
        avg_similarity=mean(r["similarity"] for r in successes),
    )


def write_report(report: Report, path: str | Path) -> None:
    """Records as JSON lines, then one summary object on the final line."""
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        for record in report.records:
            fh.write(json.dumps(record) + "\n")
        fh.write(json.dumps({"summary": report.metrics.as_dict(), "counts": report.counts}) + "\n")


def read_report(path: str | Path) -> Report:
    path = Path(path)
    records: list[dict] = []
    summary = None
    with path.open(encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            obj = json.loads(line)
            if "summary" in obj:
                summary = obj
            else:
                records.append(obj)
    if summary is None:
        raise ValueError(f"{path}: no summary line")
    metrics = Metrics(**summary["summary"])
    return Report(records=tuple(records), metrics=metrics, counts=summary["counts"])


def format_table(metrics: Metrics, counts: dict[str, int] | None = None) -> str:
    """Fixed-width summary table with the usual column names."""
    lines = [
        f"{'Orig%':>8} {'Acc%':>8} {'Pert%':>8} {'I%':>8}",
        f"{metrics.original_accuracy:8.1f} {metrics.after_attack_accuracy:8.1f} "
        f"{metrics.avg_perturbation_rate:8.2f} {metrics.grammar_error_increase:8.2f}",
        f"avg queries: {metrics.avg_queries:.2f}   avg similarity: {metrics.avg_similarity:.4f}",
    ]
    if counts:
        lines.append(
            "examples: {total}  success: {success}  failed: {failed}  "
            "skipped: {skipped}  errored: {errored}".format(**counts)
        )
    return "\n".join(lines)
