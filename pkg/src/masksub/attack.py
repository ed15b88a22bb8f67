"""The two-step black-box attack: deletion ranking, then greedy substitution.

Step one scores each eligible word by how much the target-class probability
drops when the word is deleted, and sorts positions by that score.  Step two
walks the ranked positions over the progressively perturbed document: for
each position it asks the masked LM for in-context replacements (on the
original/masked sentence pair, window-truncated), filters them by embedding
similarity to the original word, gates each substitution by sentence-level
similarity to the pristine input, and queries the target.  The first
substitution that flips the prediction wins; otherwise the one that lowers
the target-class confidence the most is committed and the walk continues.

One attack is strictly sequential; independent attacks may run concurrently
because config, store and backends are all read-only.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import MutableMapping

from .embeddings import EmbeddingStore, filter_candidates
from .models import (
    CLASSIFICATION,
    ENTAILMENT,
    Candidate,
    ClassDistribution,
    MaskedLM,
    QueryLedger,
    SentenceEncoder,
    TargetModel,
    TaskInput,
    classify,
    fill_mask,
    sentence_similarity,
)
from .text import (
    WORD,
    Document,
    context_window,
    delete_word,
    detokenize,
    mask_word,
    substitute,
    window_span,
)

DEFAULT_K = 50
DEFAULT_WINDOW = 30
DEFAULT_DELTA = 0.7
DEFAULT_LAMBDA = {CLASSIFICATION: 0.8, ENTAILMENT: 0.6}


def _fmt(x: float | None) -> str | None:
    """Floats destined for a decision trace, at 12 significant digits."""
    return None if x is None else format(x, ".12g")


@dataclass(frozen=True)
class AttackConfig:
    """All attack hyperparameters.

    ``lambda_sim`` defaults per task: 0.8 for classification, 0.6 for
    entailment.  Pass an explicit value to override.
    """

    task: str = CLASSIFICATION
    k: int = DEFAULT_K
    lambda_sim: float | None = None
    delta_embed: float = DEFAULT_DELTA
    window: int = DEFAULT_WINDOW

    def __post_init__(self):
        if self.task not in (CLASSIFICATION, ENTAILMENT):
            raise ValueError(f"unknown task {self.task!r}")
        if self.lambda_sim is None:
            object.__setattr__(self, "lambda_sim", DEFAULT_LAMBDA[self.task])
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if not 0.0 <= self.lambda_sim <= 1.0:
            raise ValueError("lambda_sim must be in [0, 1]")
        if not 0.0 <= self.delta_embed <= 1.0:
            raise ValueError("delta_embed must be in [0, 1]")
        if self.window < 1:
            raise ValueError("window must be >= 1")


@dataclass(frozen=True)
class RankedWord:
    index: int
    importance: float


class AttackStatus(str, Enum):
    SUCCESS = "success"
    FAILED = "failed"
    SKIPPED = "skipped-misclassified"


@dataclass(frozen=True)
class AttackResult:
    """Outcome of one attack, with full provenance."""

    status: AttackStatus
    pred_before: int
    ledger: QueryLedger
    adversarial: Document | None = None
    pred_after: int | None = None
    perturbed_indices: tuple[int, ...] = ()
    similarity: float | None = None


FLIPPED = "flipped"
BEST_PARTIAL = "best_partial"
NONE = "none"


@dataclass(frozen=True)
class SelectionOutcome:
    """What one position's candidate sweep produced."""

    kind: str  # FLIPPED, BEST_PARTIAL or NONE
    document: Document | None = None
    word: str | None = None
    confidence: float | None = None  # P(y | document)
    similarity: float | None = None
    pred_after: int | None = None


def rank_words(
    doc: Document,
    task_input: TaskInput,
    target: TargetModel,
    y: int,
    ledger: QueryLedger | None = None,
    base: ClassDistribution | None = None,
) -> list[RankedWord]:
    """Score eligible words by target-class probability drop under deletion.

    ``y`` must be the target's predicted class on the unmodified input.
    importance(i) = P(y | doc) - P(y | doc with token i deleted).  Sorted by
    importance descending, ties by lower index.  Costs one query per
    eligible position, plus one for the baseline unless ``base`` is given.
    """
    eligible = doc.eligible_indices()
    if not eligible:
        raise ValueError("rank_words: no eligible positions")
    if base is None:
        base = classify(target, task_input.with_document(doc), ledger)
    base_p = base.probs[y]
    ranked = []
    for i in eligible:
        reduced = delete_word(doc, i)
        dist = classify(target, task_input.with_document(reduced), ledger)
        ranked.append(RankedWord(index=i, importance=base_p - dist.probs[y]))
    ranked.sort(key=lambda rw: (-rw.importance, rw.index))
    return ranked


def generate_candidates(
    doc: Document,
    i: int,
    mlm: MaskedLM,
    store: EmbeddingStore,
    cfg: AttackConfig,
    ledger: QueryLedger | None = None,
    trace: MutableMapping | None = None,
) -> list[Candidate]:
    """Replacement candidates for position ``i`` of ``doc``.

    Pipeline: mask the word, truncate both documents to the context window,
    query the masked LM on the pair for the top-k predictions, then keep
    only candidates embedding-similar to the original word.  MLM-probability
    order is preserved through the filter.  An empty result just means the
    position gets skipped.
    """
    token = doc.tokens[i] if 0 <= i < len(doc.tokens) else None
    if token is None or token.kind != WORD or token.is_stopword:
        raise ValueError(f"generate_candidates: position {i} is not eligible")
    masked = mask_word(doc, i)
    windowed_orig, windowed_masked = context_window(doc, masked, i, cfg.window)
    start, _ = window_span(len(doc.tokens), i, cfg.window)
    raw = fill_mask(mlm, windowed_orig, windowed_masked, i - start, cfg.k, ledger)
    kept = filter_candidates(store, token.text, raw, cfg.delta_embed)
    if trace is not None:
        trace["mlm"] = [[c.word, _fmt(c.mlm_prob)] for c in raw]
        trace["kept"] = [
            [c.word, _fmt(c.mlm_prob),
             _fmt(c.embed_sim.value) if c.embed_sim is not None else None]
            for c in kept
        ]
    return kept


def select_candidate(
    doc: Document,
    i: int,
    candidates: list[Candidate],
    original: Document,
    task_input: TaskInput,
    target: TargetModel,
    encoder: SentenceEncoder,
    cfg: AttackConfig,
    y: int,
    current_confidence: float,
    ledger: QueryLedger | None = None,
    trace: MutableMapping | None = None,
) -> SelectionOutcome:
    """Sweep candidates at position ``i`` in MLM-probability order.

    Each substitution is gated by sentence similarity against the pristine
    ``original`` document; surviving ones are classified.  The first one
    that flips the prediction is returned immediately (later candidates go
    unqueried).  If none flips, the survivor with the lowest target-class
    confidence is returned, but only when that confidence is strictly below
    ``current_confidence``; otherwise the position is left untouched.
    """
    decisions: list[list] = []
    original_text = detokenize(original)
    best: SelectionOutcome | None = None
    outcome = SelectionOutcome(kind=NONE)
    for cand in candidates:
        cand_doc = substitute(doc, i, cand.word)
        sim = sentence_similarity(encoder, original_text, detokenize(cand_doc), ledger)
        if sim < cfg.lambda_sim:
            decisions.append([cand.word, _fmt(sim), "sim_reject", None])
            continue
        dist = classify(target, task_input.with_document(cand_doc), ledger)
        p_y = dist.probs[y]
        if dist.predicted != y:
            decisions.append([cand.word, _fmt(sim), "flip", _fmt(p_y)])
            outcome = SelectionOutcome(
                kind=FLIPPED, document=cand_doc, word=cand.word,
                confidence=p_y, similarity=sim, pred_after=dist.predicted,
            )
            break
        decisions.append([cand.word, _fmt(sim), "scored", _fmt(p_y)])
        if best is None or p_y < best.confidence:
            best = SelectionOutcome(
                kind=BEST_PARTIAL, document=cand_doc, word=cand.word,
                confidence=p_y, similarity=sim, pred_after=None,
            )
    if outcome.kind != FLIPPED and best is not None and best.confidence < current_confidence:
        outcome = best
    if trace is not None:
        trace["decisions"] = decisions
    return outcome


def attack(
    task_input: TaskInput,
    gold: int,
    target: TargetModel,
    mlm: MaskedLM,
    encoder: SentenceEncoder,
    store: EmbeddingStore,
    cfg: AttackConfig,
    trace: MutableMapping | None = None,
) -> AttackResult:
    """Run the full attack on one example.

    Examples the target already misclassifies are skipped after the single
    initial query.  Ranking is computed once on the original document; the
    ranked positions are then consumed in order over the current
    (progressively perturbed) document until a substitution flips the
    prediction or positions run out.  For entailment only the hypothesis is
    perturbed and similarity compares original vs. perturbed hypothesis.
    """
    if cfg.task != task_input.task:
        raise ValueError(f"config task {cfg.task!r} != input task {task_input.task!r}")
    ledger = QueryLedger()
    original = task_input.document
    dist = classify(target, task_input, ledger)
    pred_before = dist.predicted
    if trace is not None:
        trace["task"] = task_input.task
        trace["gold"] = gold
        trace["pred_before"] = pred_before
        trace["base_confidence"] = _fmt(dist.probs[pred_before])
        trace["ranking"] = []
        trace["positions"] = []
    if pred_before != gold:
        if trace is not None:
            trace["status"] = AttackStatus.SKIPPED.value
            trace["perturbed_indices"] = []
            trace["queries"] = ledger.as_dict()
        return AttackResult(
            status=AttackStatus.SKIPPED, pred_before=pred_before, ledger=ledger
        )
    y = pred_before
    current = original
    current_p = dist.probs[y]
    perturbed: list[int] = []
    if original.eligible_indices():
        ranked = rank_words(original, task_input, target, y, ledger=ledger, base=dist)
        if trace is not None:
            trace["ranking"] = [[rw.index, _fmt(rw.importance)] for rw in ranked]
        for rw in ranked:
            pos_trace: dict | None = None
            if trace is not None:
                pos_trace = {"index": rw.index}
                trace["positions"].append(pos_trace)
            cands = generate_candidates(
                current, rw.index, mlm, store, cfg, ledger=ledger, trace=pos_trace
            )
            if not cands:
                if pos_trace is not None:
                    pos_trace["decisions"] = []
                    pos_trace["outcome"] = [NONE]
                continue
            sel = select_candidate(
                current, rw.index, cands, original, task_input, target, encoder,
                cfg, y, current_p, ledger=ledger, trace=pos_trace,
            )
            if sel.kind == FLIPPED:
                perturbed.append(rw.index)
                if trace is not None:
                    pos_trace["outcome"] = [FLIPPED, sel.word]
                    trace["status"] = AttackStatus.SUCCESS.value
                    trace["perturbed_indices"] = perturbed
                    trace["similarity"] = _fmt(sel.similarity)
                    trace["pred_after"] = sel.pred_after
                    trace["queries"] = ledger.as_dict()
                return AttackResult(
                    status=AttackStatus.SUCCESS,
                    pred_before=pred_before,
                    ledger=ledger,
                    adversarial=sel.document,
                    pred_after=sel.pred_after,
                    perturbed_indices=tuple(perturbed),
                    similarity=sel.similarity,
                )
            if sel.kind == BEST_PARTIAL:
                current = sel.document
                current_p = sel.confidence
                perturbed.append(rw.index)
                if pos_trace is not None:
                    pos_trace["outcome"] = [BEST_PARTIAL, sel.word, _fmt(sel.confidence)]
            else:
                if pos_trace is not None:
                    pos_trace["outcome"] = [NONE]
    if trace is not None:
        trace["status"] = AttackStatus.FAILED.value
        trace["perturbed_indices"] = perturbed
        trace["queries"] = ledger.as_dict()
    return AttackResult(
        status=AttackStatus.FAILED,
        pred_before=pred_before,
        ledger=ledger,
        perturbed_indices=tuple(perturbed),
    )
