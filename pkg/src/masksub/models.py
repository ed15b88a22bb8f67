"""Contracts for the four black-box scorers plus deterministic toy backends.

The attack only ever observes model outputs, so everything a backend must
provide fits in four small interfaces: class probabilities for a task input,
top-k predictions at a masked position, a sentence-level similarity score,
and a grammatical error count.  The toy backends are fully specified, pure
Python and bit-deterministic, which is what makes every engine property
testable offline.
"""

from __future__ import annotations

import math
import string
from dataclasses import dataclass
from typing import Iterable, Mapping, Protocol, Sequence, runtime_checkable

from . import text as text_ops
from .stopwords import STOPWORDS
from .text import Document, tokenize

CLASSIFICATION = "classification"
ENTAILMENT = "entailment"

_PUNCT = frozenset(string.punctuation)


class BackendError(RuntimeError):
    """A scorer could not produce a usable answer (transport or contract)."""


@dataclass(frozen=True)
class ClassDistribution:
    """Probability vector returned by one target-model query.

    ``predicted`` is the argmax with the lowest index winning ties.
    """

    probs: tuple[float, ...]

    def __post_init__(self):
        if not self.probs:
            raise ValueError("empty probability vector")
        total = 0.0
        for p in self.probs:
            if not -1e-9 <= p <= 1.0 + 1e-9:
                raise ValueError(f"probability {p} outside [0, 1]")
            total += p
        if abs(total - 1.0) > 1e-6:
            raise ValueError(f"probabilities sum to {total}, not 1")

    @property
    def predicted(self) -> int:
        return max(range(len(self.probs)), key=lambda i: self.probs[i])


@dataclass(frozen=True)
class Candidate:
    """A proposed replacement word with its masked-LM probability."""

    word: str
    mlm_prob: float
    embed_sim: "SimilarityScore | None" = None  # filled by the embedding filter

    def __post_init__(self):
        if not self.word or self.word != self.word.lower():
            raise ValueError(f"candidate word must be lowercase and non-empty: {self.word!r}")
        if any(ch.isspace() for ch in self.word):
            raise ValueError(f"candidate word contains whitespace: {self.word!r}")
        if not 0.0 <= self.mlm_prob <= 1.0:
            raise ValueError(f"mlm_prob {self.mlm_prob} outside [0, 1]")


@dataclass
class QueryLedger:
    """Counts of backend invocations consumed by one attack."""

    target_queries: int = 0
    mlm_queries: int = 0
    encoder_queries: int = 0

    def as_dict(self) -> dict[str, int]:
        return {
            "target_queries": self.target_queries,
            "mlm_queries": self.mlm_queries,
            "encoder_queries": self.encoder_queries,
        }


@dataclass(frozen=True)
class TaskInput:
    """One example as the target model sees it.

    Classification populates ``text``; entailment populates ``premise`` (a
    fixed raw string) and ``hypothesis`` (the document under attack).
    """

    task: str
    text: Document | None = None
    premise: str | None = None
    hypothesis: Document | None = None

    def __post_init__(self):
        if self.task == CLASSIFICATION:
            if self.text is None or self.premise is not None or self.hypothesis is not None:
                raise ValueError("classification input must populate text only")
        elif self.task == ENTAILMENT:
            if self.text is not None or self.premise is None or self.hypothesis is None:
                raise ValueError("entailment input must populate premise and hypothesis")
        else:
            raise ValueError(f"unknown task {self.task!r}")

    @classmethod
    def for_classification(cls, doc: Document) -> "TaskInput":
        return cls(task=CLASSIFICATION, text=doc)

    @classmethod
    def for_entailment(cls, premise: str, hypothesis: Document) -> "TaskInput":
        return cls(task=ENTAILMENT, premise=premise, hypothesis=hypothesis)

    @property
    def document(self) -> Document:
        """The document the attack perturbs (hypothesis for entailment)."""
        doc = self.text if self.task == CLASSIFICATION else self.hypothesis
        assert doc is not None
        return doc

    def with_document(self, doc: Document) -> "TaskInput":
        if self.task == CLASSIFICATION:
            return TaskInput(task=CLASSIFICATION, text=doc)
        return TaskInput(task=ENTAILMENT, premise=self.premise, hypothesis=doc)


@runtime_checkable
class TargetModel(Protocol):
    def predict_proba(self, task_input: TaskInput) -> Sequence[float]: ...


@runtime_checkable
class MaskedLM(Protocol):
    def predict_tokens(
        self, original: Document, masked: Document, index: int, top_k: int
    ) -> Sequence[tuple[str, float]]: ...


@runtime_checkable
class SentenceEncoder(Protocol):
    def similarity(self, a: str, b: str) -> float: ...


@runtime_checkable
class GrammarChecker(Protocol):
    def error_count(self, text: str) -> int: ...


# ---------------------------------------------------------------------------
# Metered operations.  Each calls its backend exactly once and increments the
# matching ledger counter, so ledger totals equal backend invocations.
# ---------------------------------------------------------------------------


def classify(
    target: TargetModel, task_input: TaskInput, ledger: QueryLedger | None = None
) -> ClassDistribution:
    """Query the target model once and validate the returned distribution."""
    if ledger is not None:
        ledger.target_queries += 1
    probs = target.predict_proba(task_input)
    try:
        return ClassDistribution(tuple(float(p) for p in probs))
    except (TypeError, ValueError) as exc:
        raise BackendError(f"bad class distribution from target: {exc}") from exc


def _is_clean_word(word: str) -> bool:
    """True when substituting the word keeps the document round-trippable.

    Rejects anything containing whitespace or punctuation characters, which
    also covers the mask string, punctuation-only tokens and subword
    fragments like wordpiece "##ing".
    """
    return bool(word) and not any(ch.isspace() or ch in _PUNCT for ch in word)


def fill_mask(
    mlm: MaskedLM,
    original: Document,
    masked: Document,
    index: int,
    k: int,
    ledger: QueryLedger | None = None,
) -> list[Candidate]:
    """Query the masked LM on the (original, masked) pair at one position.

    Returns at most ``k`` candidates sorted by probability descending (ties
    broken lexicographically), deduplicated, excluding the original word,
    stopwords, and any token that is not a single clean word.
    """
    if masked.tokens[index].kind != text_ops.MASK_SENTINEL:
        raise ValueError(f"fill_mask: token {index} of masked doc is not the mask")
    if original.tokens[index].kind != text_ops.WORD:
        raise ValueError(f"fill_mask: token {index} of original doc is not a word")
    if k < 1:
        raise ValueError("k must be >= 1")
    if ledger is not None:
        ledger.mlm_queries += 1
    raw = mlm.predict_tokens(original, masked, index, k)
    original_word = original.tokens[index].text
    scored: list[tuple[float, str]] = []
    for token, prob in raw:
        prob = float(prob)
        if not 0.0 <= prob <= 1.0:
            raise BackendError(f"masked-LM probability {prob} outside [0, 1]")
        word = str(token).lower()
        if not _is_clean_word(word):
            continue
        if word == original_word or word in STOPWORDS:
            continue
        scored.append((prob, word))
    scored.sort(key=lambda pair: (-pair[0], pair[1]))
    out: list[Candidate] = []
    seen: set[str] = set()
    for prob, word in scored:
        if word in seen:
            continue
        seen.add(word)
        out.append(Candidate(word=word, mlm_prob=prob))
        if len(out) == k:
            break
    return out


def sentence_similarity(
    encoder: SentenceEncoder, a: str, b: str, ledger: QueryLedger | None = None
) -> float:
    """Semantic similarity of two raw strings, in [0, 1]."""
    if not a or not b:
        raise ValueError("sentence_similarity: empty input")
    if ledger is not None:
        ledger.encoder_queries += 1
    score = float(encoder.similarity(a, b))
    if not 0.0 <= score <= 1.0:
        raise BackendError(f"similarity {score} outside [0, 1]")
    return score


def grammar_errors(checker: GrammarChecker, text: str) -> int:
    count = int(checker.error_count(text))
    if count < 0:
        raise BackendError(f"negative grammar error count {count}")
    return count


# ---------------------------------------------------------------------------
# Toy backends.  Pure Python arithmetic only: results must be bit-identical
# across runs, interpreters and worker counts.
# ---------------------------------------------------------------------------


def _softmax(scores: Sequence[float]) -> list[float]:
    shift = max(scores)
    exps = [math.exp(s - shift) for s in scores]
    total = sum(exps)
    return [e / total for e in exps]


class ToyLinearClassifier:
    """Linear bag-of-words scorer with a softmax head.

    Each class has a word -> weight table; the score of a class is the sum
    of weights over all tokens (premise tokens included for entailment) and
    unknown words contribute zero.
    """

    def __init__(self, class_weights: Sequence[Mapping[str, float]]):
        if len(class_weights) < 2:
            raise ValueError("need at least two classes")
        self.class_weights = [dict(w) for w in class_weights]

    @property
    def num_classes(self) -> int:
        return len(self.class_weights)

    def _words(self, task_input: TaskInput) -> list[str]:
        words = []
        if task_input.task == ENTAILMENT:
            words.extend(tokenize(task_input.premise or "").words)
        words.extend(task_input.document.words)
        return words

    def predict_proba(self, task_input: TaskInput) -> list[float]:
        words = self._words(task_input)
        scores = [
            sum(weights.get(w, 0.0) for w in words)
            for weights in self.class_weights
        ]
        return _softmax(scores)


class ToyMaskedLM:
    """Masked LM backed by a fixed synonym table.

    The (original, masked) sentence pair is resolved through the original
    word at the masked position, mirroring how the pair input keeps the
    prediction anchored to the word being replaced.  Entries are returned
    sorted by probability descending (ties lexicographic) and truncated to
    ``top_k``, like a real model's top-k head; a word absent from the table
    yields no candidates.
    """

    def __init__(self, table: Mapping[str, Iterable[tuple[str, float]]]):
        self.table = {
            word: sorted(entries, key=lambda e: (-e[1], e[0]))
            for word, entries in table.items()
        }

    def predict_tokens(
        self, original: Document, masked: Document, index: int, top_k: int
    ) -> list[tuple[str, float]]:
        word = original.tokens[index].text
        return list(self.table.get(word, []))[:top_k]


class ToyEncoder:
    """Mean-of-word-vectors sentence encoder with cosine clamped to [0, 1].

    Tokens missing from the vector table are ignored.  If either side has no
    known tokens (or a zero mean vector) the cosine is undefined; the score
    then falls back to 1.0 for identical token sequences and 0.0 otherwise,
    which preserves the self-similarity contract.
    """

    def __init__(self, vectors: Mapping[str, Sequence[float]]):
        self.vectors = {w: [float(x) for x in v] for w, v in vectors.items()}

    def _mean(self, sent: str) -> tuple[list[float] | None, tuple[str, ...]]:
        words = tokenize(sent).words
        known = [self.vectors[w] for w in words if w in self.vectors]
        if not known:
            return None, words
        dim = len(known[0])
        mean = [sum(vec[d] for vec in known) / len(known) for d in range(dim)]
        return mean, words

    def similarity(self, a: str, b: str) -> float:
        mean_a, words_a = self._mean(a)
        mean_b, words_b = self._mean(b)
        if mean_a is not None and mean_b is not None:
            norm_a = math.sqrt(sum(x * x for x in mean_a))
            norm_b = math.sqrt(sum(x * x for x in mean_b))
            if norm_a > 0.0 and norm_b > 0.0:
                dot = sum(x * y for x, y in zip(mean_a, mean_b))
                return max(0.0, min(1.0, dot / (norm_a * norm_b)))
        return 1.0 if words_a == words_b else 0.0


class NullChecker:
    """Grammar checker that reports zero errors for any text."""

    def error_count(self, text: str) -> int:
        return 0
