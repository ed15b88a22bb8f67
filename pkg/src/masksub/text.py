"""Word-level text representation and the document edits the attack is built on.

Everything here is immutable and pure: masking, substituting and windowing
return new documents, so any number of attack workers can share inputs.
"""

from __future__ import annotations

import string
from dataclasses import dataclass, replace

from .stopwords import STOPWORDS

MASK_TOKEN = "[MASK]"

WORD = "word"
PUNCTUATION = "punctuation"
MASK_SENTINEL = "mask-sentinel"

_PUNCT = frozenset(string.punctuation)


@dataclass(frozen=True)
class Token:
    """One unit of a document.

    ``text`` is lowercase except for the reserved mask string, whose kind is
    always ``mask-sentinel``.  ``is_stopword`` can only be set on word tokens.
    """

    text: str
    kind: str = WORD
    is_stopword: bool = False

    def __post_init__(self):
        if not self.text:
            raise ValueError("token text must be non-empty")
        if (self.kind == MASK_SENTINEL) != (self.text == MASK_TOKEN):
            raise ValueError(
                f"kind={self.kind!r} inconsistent with text {self.text!r}"
            )
        if self.is_stopword and self.kind != WORD:
            raise ValueError("only word tokens can be stopwords")


@dataclass(frozen=True)
class Document:
    """A tokenized text plus the raw string it came from."""

    tokens: tuple[Token, ...]
    source: str = ""

    def __len__(self) -> int:
        return len(self.tokens)

    @property
    def words(self) -> tuple[str, ...]:
        return tuple(t.text for t in self.tokens)

    @property
    def word_count(self) -> int:
        """Number of word tokens (punctuation and mask sentinels excluded)."""
        return sum(1 for t in self.tokens if t.kind == WORD)

    def eligible_indices(self) -> list[int]:
        """Positions the attack may rank and substitute: non-stopword words."""
        return [
            i for i, t in enumerate(self.tokens)
            if t.kind == WORD and not t.is_stopword
        ]


def _word_token(text: str) -> Token:
    return Token(text=text, kind=WORD, is_stopword=text in STOPWORDS)


def _split_chunk(chunk: str) -> list[Token]:
    """Split one whitespace-delimited chunk into word and punctuation runs."""
    tokens: list[Token] = []
    run = ""
    run_is_punct: bool | None = None
    for ch in chunk:
        ch_is_punct = ch in _PUNCT
        if run and ch_is_punct != run_is_punct:
            tokens.append(
                Token(run, PUNCTUATION) if run_is_punct else _word_token(run)
            )
            run = ""
        run += ch
        run_is_punct = ch_is_punct
    if run:
        tokens.append(Token(run, PUNCTUATION) if run_is_punct else _word_token(run))
    return tokens


def tokenize(raw: str) -> Document:
    """Lowercase and split ``raw`` into word / punctuation tokens.

    Chunks equal to the reserved mask string (any case) become mask
    sentinels; everything else is split into maximal runs of punctuation or
    non-punctuation characters.  Empty input yields an empty document.
    """
    tokens: list[Token] = []
    for chunk in raw.split():
        if chunk.upper() == MASK_TOKEN:
            tokens.append(Token(MASK_TOKEN, MASK_SENTINEL))
        else:
            tokens.extend(_split_chunk(chunk.lower()))
    return Document(tokens=tuple(tokens), source=raw)


def detokenize(doc: Document) -> str:
    """Join tokens with single spaces.

    Whitespace is normalized; punctuation keeps the space inserted by
    tokenization (reconstructing original spacing is out of scope).
    """
    return " ".join(t.text for t in doc.tokens)


def _check_word_index(doc: Document, i: int, op: str) -> None:
    if not 0 <= i < len(doc.tokens):
        raise IndexError(f"{op}: index {i} out of range for {len(doc.tokens)} tokens")
    kind = doc.tokens[i].kind
    if kind != WORD:
        raise ValueError(f"{op}: token {i} is {kind}, not a word")


def mask_word(doc: Document, i: int) -> Document:
    """Return a copy of ``doc`` with word ``i`` replaced by the mask sentinel."""
    _check_word_index(doc, i, "mask_word")
    tokens = list(doc.tokens)
    tokens[i] = Token(MASK_TOKEN, MASK_SENTINEL)
    return replace(doc, tokens=tuple(tokens))


def substitute(doc: Document, i: int, word: str) -> Document:
    """Return a copy of ``doc`` with the text of word ``i`` replaced.

    ``word`` must itself tokenize to a single word token, otherwise the
    substitution would change the token count on a detokenize/tokenize
    round trip.
    """
    _check_word_index(doc, i, "substitute")
    word = word.lower()
    if not word or any(ch.isspace() or ch in _PUNCT for ch in word):
        raise ValueError(f"substitute: {word!r} is not a single word token")
    tokens = list(doc.tokens)
    tokens[i] = _word_token(word)
    return replace(doc, tokens=tuple(tokens))


def delete_word(doc: Document, i: int) -> Document:
    """Return a copy of ``doc`` with token ``i`` removed (used for ranking)."""
    if not 0 <= i < len(doc.tokens):
        raise IndexError(f"delete_word: index {i} out of range")
    tokens = doc.tokens[:i] + doc.tokens[i + 1:]
    return replace(doc, tokens=tokens)


def window_span(n: int, i: int, w: int) -> tuple[int, int]:
    """Half-open token span of at most ``w`` tokens around index ``i``.

    The span keeps floor(w/2) tokens to the left of ``i`` and the remainder
    to the right, shifting at document boundaries so the span always has
    min(n, w) tokens.
    """
    if not 0 <= i < n:
        raise IndexError(f"window_span: index {i} out of range for {n} tokens")
    if w < 1:
        raise ValueError("window size must be >= 1")
    if n <= w:
        return 0, n
    start = i - w // 2
    start = max(start, 0)
    start = min(start, n - w)
    return start, start + w


def context_window(
    original: Document, masked: Document, i: int, w: int
) -> tuple[Document, Document]:
    """Truncate both documents to the same span of at most ``w`` tokens.

    The span contains index ``i`` (the masked position), so the sentinel
    always survives truncation and sits at the same offset in both outputs.
    """
    if len(original.tokens) != len(masked.tokens):
        raise ValueError(
            "context_window: documents differ in length "
            f"({len(original.tokens)} vs {len(masked.tokens)})"
        )
    if masked.tokens[i].kind != MASK_SENTINEL:
        raise ValueError(f"context_window: token {i} of masked doc is not the mask")
    start, stop = window_span(len(original.tokens), i, w)
    return (
        replace(original, tokens=original.tokens[start:stop]),
        replace(masked, tokens=masked.tokens[start:stop]),
    )
