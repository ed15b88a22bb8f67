"""Counter-fitted word vectors and the embedding-similarity candidate filter.

The store is read-only after loading; the filter keeps only substitution
candidates whose vector stays close to the original word's vector, which is
what pushes candidates toward synonyms rather than merely plausible words.
"""

from __future__ import annotations

from dataclasses import dataclass, replace as _dc_replace
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .models import Candidate


@dataclass(frozen=True)
class SimilarityScore:
    """A cosine similarity, guaranteed to sit in [-1, 1]."""

    value: float

    def __post_init__(self):
        if not -1.0 <= self.value <= 1.0:
            raise ValueError(f"similarity {self.value} outside [-1, 1]")

    def __float__(self) -> float:
        return self.value


class EmbeddingStore:
    """Word -> dense vector map with a single shared dimension.

    Lookups of absent words return None, never a zero vector, so callers can
    tell "unknown word" apart from "orthogonal word".
    """

    def __init__(self, dimension: int, vectors: Mapping[str, np.ndarray]):
        if dimension < 1:
            raise ValueError("dimension must be positive")
        self.dimension = dimension
        self._vectors: dict[str, np.ndarray] = {}
        for word, vec in vectors.items():
            arr = np.asarray(vec, dtype=np.float64)
            if arr.shape != (dimension,):
                raise ValueError(
                    f"vector for {word!r} has shape {arr.shape}, expected ({dimension},)"
                )
            self._vectors[word] = arr

    def __len__(self) -> int:
        return len(self._vectors)

    def __contains__(self, word: str) -> bool:
        return word in self._vectors

    def get(self, word: str) -> np.ndarray | None:
        return self._vectors.get(word)

    def words(self):
        """All stored words, in insertion order."""
        return self._vectors.keys()


def load_embeddings(path: str | Path) -> EmbeddingStore:
    """Parse a text embedding file: one "token v1 .. vd" entry per line.

    The dimension is fixed by the first entry; later lines with a different
    dimension are hard errors naming the line.  Duplicate tokens keep the
    first occurrence.  An optional leading "count dim" header (exactly two
    integer fields) is skipped.
    """
    path = Path(path)
    vectors: dict[str, np.ndarray] = {}
    dimension: int | None = None
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            fields = line.split()
            if not fields:
                continue
            if dimension is None and len(fields) == 2:
                try:
                    int(fields[0]), int(fields[1])
                except ValueError:
                    pass
                else:
                    continue  # header line
            word, values = fields[0], fields[1:]
            if not values:
                raise ValueError(f"{path}:{lineno}: no vector components")
            try:
                vec = np.array([float(v) for v in values], dtype=np.float64)
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: bad float: {exc}") from None
            if dimension is None:
                dimension = len(vec)
            elif len(vec) != dimension:
                raise ValueError(
                    f"{path}:{lineno}: dimension {len(vec)} != {dimension} "
                    "from first entry"
                )
            if word not in vectors:
                vectors[word] = vec
    if not vectors:
        raise ValueError(f"{path}: no embeddings loaded")
    assert dimension is not None
    return EmbeddingStore(dimension, vectors)


def cosine(a: Sequence[float] | np.ndarray, b: Sequence[float] | np.ndarray) -> SimilarityScore:
    """Cosine similarity of two equal-dimension, non-zero vectors."""
    va = np.asarray(a, dtype=np.float64)
    vb = np.asarray(b, dtype=np.float64)
    if va.shape != vb.shape:
        raise ValueError(f"cosine: dimension mismatch {va.shape} vs {vb.shape}")
    na = float(np.linalg.norm(va))
    nb = float(np.linalg.norm(vb))
    if na == 0.0 or nb == 0.0:
        raise ValueError("cosine: zero-norm vector")
    value = float(np.dot(va, vb) / (na * nb))
    # guard against fp drift just past the ends of the range
    value = min(1.0, max(-1.0, value))
    return SimilarityScore(value)


def filter_candidates(
    store: EmbeddingStore,
    original: str,
    candidates: Iterable[Candidate],
    delta: float,
) -> list[Candidate]:
    """Keep candidates with cosine(original, candidate) >= delta.

    Candidates missing from the store are dropped.  If the original word is
    itself out of vocabulary the filter cannot say anything and passes every
    candidate through unchanged; the downstream sentence-similarity gate
    still applies.  Input order is preserved.
    """
    if not 0.0 <= delta <= 1.0:
        raise ValueError(f"delta must be in [0, 1], got {delta}")
    original_vec = store.get(original)
    candidates = list(candidates)
    if original_vec is None:
        return candidates
    kept = []
    for cand in candidates:
        vec = store.get(cand.word)
        if vec is None:
            continue
        sim = cosine(original_vec, vec)
        if sim.value >= delta:
            kept.append(_dc_replace(cand, embed_sim=sim))
    return kept
