"""Offline fixtures: tiny randomly initialized BERT models with a local
wordpiece vocabulary, saved in the standard layout so the real loading path
is exercised without any network access.  Weights are seeded, so responses
are deterministic across runs.
"""

from __future__ import annotations

from pathlib import Path

import torch
from transformers import (
    BertConfig,
    BertForMaskedLM,
    BertForSequenceClassification,
    BertModel,
    BertTokenizer,
)

TINY_VOCAB = [
    "[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]",
    "the", "a", "an", "i", "he", "she", "it", "this", "that", "is", "was",
    "are", "have", "has", "and", "but", "not", "very",
    "love", "adore", "like", "enjoy", "hate", "despise", "dislike",
    "movie", "film", "picture", "story", "plot", "acting", "cast",
    "great", "fine", "good", "bad", "poor", "awful", "terrible",
    "wonderful", "lovely", "amazing", "boring", "dull", "slow", "fun",
    "best", "worst", "weak", "charming", "flat",
    "##ing", "##ed", "##s", "##ly",
    ".", ",", "!", "?", "'",
]


def write_vocab(path: Path) -> Path:
    path.write_text("\n".join(TINY_VOCAB) + "\n", encoding="utf-8")
    return path


def build_tiny_model_dirs(root: str | Path, seed: int = 0) -> dict[str, str]:
    """Create mlm/, classifier/ and encoder/ model directories under root."""
    root = Path(root)
    root.mkdir(parents=True, exist_ok=True)
    vocab_file = write_vocab(root / "vocab.txt")
    tokenizer = BertTokenizer(str(vocab_file), do_lower_case=True)
    config = BertConfig(
        vocab_size=len(TINY_VOCAB),
        hidden_size=32,
        num_hidden_layers=2,
        num_attention_heads=2,
        intermediate_size=64,
        max_position_embeddings=128,
    )
    torch.manual_seed(seed)
    out = {}
    for name, model in (
        ("mlm", BertForMaskedLM(config)),
        ("classifier", BertForSequenceClassification(
            BertConfig(num_labels=2, **{k: v for k, v in config.to_dict().items()
                                        if k in ("vocab_size", "hidden_size",
                                                 "num_hidden_layers", "num_attention_heads",
                                                 "intermediate_size", "max_position_embeddings")})
        )),
        ("encoder", BertModel(config)),
    ):
        target = root / name
        model.eval()
        model.save_pretrained(target)
        tokenizer.save_pretrained(target)
        out[name] = str(target)
    return out
