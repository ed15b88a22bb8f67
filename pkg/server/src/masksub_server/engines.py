"""Model wrappers behind the wire protocol.

All engines load once at startup and are shared read-only across requests;
inference runs under no_grad on the configured device.
"""

from __future__ import annotations

import string

import torch
from transformers import (
    AutoModel,
    AutoModelForMaskedLM,
    AutoModelForSequenceClassification,
    AutoTokenizer,
)

_PUNCT = set(string.punctuation)


class MissingMaskError(ValueError):
    """The masked input contained no mask token after tokenization."""


def _is_whole_word(token: str) -> bool:
    """Whole-word vocabulary entries only: no subword pieces, no specials,
    nothing containing punctuation or whitespace."""
    if not token or token.startswith("##"):
        return False
    return not any(ch.isspace() or ch in _PUNCT for ch in token)


class MaskedLMEngine:
    """Fill-mask over an (original, masked) sentence pair.

    The pair is encoded as segment A / segment B with the model's separator
    token, so the prediction at the mask conditions on the original word as
    well as the surrounding context.  The mask position is located by
    scanning the encoded ids for the mask token id, which stays correct even
    when subword tokenization drifts between the two segments.
    """

    def __init__(self, model_name: str, max_seq_len: int, device: str):
        self.tokenizer = AutoTokenizer.from_pretrained(model_name)
        self.model = AutoModelForMaskedLM.from_pretrained(model_name)
        self.model.to(device)
        self.model.eval()
        self.max_seq_len = max_seq_len
        self.device = device

    def encode_pair(self, original: str, masked: str):
        return self.tokenizer(
            original,
            masked,
            truncation=True,
            max_length=self.max_seq_len,
            return_tensors="pt",
        )

    def top_candidates(self, original: str, masked: str, top_k: int):
        encoding = self.encode_pair(original, masked).to(self.device)
        ids = encoding["input_ids"][0]
        positions = (ids == self.tokenizer.mask_token_id).nonzero(as_tuple=True)[0]
        if positions.numel() == 0:
            raise MissingMaskError("no mask token in the masked input")
        position = int(positions[0])
        with torch.no_grad():
            logits = self.model(**encoding).logits[0, position]
        probs = torch.softmax(logits, dim=-1)
        pool = min(len(probs), max(4 * top_k, 200))
        top = torch.topk(probs, pool)
        special_ids = set(self.tokenizer.all_special_ids)
        out: list[tuple[str, float]] = []
        for prob, idx in zip(top.values.tolist(), top.indices.tolist()):
            if idx in special_ids:
                continue
            token = self.tokenizer.convert_ids_to_tokens(idx)
            if not _is_whole_word(token):
                continue
            out.append((token, float(prob)))
            if len(out) == top_k:
                break
        return out


class ClassifierEngine:
    def __init__(self, model_name: str, max_seq_len: int, device: str):
        self.tokenizer = AutoTokenizer.from_pretrained(model_name)
        self.model = AutoModelForSequenceClassification.from_pretrained(model_name)
        self.model.to(device)
        self.model.eval()
        self.max_seq_len = max_seq_len
        self.device = device

    def _probs(self, encoding) -> list[float]:
        with torch.no_grad():
            logits = self.model(**encoding.to(self.device)).logits[0]
        return torch.softmax(logits, dim=-1).tolist()

    def classify_texts(self, texts: list[str]) -> list[list[float]]:
        rows = []
        for text in texts:
            enc = self.tokenizer(
                text, truncation=True, max_length=self.max_seq_len,
                return_tensors="pt",
            )
            rows.append(self._probs(enc))
        return rows

    def classify_pairs(self, pairs: list[tuple[str, str]]) -> list[list[float]]:
        rows = []
        for premise, hypothesis in pairs:
            enc = self.tokenizer(
                premise, hypothesis, truncation=True,
                max_length=self.max_seq_len, return_tensors="pt",
            )
            rows.append(self._probs(enc))
        return rows


class EncoderEngine:
    """Mean-pooled transformer sentence embeddings, cosine clamped to [0, 1]."""

    def __init__(self, model_name: str, max_seq_len: int, device: str):
        self.tokenizer = AutoTokenizer.from_pretrained(model_name)
        self.model = AutoModel.from_pretrained(model_name)
        self.model.to(device)
        self.model.eval()
        self.max_seq_len = max_seq_len
        self.device = device

    def _embed(self, text: str) -> torch.Tensor:
        enc = self.tokenizer(
            text, truncation=True, max_length=self.max_seq_len,
            return_tensors="pt",
        ).to(self.device)
        with torch.no_grad():
            hidden = self.model(**enc).last_hidden_state[0]
        mask = enc["attention_mask"][0].unsqueeze(-1)
        return (hidden * mask).sum(dim=0) / mask.sum()

    def similarity(self, a: str, b: str) -> float:
        va, vb = self._embed(a), self._embed(b)
        cos = torch.nn.functional.cosine_similarity(va, vb, dim=0).item()
        return max(0.0, min(1.0, cos))
