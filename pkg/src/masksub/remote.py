"""HTTP backends speaking the model-server JSON protocol.

One request per call, no batching: the attack is sequential by nature and
the ledger counts map one-to-one onto requests.  All failures (transport,
non-200 status, malformed payload) surface as BackendError so the harness
can mark the affected example as errored and keep going.

Wire shapes (all numbers JSON floats, UTF-8):
    POST /classify   {"task": "classification", "texts": ["..."]}
                     {"task": "entailment", "pairs": [{"premise": "...", "hypothesis": "..."}]}
                     -> {"probs": [[...]]}
    POST /fill_mask  {"original": "...", "masked": "...", "top_k": 50}
                     -> {"candidates": [{"token": "...", "prob": 0.0}]}
    POST /similarity {"a": "...", "b": "..."} -> {"score": 0.0}
    POST /grammar    {"text": "..."} -> {"error_count": 0}

Non-200 responses carry {"error": "message"}.  The mask sentinel on the
wire is the literal string "[MASK]".
"""

from __future__ import annotations

from typing import Any

import requests

from .models import BackendError, TaskInput, CLASSIFICATION
from .text import Document, detokenize

DEFAULT_TIMEOUT = 30.0


def _post(base_url: str, path: str, payload: dict, timeout: float) -> dict:
    url = base_url.rstrip("/") + path
    try:
        resp = requests.post(url, json=payload, timeout=timeout)
    except requests.RequestException as exc:
        raise BackendError(f"POST {url} failed: {exc}") from exc
    try:
        body = resp.json()
    except ValueError as exc:
        raise BackendError(f"POST {url}: non-JSON response (HTTP {resp.status_code})") from exc
    if resp.status_code != 200:
        message = body.get("error", "") if isinstance(body, dict) else ""
        raise BackendError(f"POST {url}: HTTP {resp.status_code}: {message}")
    if not isinstance(body, dict):
        raise BackendError(f"POST {url}: expected JSON object, got {type(body).__name__}")
    return body


class _HttpBackend:
    def __init__(self, base_url: str, timeout: float = DEFAULT_TIMEOUT):
        self.base_url = base_url
        self.timeout = timeout

    def _post(self, path: str, payload: dict) -> dict:
        return _post(self.base_url, path, payload, self.timeout)


def _require(body: dict, key: str, url_hint: str) -> Any:
    if key not in body:
        raise BackendError(f"{url_hint}: response missing {key!r}")
    return body[key]


class HttpTargetModel(_HttpBackend):
    """Remote classifier.  ``num_classes``, when given, is enforced."""

    def __init__(self, base_url: str, num_classes: int | None = None,
                 timeout: float = DEFAULT_TIMEOUT):
        super().__init__(base_url, timeout)
        self.num_classes = num_classes

    def predict_proba(self, task_input: TaskInput) -> list[float]:
        if task_input.task == CLASSIFICATION:
            payload = {"task": task_input.task, "texts": [detokenize(task_input.document)]}
        else:
            payload = {
                "task": task_input.task,
                "pairs": [{
                    "premise": task_input.premise,
                    "hypothesis": detokenize(task_input.document),
                }],
            }
        body = self._post("/classify", payload)
        probs = _require(body, "probs", "/classify")
        if not isinstance(probs, list) or len(probs) != 1 or not isinstance(probs[0], list):
            raise BackendError("/classify: probs must be a list holding one row")
        row = [float(p) for p in probs[0]]
        if self.num_classes is not None and len(row) != self.num_classes:
            raise BackendError(
                f"/classify: got {len(row)} classes, configured for {self.num_classes}"
            )
        return row


class HttpMaskedLM(_HttpBackend):
    def predict_tokens(
        self, original: Document, masked: Document, index: int, top_k: int
    ) -> list[tuple[str, float]]:
        payload = {
            "original": detokenize(original),
            "masked": detokenize(masked),
            "top_k": top_k,
        }
        body = self._post("/fill_mask", payload)
        candidates = _require(body, "candidates", "/fill_mask")
        if not isinstance(candidates, list):
            raise BackendError("/fill_mask: candidates must be a list")
        out = []
        for entry in candidates:
            if not isinstance(entry, dict) or "token" not in entry or "prob" not in entry:
                raise BackendError("/fill_mask: each candidate needs token and prob")
            out.append((str(entry["token"]), float(entry["prob"])))
        return out


class HttpSentenceEncoder(_HttpBackend):
    def similarity(self, a: str, b: str) -> float:
        body = self._post("/similarity", {"a": a, "b": b})
        return float(_require(body, "score", "/similarity"))


class HttpGrammarChecker(_HttpBackend):
    def error_count(self, text: str) -> int:
        body = self._post("/grammar", {"text": text})
        return int(_require(body, "error_count", "/grammar"))
