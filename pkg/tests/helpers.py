"""Shared test utilities: counting test doubles and fixture vector helpers."""

from __future__ import annotations

import math


def unit_vec(cos_with_x: float) -> tuple[float, float]:
    """2-d unit vector whose cosine against (1, 0) is exactly the given value."""
    return (cos_with_x, math.sqrt(1.0 - cos_with_x * cos_with_x))


class CountingTarget:
    """Wraps a target model and counts raw invocations."""

    def __init__(self, inner):
        self.inner = inner
        self.calls = 0

    def predict_proba(self, task_input):
        self.calls += 1
        return self.inner.predict_proba(task_input)


class CountingMaskedLM:
    def __init__(self, inner):
        self.inner = inner
        self.calls = 0

    def predict_tokens(self, original, masked, index, top_k):
        self.calls += 1
        return self.inner.predict_tokens(original, masked, index, top_k)


class CountingEncoder:
    def __init__(self, inner):
        self.inner = inner
        self.calls = 0

    def similarity(self, a, b):
        self.calls += 1
        return self.inner.similarity(a, b)


class FixedEncoder:
    """Returns canned similarities for specific (a, b) pairs."""

    def __init__(self, table=None, default=1.0):
        self.table = dict(table or {})
        self.default = default

    def similarity(self, a, b):
        if (a, b) in self.table:
            return self.table[(a, b)]
        return self.table.get((b, a), self.default)


class SpyMaskedLM:
    """Records every fill-mask call so tests can inspect windowing."""

    def __init__(self, inner):
        self.inner = inner
        self.calls = []

    def predict_tokens(self, original, masked, index, top_k):
        self.calls.append((original, masked, index, top_k))
        return self.inner.predict_tokens(original, masked, index, top_k)
