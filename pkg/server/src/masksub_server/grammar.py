"""Lightweight rule-based grammar checker.

The error count is the number of rule matches.  The rules cover a small set
of unambiguous English mistakes; the point is a deterministic, dependency
free signal for the error-increase metric, not full proofreading coverage.
"""

from __future__ import annotations

import re

_WORD = re.compile(r"[a-z']+")

_SINGULAR_SUBJECTS = {"he", "she", "it"}
_SINGULAR_BAD_VERBS = {"have", "do", "are", "were", "aren't", "don't"}

_PLURAL_SUBJECTS = {"they", "we", "you"}
_PLURAL_BAD_VERBS = {"has", "is", "was", "does", "am"}

_I_BAD_VERBS = {"is", "are", "has", "does"}

_VOWELS = "aeiou"


def _words(text: str) -> list[str]:
    return _WORD.findall(text.lower())


def error_count(text: str) -> int:
    """Number of rule matches in ``text``."""
    words = _words(text)
    errors = 0
    for prev, cur in zip(words, words[1:]):
        # subject-verb agreement
        if prev in _SINGULAR_SUBJECTS and cur in _SINGULAR_BAD_VERBS:
            errors += 1
        elif prev in _PLURAL_SUBJECTS and cur in _PLURAL_BAD_VERBS:
            errors += 1
        elif prev == "i" and cur in _I_BAD_VERBS:
            errors += 1
        # article agreement ("a apple", "an movie"); approximate by spelling
        elif prev == "a" and cur[0] in _VOWELS:
            errors += 1
        elif prev == "an" and cur[0] not in _VOWELS:
            errors += 1
        # doubled word ("the the")
        elif prev == cur:
            errors += 1
    return errors


class RuleBasedChecker:
    def error_count(self, text: str) -> int:
        return error_count(text)
