import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from masksub import EmbeddingStore, ToyEncoder, ToyLinearClassifier, ToyMaskedLM

from helpers import unit_vec


@pytest.fixture
def toy_classifier():
    """The two-class linear toy from the worked examples.

    Class 0 (positive) weights love=2.0 great=1.5, class 1 (negative)
    weights hate=2.0 bad=1.5.
    """
    return ToyLinearClassifier([
        {"love": 2.0, "great": 1.5},
        {"hate": 2.0, "bad": 1.5},
    ])


@pytest.fixture
def love_mlm():
    return ToyMaskedLM({"love": [("adore", 0.6), ("like", 0.3), ("enjoy", 0.1)]})


@pytest.fixture
def love_vectors():
    """2-d vectors with hand-picked cosines against "love" = (1, 0)."""
    return {
        "love": (1.0, 0.0),
        "adore": unit_vec(0.82),
        "like": unit_vec(0.75),
        "enjoy": unit_vec(0.72),
        "hate": unit_vec(0.35),
    }


@pytest.fixture
def love_store(love_vectors):
    return EmbeddingStore(2, love_vectors)


@pytest.fixture
def love_encoder(love_vectors):
    return ToyEncoder(love_vectors)
