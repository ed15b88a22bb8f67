import math
import random

import pytest

from masksub import (
    BackendError,
    Candidate,
    ClassDistribution,
    NullChecker,
    QueryLedger,
    TaskInput,
    ToyEncoder,
    ToyMaskedLM,
    classify,
    fill_mask,
    grammar_errors,
    mask_word,
    sentence_similarity,
    tokenize,
)

from helpers import CountingEncoder, CountingMaskedLM, CountingTarget


class TestClassDistribution:
    def test_validates_sum(self):
        with pytest.raises(ValueError):
            ClassDistribution((0.5, 0.4))

    def test_validates_range(self):
        with pytest.raises(ValueError):
            ClassDistribution((1.5, -0.5))

    def test_predicted_lowest_index_tie(self):
        assert ClassDistribution((0.5, 0.5)).predicted == 0
        assert ClassDistribution((0.25, 0.5, 0.25)).predicted == 1

    def test_sum_to_one_on_randomized_inputs(self, toy_classifier):
        rng = random.Random(7)
        vocab = ["love", "great", "hate", "bad", "movie", "plot", "the"]
        for _ in range(1000):
            words = rng.choices(vocab, k=rng.randint(0, 10))
            ti = TaskInput.for_classification(tokenize(" ".join(words)))
            dist = classify(toy_classifier, ti)
            assert abs(sum(dist.probs) - 1.0) <= 1e-6
            assert all(0.0 <= p <= 1.0 for p in dist.probs)


class TestCandidate:
    def test_rejects_uppercase_empty_whitespace(self):
        with pytest.raises(ValueError):
            Candidate("Adore", 0.5)
        with pytest.raises(ValueError):
            Candidate("", 0.5)
        with pytest.raises(ValueError):
            Candidate("two words", 0.5)
        with pytest.raises(ValueError):
            Candidate("ok", 1.5)


class TestTaskInput:
    def test_classification_shape(self):
        doc = tokenize("fine")
        ti = TaskInput.for_classification(doc)
        assert ti.document is doc
        with pytest.raises(ValueError):
            TaskInput(task="classification", premise="x", hypothesis=doc)

    def test_entailment_shape(self):
        doc = tokenize("a cat sleeps")
        ti = TaskInput.for_entailment("an animal rests", doc)
        assert ti.document is doc
        swapped = ti.with_document(tokenize("a dog sleeps"))
        assert swapped.premise == "an animal rests"
        with pytest.raises(ValueError):
            TaskInput(task="entailment", text=doc)

    def test_unknown_task(self):
        with pytest.raises(ValueError):
            TaskInput(task="regression", text=tokenize("x"))


class TestClassify:
    def test_softmax_example(self, toy_classifier):
        ti = TaskInput.for_classification(tokenize("love great movie"))
        dist = classify(toy_classifier, ti)
        assert dist.probs[0] == pytest.approx(0.9707, abs=1e-4)
        assert dist.probs[1] == pytest.approx(0.0293, abs=1e-4)
        assert dist.predicted == 0

    def test_tie_breaks_to_class_zero(self, toy_classifier):
        ti = TaskInput.for_classification(tokenize("hate love"))
        dist = classify(toy_classifier, ti)
        assert dist.probs == (0.5, 0.5)
        assert dist.predicted == 0

    def test_empty_document_is_uniform(self, toy_classifier):
        dist = classify(toy_classifier, TaskInput.for_classification(tokenize("")))
        assert dist.probs == (0.5, 0.5)

    def test_entailment_sums_premise_and_hypothesis(self, toy_classifier):
        ti = TaskInput.for_entailment("love", tokenize("great"))
        dist = classify(toy_classifier, ti)
        expected = math.exp(3.5) / (math.exp(3.5) + 1.0)
        assert dist.probs[0] == pytest.approx(expected, abs=1e-12)

    def test_increments_ledger(self, toy_classifier):
        ledger = QueryLedger()
        ti = TaskInput.for_classification(tokenize("love"))
        classify(toy_classifier, ti, ledger)
        classify(toy_classifier, ti, ledger)
        assert ledger.target_queries == 2
        assert ledger.mlm_queries == 0

    def test_bad_backend_distribution(self):
        class Broken:
            def predict_proba(self, ti):
                return [0.9, 0.9]

        with pytest.raises(BackendError):
            classify(Broken(), TaskInput.for_classification(tokenize("x")))


class TestFillMask:
    def _docs(self, sentence="i love this movie", i=1):
        doc = tokenize(sentence)
        return doc, mask_word(doc, i), i

    def test_synonym_table_lookup(self, love_mlm):
        doc, masked, i = self._docs()
        cands = fill_mask(love_mlm, doc, masked, i, 50)
        assert [(c.word, c.mlm_prob) for c in cands] == [
            ("adore", 0.6), ("like", 0.3), ("enjoy", 0.1),
        ]

    def test_k_truncates(self, love_mlm):
        doc, masked, i = self._docs()
        cands = fill_mask(love_mlm, doc, masked, i, 1)
        assert [(c.word, c.mlm_prob) for c in cands] == [("adore", 0.6)]

    def test_unknown_word_yields_empty(self, love_mlm):
        doc = tokenize("i respect this movie")
        cands = fill_mask(love_mlm, doc, mask_word(doc, 1), 1, 50)
        assert cands == []

    def test_excludes_noise_tokens(self):
        mlm = ToyMaskedLM({
            "love": [
                ("love", 0.5),        # the original word
                ("the", 0.3),         # stopword
                ("##ing", 0.25),      # subword fragment
                ("'", 0.2),           # punctuation-only
                ("[MASK]", 0.15),     # mask string
                ("ADORE", 0.1),       # normalized to lowercase
                ("adore", 0.05),      # duplicate after normalization
            ]
        })
        doc, masked, i = self._docs()
        cands = fill_mask(mlm, doc, masked, i, 50)
        assert [(c.word, c.mlm_prob) for c in cands] == [("adore", 0.1)]

    def test_sorted_with_lexicographic_ties(self):
        mlm = ToyMaskedLM({"love": [("zeal", 0.3), ("ardor", 0.3), ("like", 0.6)]})
        doc, masked, i = self._docs()
        cands = fill_mask(mlm, doc, masked, i, 50)
        assert [c.word for c in cands] == ["like", "ardor", "zeal"]

    def test_requires_mask_sentinel(self, love_mlm):
        doc = tokenize("i love this movie")
        with pytest.raises(ValueError):
            fill_mask(love_mlm, doc, doc, 1, 50)

    def test_bad_probability_from_backend(self):
        mlm = ToyMaskedLM({"love": [("adore", 0.6)]})
        mlm.table["love"] = [("adore", 1.7)]
        doc, masked, i = self._docs()
        with pytest.raises(BackendError):
            fill_mask(mlm, doc, masked, i, 50)

    def test_increments_ledger(self, love_mlm):
        ledger = QueryLedger()
        doc, masked, i = self._docs()
        fill_mask(love_mlm, doc, masked, i, 50, ledger)
        assert ledger.mlm_queries == 1


class TestSentenceSimilarity:
    def test_identical_strings(self, love_encoder):
        assert sentence_similarity(love_encoder, "love", "love") >= 0.999

    def test_single_word_cosine(self, love_encoder):
        score = sentence_similarity(love_encoder, "love", "adore")
        assert score == pytest.approx(0.82, abs=1e-9)

    def test_orthogonal_clamps_to_zero(self):
        enc = ToyEncoder({"up": (1.0, 0.0), "side": (0.0, 1.0), "down": (-1.0, 0.0)})
        assert sentence_similarity(enc, "up", "side") == 0.0
        # negative cosine clamps too
        assert sentence_similarity(enc, "up", "down") == 0.0

    def test_unknown_words_fall_back_to_exact_match(self, love_encoder):
        assert sentence_similarity(love_encoder, "zzz qqq", "zzz qqq") == 1.0
        assert sentence_similarity(love_encoder, "zzz", "qqq") == 0.0

    def test_empty_inputs_rejected(self, love_encoder):
        with pytest.raises(ValueError):
            sentence_similarity(love_encoder, "", "x")

    def test_increments_ledger(self, love_encoder):
        ledger = QueryLedger()
        sentence_similarity(love_encoder, "love", "adore", ledger)
        assert ledger.encoder_queries == 1

    def test_mean_pooling_multiword(self):
        enc = ToyEncoder({"a": (1.0, 0.0), "b": (0.0, 1.0)})
        # mean of (a, b) vs a: cos = (0.5)/(sqrt(0.5)*1)
        expected = 0.5 / math.sqrt(0.5)
        assert enc.similarity("a b", "a") == pytest.approx(expected, abs=1e-12)


class TestGrammar:
    def test_null_checker(self):
        assert grammar_errors(NullChecker(), "he have a apples") == 0
        assert grammar_errors(NullChecker(), "") == 0

    def test_negative_count_rejected(self):
        class Bad:
            def error_count(self, text):
                return -1

        with pytest.raises(BackendError):
            grammar_errors(Bad(), "x")


class TestQueryAccounting:
    def test_ledger_matches_counting_doubles(self, toy_classifier, love_mlm, love_encoder):
        target = CountingTarget(toy_classifier)
        mlm = CountingMaskedLM(love_mlm)
        encoder = CountingEncoder(love_encoder)
        ledger = QueryLedger()
        doc = tokenize("i love this movie")
        ti = TaskInput.for_classification(doc)
        for _ in range(3):
            classify(target, ti, ledger)
        fill_mask(mlm, doc, mask_word(doc, 1), 1, 50, ledger)
        for _ in range(2):
            sentence_similarity(encoder, "love", "adore", ledger)
        assert ledger.as_dict() == {
            "target_queries": target.calls,
            "mlm_queries": mlm.calls,
            "encoder_queries": encoder.calls,
        }
        assert (target.calls, mlm.calls, encoder.calls) == (3, 1, 2)
