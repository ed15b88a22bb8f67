"""masksub: black-box adversarial examples for text classifiers.

Ranks words by how much deleting them drops the predicted-class confidence,
then greedily substitutes masked-LM candidates filtered by word-embedding
and sentence-level similarity until the prediction flips.
"""

from .attack import (
    AttackConfig,
    AttackResult,
    AttackStatus,
    RankedWord,
    SelectionOutcome,
    attack,
    generate_candidates,
    rank_words,
    select_candidate,
)
from .embeddings import (
    EmbeddingStore,
    SimilarityScore,
    cosine,
    filter_candidates,
    load_embeddings,
)
from .harness import (
    Backends,
    Dataset,
    Metrics,
    Report,
    compute_metrics,
    format_table,
    load_dataset,
    read_report,
    run_suite,
    write_report,
)
from .models import (
    CLASSIFICATION,
    ENTAILMENT,
    BackendError,
    Candidate,
    ClassDistribution,
    GrammarChecker,
    MaskedLM,
    NullChecker,
    QueryLedger,
    SentenceEncoder,
    TargetModel,
    TaskInput,
    ToyEncoder,
    ToyLinearClassifier,
    ToyMaskedLM,
    classify,
    fill_mask,
    grammar_errors,
    sentence_similarity,
)
from .remote import (
    HttpGrammarChecker,
    HttpMaskedLM,
    HttpSentenceEncoder,
    HttpTargetModel,
)
from .text import (
    MASK_TOKEN,
    Document,
    Token,
    context_window,
    delete_word,
    detokenize,
    mask_word,
    substitute,
    tokenize,
    window_span,
)

__version__ = "0.1.0"

__all__ = [
    "AttackConfig", "AttackResult", "AttackStatus", "RankedWord",
    "SelectionOutcome", "attack", "generate_candidates", "rank_words",
    "select_candidate",
    "EmbeddingStore", "SimilarityScore", "cosine", "filter_candidates",
    "load_embeddings",
    "Backends", "Dataset", "Metrics", "Report", "compute_metrics",
    "format_table", "load_dataset", "read_report", "run_suite", "write_report",
    "CLASSIFICATION", "ENTAILMENT", "BackendError", "Candidate",
    "ClassDistribution", "GrammarChecker", "MaskedLM", "NullChecker",
    "QueryLedger", "SentenceEncoder", "TargetModel", "TaskInput",
    "ToyEncoder", "ToyLinearClassifier", "ToyMaskedLM",
    "classify", "fill_mask", "grammar_errors", "sentence_similarity",
    "HttpGrammarChecker", "HttpMaskedLM", "HttpSentenceEncoder", "HttpTargetModel",
    "MASK_TOKEN", "Document", "Token", "context_window", "delete_word",
    "detokenize", "mask_word", "substitute", "tokenize", "window_span",
    "__version__",
]
