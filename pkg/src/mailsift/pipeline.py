"""End-to-end training and a bundled (prep, vectorizer, classifier) unit.

The vectorizer is always fit on the training split only and the test split
is transformed with it, so reported metrics carry no fit-time leakage.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .classifiers import (
    ClassifierModel,
    Prediction,
    RfHyperparams,
    SvmHyperparams,
    token_scorer,
    train_mnb,
    train_rf,
    train_svm,
)
from .corpus import Corpus
from .errors import EmptyDocument
from .evaluation import Metrics, ReportRow, confusion, metrics, split
from .explain import Explanation, ExplainConfig, explain_tokens
from .textprep import PrepConfig, TokenSequence, preprocess
from .vectorize import (
    TfIdfModel,
    fit_tfidf,
    transform_counts_many,
    transform_tfidf_many,
)
from .word2vec import EmbeddingTable, W2VParams, embed_documents, train_word2vec

VECTORIZERS = ("tfidf", "word2vec")
MODELS = ("svm", "mnb", "rf")


@dataclass(frozen=True)
class TrainOptions:
    vectorizer: str = "tfidf"
    model: str = "svm"
    test_ratio: float = 0.2
    split_seed: int = 42
    svm_c: float = 1.0
    svm_epochs: int = 20
    mnb_alpha: float = 1.0
    mnb_input: str = "tfidf"           # "tfidf" | "counts"
    rf_trees: int = 100
    rf_max_features: int | None = 20000  # TF-IDF vocabulary cap, RF runs only
    rf_jobs: int = 1
    l2_normalize: bool = False
    w2v: W2VParams = field(default_factory=W2VParams)

    def __post_init__(self):
        if self.vectorizer not in VECTORIZERS:
            raise ValueError(f"vectorizer must be one of {VECTORIZERS}")
        if self.model not in MODELS:
            raise ValueError(f"model must be one of {MODELS}")
        if self.mnb_input not in ("tfidf", "counts"):
            raise ValueError("mnb_input must be 'tfidf' or 'counts'")


@dataclass
class TrainedPipeline:
    prep: PrepConfig
    vectorizer_kind: str
    vectorizer: Union[TfIdfModel, EmbeddingTable]
    classifier_kind: str
    classifier: ClassifierModel
    mnb_input: str = "tfidf"
    metadata: dict = field(default_factory=dict)

    def predict_tokens(self, tokens: TokenSequence) -> Prediction:
        scorer = token_scorer(self.classifier, self.vectorizer, mnb_input=self.mnb_input)
        return scorer(tokens)

    def predict_text(self, raw_text: str) -> Prediction:
        tokens = preprocess(raw_text, self.prep)
        if not tokens:
            raise EmptyDocument("text preprocesses to zero tokens")
        return self.predict_tokens(tokens)

    def explain_text(self, raw_text: str, cfg: ExplainConfig = ExplainConfig()) -> Explanation:
        tokens = preprocess(raw_text, self.prep)
        if not tokens:
            raise EmptyDocument("text preprocesses to zero tokens")
        scorer = token_scorer(self.classifier, self.vectorizer, mnb_input=self.mnb_input)
        return explain_tokens(lambda toks: scorer(toks).score, tokens, cfg)


def _featurize(pipeline_kind: str, vectorizer, docs, model: str, mnb_input: str):
    if pipeline_kind == "tfidf":
        if model == "mnb" and mnb_input == "counts":
            return transform_counts_many(vectorizer, docs)
        return transform_tfidf_many(vectorizer, docs)
    dense = embed_documents(vectorizer, docs)
    if model == "mnb":
        dense = np.clip(dense, 0.0, None)
    return dense


def _tfidf_cap(opts: TrainOptions) -> int | None:
    if opts.vectorizer == "tfidf" and opts.model == "rf":
        return opts.rf_max_features
    return None


def _fit_vectorizer(opts: TrainOptions, train_docs: list[TokenSequence]):
    if opts.vectorizer == "tfidf":
        return fit_tfidf(train_docs, max_features=_tfidf_cap(opts), l2_normalize=opts.l2_normalize)
    return train_word2vec(train_docs, opts.w2v)


def _train_classifier(opts: TrainOptions, X, y) -> ClassifierModel:
    if opts.model == "svm":
        return train_svm(X, y, SvmHyperparams(c=opts.svm_c, epochs=opts.svm_epochs))
    if opts.model == "mnb":
        return train_mnb(X, y, alpha=opts.mnb_alpha)
    return train_rf(X, y, RfHyperparams(n_trees=opts.rf_trees, n_jobs=opts.rf_jobs))


def train_and_evaluate(
    corpus: Corpus,
    opts: TrainOptions = TrainOptions(),
    prep: PrepConfig | None = None,
) -> tuple[TrainedPipeline, Metrics]:
    """Split, fit, train and score one (vectorizer, model) combination."""
    prep = prep if prep is not None else PrepConfig.default()
    docs = [preprocess(r.text_combined, prep) for r in corpus.records]
    labels = np.asarray(corpus.labels(), dtype=np.int64)
    train_idx, test_idx = split(corpus, opts.test_ratio, opts.split_seed)

    train_docs = [docs[i] for i in train_idx]
    test_docs = [docs[i] for i in test_idx]
    vectorizer = _fit_vectorizer(opts, train_docs)
    X_train = _featurize(opts.vectorizer, vectorizer, train_docs, opts.model, opts.mnb_input)
    X_test = _featurize(opts.vectorizer, vectorizer, test_docs, opts.model, opts.mnb_input)

    classifier = _train_classifier(opts, X_train, labels[train_idx])
    predicted = predict_matrix(classifier, X_test)
    m = metrics(confusion(predicted, labels[test_idx]))

    pipeline = TrainedPipeline(
        prep=prep,
        vectorizer_kind=opts.vectorizer,
        vectorizer=vectorizer,
        classifier_kind=opts.model,
        classifier=classifier,
        mnb_input=opts.mnb_input if opts.model == "mnb" else "tfidf",
        metadata={
            "corpus_fingerprint": corpus.fingerprint(),
            "n_records": len(corpus),
            "class_counts": list(corpus.class_counts),
            "split_seed": opts.split_seed,
            "test_ratio": opts.test_ratio,
            "tfidf_max_features": _tfidf_cap(opts),
            "train_size": len(train_idx),
            "test_size": len(test_idx),
            "metrics": {
                "accuracy": m.accuracy,
                "precision": m.precision,
                "recall": m.recall,
                "f1": m.f1,
            },
            "created_at": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
        },
    )
    return pipeline, m


def predict_matrix(classifier: ClassifierModel, X) -> np.ndarray:
    """Hard labels for every row of a feature matrix."""
    from .classifiers import predict  # local import keeps module load light

    if hasattr(X, "tocsr"):
        X = X.tocsr()
        return np.array([predict(classifier, X[i]).label for i in range(X.shape[0])])
    X = np.asarray(X)
    return np.array([predict(classifier, X[i]).label for i in range(X.shape[0])])


def dataset_tag(corpus: Corpus) -> str:
    """Class-count label used in report rows, e.g. '42891[1] 39595[0]'."""
    return f"{corpus.n_spam}[1] {corpus.n_ham}[0]"


def report_row(corpus: Corpus, opts: TrainOptions, m: Metrics) -> ReportRow:
    return ReportRow(
        dataset=dataset_tag(corpus),
        vectorizer=opts.vectorizer,
        model=opts.model,
        metrics=m,
    )


def reevaluate(
    pipeline: TrainedPipeline,
    corpus: Corpus,
    test_ratio: float | None = None,
    split_seed: int | None = None,
    refit_vectorizer: bool = True,
    whole_corpus: bool = False,
) -> Metrics:
    """Re-run the evaluation protocol for an existing pipeline.

    By default this reproduces the training protocol exactly: the corpus is
    split with the stored seed/ratio and the vectorizer is refit on the
    train side with the stored hyperparameters, which reproduces the
    training snapshot bit-for-bit on the original corpus and raises
    DimensionMismatch when the artifact does not belong to this corpus.
    With refit_vectorizer=False the stored vectorizer is applied as-is,
    which is the right mode for scoring on genuinely new data;
    whole_corpus=True skips splitting entirely and scores every record
    with the stored vectorizer.
    """
    docs = [preprocess(r.text_combined, pipeline.prep) for r in corpus.records]
    labels = np.asarray(corpus.labels(), dtype=np.int64)

    if whole_corpus:
        vectorizer = pipeline.vectorizer
        test_docs = docs
        test_labels = labels
    else:
        ratio = test_ratio if test_ratio is not None else pipeline.metadata.get("test_ratio", 0.2)
        seed = split_seed if split_seed is not None else pipeline.metadata.get("split_seed", 42)
        train_idx, test_idx = split(corpus, ratio, seed)
        if refit_vectorizer:
            vectorizer = _refit_vectorizer(pipeline, [docs[i] for i in train_idx])
        else:
            vectorizer = pipeline.vectorizer
        test_docs = [docs[i] for i in test_idx]
        test_labels = labels[test_idx]

    X_test = _featurize(
        pipeline.vectorizer_kind,
        vectorizer,
        test_docs,
        pipeline.classifier_kind,
        pipeline.mnb_input,
    )
    predicted = predict_matrix(pipeline.classifier, X_test)
    return metrics(confusion(predicted, test_labels))


def _refit_vectorizer(pipeline: TrainedPipeline, train_docs: list[TokenSequence]):
    if pipeline.vectorizer_kind == "tfidf":
        stored: TfIdfModel = pipeline.vectorizer
        cap = pipeline.metadata.get("tfidf_max_features")
        return fit_tfidf(train_docs, max_features=cap, l2_normalize=stored.l2_normalize)
    stored_table: EmbeddingTable = pipeline.vectorizer
    return train_word2vec(train_docs, stored_table.params)
