"""The three classifiers and their shared prediction surface.

All models emit a Prediction with a spam-probability estimate in [0, 1]
and the raw model score it was derived from:

* SVM: margin w.x + b, score = sigmoid(margin). The sigmoid is an
  uncalibrated heuristic map from margin to probability.
* MNB: margin = posterior log-odds, score = normalized two-class posterior
  (equivalently sigmoid of the log-odds).
* RF: score = fraction of trees voting spam (the majority vote).

The decision threshold is 0.5 with ties classified as spam.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np
from scipy import sparse

from ..errors import DimensionMismatch, ModelVectorizerMismatch
from ..textprep import TokenSequence
from ..vectorize import SparseVector, TfIdfModel, transform_counts, transform_tfidf
from ..word2vec import EmbeddingTable, embed_document
from .forest import RfHyperparams, RfModel, Tree, train_rf
from .mnb import MnbModel, mnb_log_odds, train_mnb
from .svm import SvmHyperparams, SvmModel, train_svm

__all__ = [
    "ClassifierModel",
    "MnbModel",
    "Prediction",
    "RfHyperparams",
    "RfModel",
    "SvmHyperparams",
    "SvmModel",
    "Tree",
    "predict",
    "token_scorer",
    "train_mnb",
    "train_rf",
    "train_svm",
]

ClassifierModel = Union[SvmModel, MnbModel, RfModel]


@dataclass(frozen=True)
class Prediction:
    label: int     # 1 = spam, 0 = ham
    score: float   # spam-probability estimate in [0, 1]
    margin: float  # raw model score

    def __post_init__(self):
        if not 0.0 <= self.score <= 1.0:
            raise ValueError(f"score must be in [0, 1], got {self.score}")


def _label(score: float) -> int:
    return int(score >= 0.5)


def _sigmoid(z: float) -> float:
    if z >= 0:
        return 1.0 / (1.0 + math.exp(-z))
    e = math.exp(z)
    return e / (1.0 + e)


def _as_sparse_parts(x, dim: int) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(x, SparseVector):
        if x.dim != dim:
            raise DimensionMismatch(f"vector dim {x.dim} vs model dim {dim}")
        return x.indices, x.values
    if sparse.issparse(x):
        row = x.tocsr()
        if row.shape != (1, dim):
            raise DimensionMismatch(f"vector shape {row.shape} vs model dim {dim}")
        return row.indices.astype(np.int64), row.data.astype(np.float64)
    arr = np.asarray(x, dtype=np.float64).ravel()
    if arr.shape[0] != dim:
        raise DimensionMismatch(f"vector dim {arr.shape[0]} vs model dim {dim}")
    idx = np.nonzero(arr)[0]
    return idx, arr[idx]


def predict(model: ClassifierModel, x) -> Prediction:
    """Classify one feature vector (SparseVector, 1-D array, or sparse row)."""
    if isinstance(model, SvmModel):
        idx, vals = _as_sparse_parts(x, model.dim)
        margin = float(model.weights[idx] @ vals + model.bias)
        score = _sigmoid(margin)
        return Prediction(label=_label(score), score=score, margin=margin)
    if isinstance(model, MnbModel):
        idx, vals = _as_sparse_parts(x, model.dim)
        log_odds = mnb_log_odds(model, idx, vals)
        score = _sigmoid(log_odds)
        return Prediction(label=_label(score), score=score, margin=log_odds)
    if isinstance(model, RfModel):
        idx, vals = _as_sparse_parts(x, model.dim)
        dense = np.zeros(model.dim)
        dense[idx] = vals
        score = model.spam_fraction(dense)
        return Prediction(label=_label(score), score=score, margin=score)
    raise TypeError(f"unknown model type {type(model).__name__}")


Vectorizer = Union[TfIdfModel, EmbeddingTable]


def token_scorer(
    model: ClassifierModel,
    vectorizer: Vectorizer,
    mnb_input: str = "tfidf",
) -> Callable[[TokenSequence], Prediction]:
    """Build a tokens -> Prediction closure for a (model, vectorizer) pair.

    Raises ModelVectorizerMismatch when the two were not trained against
    each other (feature dimensions disagree). For MNB, ``mnb_input``
    selects raw in-vocabulary counts or clipped TF-IDF values, and must
    match how the model was trained.
    """
    if vectorizer.dim != model.dim:
        raise ModelVectorizerMismatch(
            f"vectorizer dim {vectorizer.dim} vs classifier dim {model.dim}"
        )
    if isinstance(vectorizer, TfIdfModel):
        if isinstance(model, MnbModel) and mnb_input == "counts":
            featurize = lambda toks: transform_counts(vectorizer, toks)
        else:
            featurize = lambda toks: transform_tfidf(vectorizer, toks)
    else:
        if isinstance(model, MnbModel):
            featurize = lambda toks: np.clip(embed_document(vectorizer, toks), 0.0, None)
        else:
            featurize = lambda toks: embed_document(vectorizer, toks)
    return lambda toks: predict(model, featurize(toks))
