"""Multinomial Naive Bayes with additive (Laplace) smoothing.

log P(c)    = ln(n_c / n)
log P(w|c)  = ln((count(w, c) + alpha) / (total(c) + alpha * V))

Feature values must be non-negative; they are treated as (possibly
fractional) occurrence counts.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DimensionMismatch, NegativeFeature, SingleClassData
from .svm import as_feature_matrix


@dataclass
class MnbModel:
    log_prior: np.ndarray       # (2,), classes [ham, spam]
    log_likelihood: np.ndarray  # (2, n_features)
    alpha: float
    n_features: int

    @property
    def dim(self) -> int:
        return self.n_features


def train_mnb(X, y, alpha: float = 1.0) -> MnbModel:
    if alpha <= 0:
        raise ValueError("alpha must be > 0")
    Xm = as_feature_matrix(X)
    y = np.asarray(y, dtype=np.int64)
    if Xm.shape[0] != y.shape[0]:
        raise DimensionMismatch(f"{Xm.shape[0]} rows vs {y.shape[0]} labels")
    if Xm.nnz and Xm.data.min() < 0:
        raise NegativeFeature("feature counts must be >= 0")
    if len(np.unique(y)) < 2:
        raise SingleClassData("training data contains a single class")

    n, n_features = Xm.shape
    counts = np.vstack(
        [np.asarray(Xm[y == c].sum(axis=0)).ravel() for c in (0, 1)]
    )
    totals = counts.sum(axis=1, keepdims=True)
    log_likelihood = np.log(counts + alpha) - np.log(totals + alpha * n_features)
    log_prior = np.log(np.array([np.sum(y == 0), np.sum(y == 1)]) / n)
    return MnbModel(
        log_prior=log_prior,
        log_likelihood=log_likelihood,
        alpha=alpha,
        n_features=n_features,
    )


def mnb_log_odds(model: MnbModel, indices: np.ndarray, values: np.ndarray) -> float:
    """Joint log-likelihood difference spam minus ham for one document."""
    if np.any(values < 0):
        raise NegativeFeature("feature counts must be >= 0")
    jll = model.log_prior + model.log_likelihood[:, indices] @ values
    return float(jll[1] - jll[0])
