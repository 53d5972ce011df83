"""TF-IDF features over token sequences.

For a word w in document d within corpus D:

    tfidf(w, d) = tf(w, d) * idf(w)
    tf(w, d)    = count(w, d) / len(d)
    idf(w)      = ln(n_docs / df(w))

df(w) counts documents containing w at least once. No smoothing and no +1
shift: a token present in every document gets idf 0 and therefore weight 0,
and tokens unseen at fit time contribute nothing at transform time. Row
L2 normalization is available behind a flag but defaults off.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .errors import EmptyCorpus
from .textprep import TokenSequence


@dataclass
class SparseVector:
    """Sorted nonzero entries of one feature vector."""

    dim: int
    indices: np.ndarray  # int64, strictly increasing, all < dim
    values: np.ndarray   # float64, nonzero

    def __post_init__(self):
        self.indices = np.asarray(self.indices, dtype=np.int64)
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.indices.shape != self.values.shape:
            raise ValueError("indices and values must have equal length")
        if self.indices.size:
            if np.any(np.diff(self.indices) <= 0):
                raise ValueError("indices must be strictly increasing")
            if self.indices[0] < 0 or self.indices[-1] >= self.dim:
                raise ValueError("index out of range")
            if np.any(self.values == 0.0):
                raise ValueError("explicit zeros are not allowed")

    def entries(self) -> list[tuple[int, float]]:
        return list(zip(self.indices.tolist(), self.values.tolist()))

    def get(self, index: int) -> float:
        pos = np.searchsorted(self.indices, index)
        if pos < self.indices.size and self.indices[pos] == index:
            return float(self.values[pos])
        return 0.0

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self.dim)
        out[self.indices] = self.values
        return out


def stack_sparse(vectors: list[SparseVector]) -> sparse.csr_matrix:
    """Stack per-document SparseVectors into one CSR matrix."""
    if not vectors:
        raise ValueError("nothing to stack")
    dim = vectors[0].dim
    indptr = np.zeros(len(vectors) + 1, dtype=np.int64)
    for i, v in enumerate(vectors):
        if v.dim != dim:
            raise ValueError("inconsistent dimensions")
        indptr[i + 1] = indptr[i] + v.indices.size
    indices = np.concatenate([v.indices for v in vectors]) if indptr[-1] else np.zeros(0, np.int64)
    data = np.concatenate([v.values for v in vectors]) if indptr[-1] else np.zeros(0)
    return sparse.csr_matrix((data, indices, indptr), shape=(len(vectors), dim))


@dataclass
class TfIdfModel:
    vocabulary: dict[str, int]  # token -> column, first-appearance order
    doc_freq: np.ndarray        # int64 per column
    n_docs: int
    idf: np.ndarray             # float64 per column
    l2_normalize: bool = False

    @property
    def dim(self) -> int:
        return len(self.vocabulary)


def fit_tfidf(
    corpus_tokens: list[TokenSequence],
    max_features: int | None = None,
    l2_normalize: bool = False,
) -> TfIdfModel:
    """Build vocabulary, document frequencies and IDF weights.

    Column order is first-appearance order. With ``max_features`` set, only
    the top-N tokens by document frequency are kept (ties resolved toward
    earlier first appearance); survivors keep their relative order.
    """
    if not corpus_tokens or all(len(doc) == 0 for doc in corpus_tokens):
        raise EmptyCorpus("need at least one non-empty document")
    vocabulary: dict[str, int] = {}
    doc_freq: list[int] = []
    for doc in corpus_tokens:
        seen: set[str] = set()
        for tok in doc:
            if tok in seen:
                continue
            seen.add(tok)
            idx = vocabulary.get(tok)
            if idx is None:
                vocabulary[tok] = len(doc_freq)
                doc_freq.append(1)
            else:
                doc_freq[idx] += 1
    n_docs = len(corpus_tokens)
    df = np.asarray(doc_freq, dtype=np.int64)

    if max_features is not None and max_features < len(vocabulary):
        order = np.lexsort((np.arange(df.size), -df))  # df desc, appearance asc
        keep = np.sort(order[:max_features])           # back to appearance order
        remap = {int(old): new for new, old in enumerate(keep)}
        vocabulary = {t: remap[i] for t, i in vocabulary.items() if i in remap}
        df = df[keep]

    idf = np.log(n_docs / df)
    return TfIdfModel(
        vocabulary=vocabulary,
        doc_freq=df,
        n_docs=n_docs,
        idf=idf,
        l2_normalize=l2_normalize,
    )


def _doc_counts(model: TfIdfModel, doc: TokenSequence) -> tuple[np.ndarray, np.ndarray]:
    counts: dict[int, int] = {}
    for tok in doc:
        idx = model.vocabulary.get(tok)
        if idx is not None:
            counts[idx] = counts.get(idx, 0) + 1
    if not counts:
        return np.zeros(0, np.int64), np.zeros(0)
    indices = np.array(sorted(counts), dtype=np.int64)
    values = np.array([counts[int(i)] for i in indices], dtype=np.float64)
    return indices, values


def transform_tfidf(model: TfIdfModel, doc: TokenSequence) -> SparseVector:
    """tf * idf for one document; OOV tokens contribute nothing.

    The tf denominator is the full preprocessed document length (OOV tokens
    included); an empty document maps to the zero vector.
    """
    indices, counts = _doc_counts(model, doc)
    if indices.size == 0:
        return SparseVector(dim=model.dim, indices=indices, values=counts)
    values = (counts / len(doc)) * model.idf[indices]
    nz = values != 0.0
    indices, values = indices[nz], values[nz]
    if model.l2_normalize and values.size:
        values = values / np.linalg.norm(values)
    return SparseVector(dim=model.dim, indices=indices, values=values)


def transform_counts(model: TfIdfModel, doc: TokenSequence) -> SparseVector:
    """Raw in-vocabulary token counts (the natural Naive Bayes input)."""
    indices, counts = _doc_counts(model, doc)
    return SparseVector(dim=model.dim, indices=indices, values=counts)


def transform_tfidf_many(model: TfIdfModel, docs: list[TokenSequence]) -> sparse.csr_matrix:
    return stack_sparse([transform_tfidf(model, d) for d in docs]) if docs else _empty(model.dim)


def transform_counts_many(model: TfIdfModel, docs: list[TokenSequence]) -> sparse.csr_matrix:
    return stack_sparse([transform_counts(model, d) for d in docs]) if docs else _empty(model.dim)


def _empty(dim: int) -> sparse.csr_matrix:
    return sparse.csr_matrix((0, dim))
