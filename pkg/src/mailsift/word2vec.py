"""Skip-gram word embeddings trained with negative sampling.

Plain numpy implementation: for each (center, context) pair drawn from a
shrinking window, one positive and k noise words are pushed through a
logistic objective and both embedding matrices take an SGD step. Noise
words are drawn from the unigram distribution raised to 3/4. Training is
single-threaded and fully deterministic under a fixed seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptyCorpus, NoTokensAboveMinCount
from .textprep import TokenSequence


@dataclass(frozen=True)
class W2VParams:
    dim: int = 100
    window: int = 5
    epochs: int = 5
    negative: int = 5
    min_count: int = 2
    seed: int = 42
    alpha: float = 0.025     # initial learning rate, decays linearly
    min_alpha: float = 1e-4

    def __post_init__(self):
        if self.dim < 1 or self.window < 1 or self.epochs < 1:
            raise ValueError("dim, window and epochs must all be >= 1")
        if self.negative < 1 or self.min_count < 1:
            raise ValueError("negative and min_count must be >= 1")


@dataclass
class EmbeddingTable:
    dim: int
    vocabulary: dict[str, int]  # token -> row, first-appearance order
    vectors: np.ndarray         # (V, dim) input embeddings
    params: W2VParams

    def __contains__(self, token: str) -> bool:
        return token in self.vocabulary

    def vector(self, token: str) -> np.ndarray | None:
        idx = self.vocabulary.get(token)
        return None if idx is None else self.vectors[idx]


def pair_loss_and_grads(
    center_vec: np.ndarray, out_vecs: np.ndarray, labels: np.ndarray
) -> tuple[float, np.ndarray, np.ndarray]:
    """Logistic loss and gradients for one center word against k+1 outputs.

    labels is 1 for the true context word and 0 for noise words. Returns
    (loss, d_loss/d_center, d_loss/d_out_vecs). This is the single source
    of gradient truth for the training loop, which makes it directly
    checkable against finite differences.
    """
    z = out_vecs @ center_vec
    # -log sigma(z) = logaddexp(0, -z); -log(1 - sigma(z)) = logaddexp(0, z)
    loss = float(np.sum(labels * np.logaddexp(0.0, -z) + (1.0 - labels) * np.logaddexp(0.0, z)))
    g = 1.0 / (1.0 + np.exp(-z)) - labels
    grad_center = g @ out_vecs
    grad_out = np.outer(g, center_vec)
    return loss, grad_center, grad_out


def _build_vocab(corpus_tokens: list[TokenSequence], min_count: int) -> tuple[dict[str, int], np.ndarray]:
    counts: dict[str, int] = {}
    for doc in corpus_tokens:
        for tok in doc:
            counts[tok] = counts.get(tok, 0) + 1
    vocab: dict[str, int] = {}
    freqs: list[int] = []
    for doc in corpus_tokens:
        for tok in doc:
            if tok not in vocab and counts[tok] >= min_count:
                vocab[tok] = len(freqs)
                freqs.append(counts[tok])
    return vocab, np.asarray(freqs, dtype=np.float64)


def train_word2vec(corpus_tokens: list[TokenSequence], params: W2VParams = W2VParams()) -> EmbeddingTable:
    """Train skip-gram embeddings; bit-reproducible for a fixed seed."""
    if not corpus_tokens or all(len(d) == 0 for d in corpus_tokens):
        raise EmptyCorpus("need at least one non-empty document")
    vocab, freqs = _build_vocab(corpus_tokens, params.min_count)
    if not vocab:
        raise NoTokensAboveMinCount(f"no token appears >= {params.min_count} times")

    docs = [np.array([vocab[t] for t in doc if t in vocab], dtype=np.int64) for doc in corpus_tokens]
    docs = [d for d in docs if d.size > 0]

    noise = freqs**0.75
    noise_cum = np.cumsum(noise / noise.sum())

    rng = np.random.default_rng(params.seed)
    n_rows = len(vocab)
    w_in = (rng.random((n_rows, params.dim)) - 0.5) / params.dim
    w_out = np.zeros((n_rows, params.dim))

    total_centers = max(1, sum(d.size for d in docs) * params.epochs)
    stride = params.negative + 1

    processed = 0
    for _ in range(params.epochs):
        for doc in docs:
            for pos in range(doc.size):
                frac = processed / total_centers
                lr = max(params.min_alpha, params.alpha * (1.0 - frac))
                processed += 1
                span = int(rng.integers(1, params.window + 1))
                lo = max(0, pos - span)
                hi = min(doc.size, pos + span + 1)
                center = int(doc[pos])
                ctx = [c for c in range(lo, hi) if c != pos]
                if not ctx:
                    continue
                # one SGD step per center: all its (context, negatives)
                # pairs share the center vector read at the same point
                outs = np.empty(len(ctx) * stride, dtype=np.int64)
                labels = np.zeros(len(ctx) * stride)
                for m, ctx_pos in enumerate(ctx):
                    outs[m * stride] = doc[ctx_pos]
                    labels[m * stride] = 1.0
                    # clamp: cumsum rounding can land a draw past the table
                    negs = np.searchsorted(noise_cum, rng.random(params.negative))
                    outs[m * stride + 1 : (m + 1) * stride] = np.minimum(negs, n_rows - 1)
                _, grad_center, grad_out = pair_loss_and_grads(w_in[center], w_out[outs], labels)
                # np.add.at handles repeated output indices correctly
                np.add.at(w_out, outs, -lr * grad_out)
                w_in[center] -= lr * grad_center

    return EmbeddingTable(dim=params.dim, vocabulary=vocab, vectors=w_in, params=params)


def embed_document(table: EmbeddingTable, doc: TokenSequence) -> np.ndarray:
    """Unweighted mean of in-table token vectors; zero vector if none match."""
    rows = [table.vocabulary[t] for t in doc if t in table.vocabulary]
    if not rows:
        return np.zeros(table.dim)
    return table.vectors[rows].mean(axis=0)


def embed_documents(table: EmbeddingTable, docs: list[TokenSequence]) -> np.ndarray:
    return np.vstack([embed_document(table, d) for d in docs]) if docs else np.zeros((0, table.dim))
