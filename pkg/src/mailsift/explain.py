"""Perturbation-based local explanations for text classifiers.

The document's spam score is probed on randomly masked copies of the
token sequence; a ridge-regularized weighted least squares surrogate is
then fit from keep/drop indicators to scores. Each distinct token
*position* is its own interpretable feature, so repeated words get
independent weights. A positive weight pushes the prediction toward spam.

Sample 0 is always the unmasked document, which anchors the surrogate at
the explained point and makes the reported class probabilities exactly
the classifier's own score for the full text.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .classifiers import ClassifierModel, Vectorizer, token_scorer
from .errors import EmptyDocument
from .textprep import PrepConfig, TokenSequence, preprocess


@dataclass(frozen=True)
class ExplainConfig:
    n_samples: int = 1000
    kernel_width: float = 25.0
    top_k: int = 10
    seed: int = 0
    ridge_lambda: float = 1.0

    def __post_init__(self):
        if self.n_samples < 1:
            raise ValueError("n_samples must be >= 1")
        if self.kernel_width <= 0:
            raise ValueError("kernel_width must be > 0")
        if self.top_k < 1:
            raise ValueError("top_k must be >= 1")
        if self.ridge_lambda <= 0:
            raise ValueError("ridge_lambda must be > 0")


@dataclass(frozen=True)
class TokenWeight:
    token: str
    position: int
    weight: float


@dataclass
class Explanation:
    class_probs: tuple[float, float]  # (p_ham, p_spam), sums to 1
    token_weights: list[TokenWeight]  # |weight| descending, ties by position
    surrogate_fit: float              # weighted R^2 in [0, 1]

    @property
    def p_ham(self) -> float:
        return self.class_probs[0]

    @property
    def p_spam(self) -> float:
        return self.class_probs[1]


def perturb_samples(
    doc: TokenSequence, n: int, seed: int
) -> list[tuple[np.ndarray, TokenSequence]]:
    """(mask, masked document) pairs; mask[i] == 1 keeps token position i.

    Sample 0 is the unmasked original; every later sample drops a uniformly
    random non-empty subset of positions (all-dropped is allowed).
    """
    if not doc:
        raise EmptyDocument("cannot perturb an empty document")
    rng = np.random.default_rng(seed)
    length = len(doc)
    out = [(np.ones(length, dtype=np.int8), list(doc))]
    for _ in range(n - 1):
        while True:
            mask = rng.integers(0, 2, size=length).astype(np.int8)
            if int(mask.sum()) < length:
                break
        masked = [tok for tok, keep in zip(doc, mask) if keep]
        out.append((mask, masked))
    return out


def _weighted_ridge(
    masks: np.ndarray, scores: np.ndarray, sample_weights: np.ndarray, lam: float
) -> tuple[np.ndarray, float, float]:
    """Fit scores ~ intercept + masks; returns (coefs, intercept, weighted R^2)."""
    n, k = masks.shape
    design = np.hstack([np.ones((n, 1)), masks.astype(np.float64)])
    wd = design * sample_weights[:, None]
    lhs = design.T @ wd
    lhs[1:, 1:] += lam * np.eye(k)  # intercept is not penalized
    rhs = design.T @ (sample_weights * scores)
    beta = np.linalg.solve(lhs, rhs)

    fitted = design @ beta
    w_sum = sample_weights.sum()
    mean = float((sample_weights * scores).sum() / w_sum)
    ss_res = float((sample_weights * (scores - fitted) ** 2).sum())
    ss_tot = float((sample_weights * (scores - mean) ** 2).sum())
    r2 = 1.0 if ss_tot < 1e-12 else 1.0 - ss_res / ss_tot
    return beta[1:], float(beta[0]), float(min(1.0, max(0.0, r2)))


def explain_tokens(
    score_fn: Callable[[TokenSequence], float],
    tokens: TokenSequence,
    cfg: ExplainConfig = ExplainConfig(),
) -> Explanation:
    """Core explanation routine over an arbitrary tokens -> spam-score map."""
    if not tokens:
        raise EmptyDocument("nothing to explain: no tokens")
    samples = perturb_samples(tokens, cfg.n_samples, cfg.seed)
    masks = np.stack([m for m, _ in samples])
    scores = np.array([float(score_fn(masked)) for _, masked in samples])

    # proximity: exponential kernel on cosine distance between the binary
    # mask and the all-ones original; for a 0/1 mask keeping k of L tokens
    # the cosine similarity reduces to sqrt(k / L)
    kept = masks.sum(axis=1).astype(np.float64)
    cos_sim = np.sqrt(kept / len(tokens))
    dist = 1.0 - cos_sim
    sample_weights = np.exp(-(dist**2) / cfg.kernel_width**2)

    coefs, _, fit = _weighted_ridge(masks, scores, sample_weights, cfg.ridge_lambda)

    ranked = sorted(range(len(tokens)), key=lambda i: (-abs(coefs[i]), i))
    top = [
        TokenWeight(token=tokens[i], position=i, weight=float(coefs[i]))
        for i in ranked[: cfg.top_k]
    ]
    p_spam = float(scores[0])
    return Explanation(
        class_probs=(1.0 - p_spam, p_spam),
        token_weights=top,
        surrogate_fit=fit,
    )


def explain(
    model: ClassifierModel,
    vectorizer: Vectorizer,
    raw_text: str,
    cfg: ExplainConfig = ExplainConfig(),
    prep: PrepConfig | None = None,
    mnb_input: str = "tfidf",
) -> Explanation:
    """Explain one raw text under a trained (model, vectorizer) pair.

    Deterministic for a fixed cfg.seed. Raises EmptyDocument when the text
    preprocesses to zero tokens and ModelVectorizerMismatch when the pair's
    dimensions disagree.
    """
    prep = prep if prep is not None else PrepConfig.default()
    tokens = preprocess(raw_text, prep)
    if not tokens:
        raise EmptyDocument("text preprocesses to zero tokens")
    scorer = token_scorer(model, vectorizer, mnb_input=mnb_input)
    return explain_tokens(lambda toks: scorer(toks).score, tokens, cfg)
