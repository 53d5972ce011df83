"""Linear SVM trained by Pegasos-style stochastic subgradient descent.

Minimizes  lambda/2 ||w||^2 + (1/n) sum max(0, 1 - y(w.x + b))  with
lambda = 1/(C*n), labels mapped {0,1} -> {-1,+1}, step size 1/(lambda*t)
and one example per step. The bias is not regularized and takes hinge
subgradient steps of size 1/t: the 1/(lambda*t) weight step would open at
+-C*n, which strands the intercept whenever the objective is flat in b.
The returned weights are the average of all iterates, which is also the
iterate the per-epoch objective history monitors.

Two standard tricks keep per-step cost proportional to the example's
nonzeros: the weight vector is stored as scale*v, and the running iterate
sum C*v + u is maintained through a sparse correction vector u.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import sparse

from ..errors import DimensionMismatch, SingleClassData
from ..vectorize import SparseVector, stack_sparse


@dataclass(frozen=True)
class SvmHyperparams:
    c: float = 1.0
    epochs: int = 20
    seed: int = 42

    def __post_init__(self):
        if self.c <= 0 or self.epochs < 1:
            raise ValueError("need C > 0 and epochs >= 1")


@dataclass
class SvmModel:
    weights: np.ndarray
    bias: float
    hyperparams: SvmHyperparams
    objective_history: list[float] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return int(self.weights.shape[0])


def as_feature_matrix(X) -> sparse.csr_matrix:
    """Accept list[SparseVector], dense 2-D arrays, or scipy sparse."""
    if isinstance(X, list) and X and isinstance(X[0], SparseVector):
        return stack_sparse(X).astype(np.float64)
    if sparse.issparse(X):
        return X.tocsr().astype(np.float64)
    arr = np.asarray(X, dtype=np.float64)
    if arr.ndim != 2:
        raise DimensionMismatch(f"expected 2-D features, got shape {arr.shape}")
    return sparse.csr_matrix(arr)


def _objective(X: sparse.csr_matrix, ys: np.ndarray, lam: float, w: np.ndarray, b: float) -> float:
    margins = ys * (X @ w + b)
    hinge = np.maximum(0.0, 1.0 - margins).mean()
    return float(0.5 * lam * (w @ w) + hinge)


def train_svm(X, y, hp: SvmHyperparams = SvmHyperparams()) -> SvmModel:
    Xm = as_feature_matrix(X)
    y = np.asarray(y, dtype=np.int64)
    if Xm.shape[0] != y.shape[0]:
        raise DimensionMismatch(f"{Xm.shape[0]} rows vs {y.shape[0]} labels")
    if Xm.shape[0] < 2:
        raise ValueError("need at least two examples")
    if len(np.unique(y)) < 2:
        raise SingleClassData("training data contains a single class")

    n, dim = Xm.shape
    ys = np.where(y == 1, 1.0, -1.0)
    lam = 1.0 / (hp.c * n)
    Xm.sum_duplicates()  # v[idx] += delta below assumes unique row indices
    indptr, indices, data = Xm.indptr, Xm.indices, Xm.data

    v = np.zeros(dim)      # w = scale * v
    scale = 1.0
    b = 0.0
    u = np.zeros(dim)      # sum of iterates = iter_scale * v + u
    iter_scale = 0.0
    b_sum = 0.0
    steps = 0

    rng = np.random.default_rng(hp.seed)
    history: list[float] = []
    for _ in range(hp.epochs):
        order = rng.permutation(n)
        for i in order:
            steps += 1
            # accumulate w_t before producing w_{t+1}
            iter_scale += scale
            b_sum += b

            sl = slice(indptr[i], indptr[i + 1])
            idx = indices[sl]
            vals = data[sl]
            margin = ys[i] * (scale * float(v[idx] @ vals) + b)

            eta = 1.0 / (lam * steps)
            if steps == 1:
                # decay 1 - eta*lam is exactly zero here; reset v instead of
                # scaling so later additions keep full precision
                u += iter_scale * v
                v[:] = 0.0
                scale = 1.0
            else:
                scale *= 1.0 - eta * lam  # = 1 - 1/t
            if margin < 1.0:
                delta = (eta * ys[i] / scale) * vals
                v[idx] += delta
                u[idx] -= iter_scale * delta
                b += ys[i] / steps
        w_avg = (iter_scale * v + u) / steps
        history.append(_objective(Xm, ys, lam, w_avg, b_sum / steps))

    w_avg = (iter_scale * v + u) / steps
    return SvmModel(
        weights=w_avg,
        bias=b_sum / steps,
        hyperparams=hp,
        objective_history=history,
    )
