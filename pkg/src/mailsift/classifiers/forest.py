"""Random forest of Gini-split decision trees.

Each of the n_trees trees is grown on a bootstrap sample (with replacement,
same size as the training set) until its leaves are pure or unsplittable,
examining sqrt(dim) candidate features per node. Constant features do not
count against that budget: the scan continues through the shuffled feature
order until enough splittable candidates have been seen, so a node only
becomes an impure leaf when no feature can separate it at all.

Bootstrap duplicates are carried as per-row multiplicities, and on sparse
input the split search touches only a column's stored nonzeros plus one
aggregated zero group, which keeps node costs proportional to the column's
support rather than to the node size.

Every tree owns an independent RNG seeded with seed + tree index, so the
built forest is identical no matter how many worker threads are used.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy import sparse

from ..errors import DimensionMismatch
from .svm import as_feature_matrix

_LEAF = -1


@dataclass(frozen=True)
class RfHyperparams:
    n_trees: int = 100
    seed: int = 42
    n_jobs: int = 1

    def __post_init__(self):
        if self.n_trees < 1 or self.n_jobs < 1:
            raise ValueError("n_trees and n_jobs must be >= 1")


@dataclass
class Tree:
    """Array-encoded binary tree; feature == -1 marks a leaf."""

    feature: np.ndarray    # int64
    threshold: np.ndarray  # float64
    left: np.ndarray       # int64 child ids
    right: np.ndarray      # int64
    votes: np.ndarray      # (n_nodes, 2) int64 class counts

    @property
    def n_nodes(self) -> int:
        return int(self.feature.shape[0])

    def leaf_class(self, node: int) -> int:
        # tie goes to spam
        return int(self.votes[node, 1] >= self.votes[node, 0])

    def predict_one(self, x: np.ndarray) -> int:
        node = 0
        while self.feature[node] != _LEAF:
            if x[self.feature[node]] <= self.threshold[node]:
                node = int(self.left[node])
            else:
                node = int(self.right[node])
        return self.leaf_class(node)


@dataclass
class RfModel:
    trees: list[Tree]
    dim: int
    hyperparams: RfHyperparams

    def spam_fraction(self, x: np.ndarray) -> float:
        votes = sum(t.predict_one(x) for t in self.trees)
        return votes / len(self.trees)


class _Features:
    """Per-row feature values for either a dense array or a CSC matrix."""

    def __init__(self, X):
        if sparse.issparse(X):
            csc = X.tocsc()
            csc.sort_indices()
            self._csc = csc
            self._dense = None
            self.shape = X.shape
        else:
            self._dense = np.asarray(X, dtype=np.float64)
            if self._dense.ndim != 2:
                raise DimensionMismatch(f"expected 2-D features, got {self._dense.shape}")
            self._csc = None
            self.shape = self._dense.shape

    def values(self, j: int, rows: np.ndarray) -> np.ndarray:
        """Feature j for the given (sorted, unique) rows; zeros filled in."""
        if self._dense is not None:
            return self._dense[rows, j]
        sl = slice(self._csc.indptr[j], self._csc.indptr[j + 1])
        col_rows = self._csc.indices[sl]
        col_data = self._csc.data[sl]
        out = np.zeros(rows.size)
        if col_rows.size:
            pos = np.searchsorted(col_rows, rows)
            np.minimum(pos, col_rows.size - 1, out=pos)
            found = col_rows[pos] == rows
            out[found] = col_data[pos[found]]
        return out

    def groups(
        self,
        j: int,
        rows: np.ndarray,
        cnts: np.ndarray,
        spams: np.ndarray,
        total: int,
        total_spam: int,
    ):
        """Weighted value groups of feature j over the node, for the split
        search. On sparse input only the column's nonzeros are touched; all
        zero-valued rows collapse into one aggregated group. Returns None
        when the feature is constant zero on the node."""
        if self._dense is not None:
            return self._dense[rows, j], cnts, spams
        sl = slice(self._csc.indptr[j], self._csc.indptr[j + 1])
        col_rows = self._csc.indices[sl]
        if col_rows.size == 0:
            return None
        col_data = self._csc.data[sl]
        pos = np.searchsorted(col_rows, rows)
        np.minimum(pos, col_rows.size - 1, out=pos)
        found = col_rows[pos] == rows
        if not found.any():
            return None
        sel_vals = col_data[pos[found]]
        sel_cnts = cnts[found]
        sel_spams = spams[found]
        n_zero = total - int(sel_cnts.sum())
        if n_zero == 0:
            return sel_vals, sel_cnts, sel_spams
        return (
            np.concatenate(([0.0], sel_vals)),
            np.concatenate(([n_zero], sel_cnts)),
            np.concatenate(([total_spam - int(sel_spams.sum())], sel_spams)),
        )


def _best_split(vals: np.ndarray, cnts: np.ndarray, spams: np.ndarray) -> tuple[float, float] | None:
    """Best (cost, threshold) over weighted value groups, or None if constant.

    vals holds one entry per distinct node row (plus an aggregated zero
    group on sparse input); cnts and spams carry bootstrap multiplicities.
    """
    order = np.argsort(vals)
    sv = vals[order]
    if sv[0] == sv[-1]:
        return None
    sc = cnts[order]
    ss = spams[order]
    n = sc.sum()
    cum_cnt = np.cumsum(sc)
    cum_spam = np.cumsum(ss)
    boundaries = np.nonzero(sv[:-1] < sv[1:])[0]

    n_left = cum_cnt[boundaries]
    n_right = n - n_left
    spam_left = cum_spam[boundaries]
    spam_right = cum_spam[-1] - spam_left
    p_l = spam_left / n_left
    p_r = spam_right / n_right
    gini_l = 1.0 - p_l**2 - (1.0 - p_l) ** 2
    gini_r = 1.0 - p_r**2 - (1.0 - p_r) ** 2
    cost = (n_left * gini_l + n_right * gini_r) / n
    best = int(np.argmin(cost))
    thr = (sv[boundaries[best]] + sv[boundaries[best] + 1]) / 2.0
    return float(cost[best]), float(thr)


def _grow_tree(feats: _Features, y: np.ndarray, rng: np.random.Generator, mtry: int) -> Tree:
    n, dim = feats.shape
    boot = rng.integers(0, n, size=n)
    multiplicity = np.bincount(boot, minlength=n)
    root_rows = np.nonzero(multiplicity)[0]
    root_cnts = multiplicity[root_rows]

    feature: list[int] = []
    threshold: list[float] = []
    left: list[int] = []
    right: list[int] = []
    votes: list[tuple[int, int]] = []

    def new_node(rows: np.ndarray, cnts: np.ndarray) -> int:
        node = len(feature)
        n_spam = int(cnts[y[rows] == 1].sum())
        feature.append(_LEAF)
        threshold.append(0.0)
        left.append(_LEAF)
        right.append(_LEAF)
        votes.append((int(cnts.sum()) - n_spam, n_spam))
        return node

    stack = [(new_node(root_rows, root_cnts), root_rows, root_cnts)]
    while stack:
        node, rows, cnts = stack.pop()
        total = int(cnts.sum())
        spams = cnts * y[rows]
        total_spam = int(spams.sum())
        if total < 2 or total_spam == 0 or total_spam == total:
            continue  # pure or single sample: stays a leaf

        best = None  # (cost, feature, threshold)
        evaluated = 0
        for f in rng.permutation(dim):
            grouped = feats.groups(int(f), rows, cnts, spams, total, total_spam)
            if grouped is None:
                continue  # constant zero here; does not use up the budget
            split = _best_split(*grouped)
            if split is None:
                continue  # constant here; does not use up the budget
            evaluated += 1
            cost, thr = split
            if best is None or cost < best[0]:
                best = (cost, int(f), thr)
            if evaluated >= mtry:
                break
        if best is None:
            continue  # nothing separates these samples

        _, f, thr = best
        go_left = feats.values(f, rows) <= thr
        feature[node] = f
        threshold[node] = thr
        left[node] = new_node(rows[go_left], cnts[go_left])
        right[node] = new_node(rows[~go_left], cnts[~go_left])
        stack.append((left[node], rows[go_left], cnts[go_left]))
        stack.append((right[node], rows[~go_left], cnts[~go_left]))

    return Tree(
        feature=np.asarray(feature, dtype=np.int64),
        threshold=np.asarray(threshold),
        left=np.asarray(left, dtype=np.int64),
        right=np.asarray(right, dtype=np.int64),
        votes=np.asarray(votes, dtype=np.int64),
    )


def train_rf(X, y, hp: RfHyperparams = RfHyperparams()) -> RfModel:
    if sparse.issparse(X) or isinstance(X, list):
        X = as_feature_matrix(X)
    feats = _Features(X)
    y = np.asarray(y, dtype=np.int64)
    if feats.shape[0] != y.shape[0]:
        raise DimensionMismatch(f"{feats.shape[0]} rows vs {y.shape[0]} labels")
    if feats.shape[0] < 2:
        raise ValueError("need at least two examples")

    dim = feats.shape[1]
    mtry = max(1, int(math.sqrt(dim)))

    def build(i: int) -> Tree:
        return _grow_tree(feats, y, np.random.default_rng(hp.seed + i), mtry)

    if hp.n_jobs == 1:
        trees = [build(i) for i in range(hp.n_trees)]
    else:
        with ThreadPoolExecutor(max_workers=hp.n_jobs) as pool:
            trees = list(pool.map(build, range(hp.n_trees)))
    return RfModel(trees=trees, dim=dim, hyperparams=hp)
