from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mailsift.errors import BadRatio, EmptyInput, LengthMismatch
from mailsift.evaluation import (
    ConfusionMatrix,
    confusion,
    format_table,
    metrics,
    rows_to_csv,
    ReportRow,
    split,
)


class TestSplit:
    def test_small_split(self):
        train, test = split(10, 0.2, seed=0)
        assert len(train) == 8 and len(test) == 2
        assert set(train) | set(test) == set(range(10))
        assert set(train) & set(test) == set()

    def test_paper_scale_arithmetic(self):
        train, test = split(82486, 0.2, seed=42)
        assert len(train) == 65988
        assert len(test) == 16498

    def test_same_seed_same_split(self):
        a = split(1000, 0.3, seed=7)
        b = split(1000, 0.3, seed=7)
        assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])

    def test_different_seed_differs(self):
        a = split(1000, 0.3, seed=7)
        b = split(1000, 0.3, seed=8)
        assert not np.array_equal(a[0], b[0])

    def test_bad_ratio(self):
        for r in (0.0, 1.0, -0.1, 2.0):
            with pytest.raises(BadRatio):
                split(10, r, seed=0)

    def test_empty(self):
        with pytest.raises(EmptyInput):
            split(0, 0.2, seed=0)

    def test_accepts_corpus_like(self):
        class Sized:
            def __len__(self):
                return 5

        train, test = split(Sized(), 0.2, seed=0)
        assert len(train) + len(test) == 5


class TestConfusion:
    def test_basic(self):
        cm = confusion([1, 1, 0], [1, 0, 0])
        assert (cm.tp, cm.fp, cm.tn, cm.fn) == (1, 1, 1, 0)

    def test_perfect(self):
        cm = confusion([1, 1, 1], [1, 1, 1])
        assert cm.fp == cm.fn == 0

    def test_hand_enumerated_ten(self):
        truth = [1, 1, 1, 0, 0, 0, 0, 0, 0, 0]
        predicted = [1, 1, 0, 1, 0, 0, 0, 0, 0, 0]
        cm = confusion(predicted, truth)
        assert (cm.tp, cm.fp, cm.fn, cm.tn) == (2, 1, 1, 6)

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            confusion([1, 0], [1])

    def test_empty(self):
        with pytest.raises(EmptyInput):
            confusion([], [])


class TestMetrics:
    def test_hand_oracle(self):
        m = metrics(ConfusionMatrix(tp=2, fp=1, tn=6, fn=1))
        assert m.accuracy == pytest.approx(0.8)
        assert m.precision == pytest.approx(2 / 3)
        assert m.recall == pytest.approx(2 / 3)
        assert m.f1 == pytest.approx(2 / 3)

    def test_degenerate_all_negative(self):
        m = metrics(ConfusionMatrix(tp=0, fp=0, tn=5, fn=0))
        assert m.accuracy == 1.0
        assert m.precision == m.recall == m.f1 == 0.0

    def test_negative_counts_rejected(self):
        with pytest.raises(ValueError):
            ConfusionMatrix(tp=-1, fp=0, tn=0, fn=0)


def brute_force_metrics(predicted, truth):
    """Independent per-example tally."""
    tp = fp = tn = fn = 0
    for p, t in zip(predicted, truth):
        if p == 1 and t == 1:
            tp += 1
        elif p == 1 and t == 0:
            fp += 1
        elif p == 0 and t == 0:
            tn += 1
        else:
            fn += 1
    total = len(truth)
    acc = (tp + tn) / total
    prec = tp / (tp + fp) if tp + fp else 0.0
    rec = tp / (tp + fn) if tp + fn else 0.0
    f1 = 2 * prec * rec / (prec + rec) if prec + rec else 0.0
    return acc, prec, rec, f1


@settings(max_examples=200)
@given(st.lists(st.tuples(st.integers(0, 1), st.integers(0, 1)), min_size=1, max_size=1000))
def test_metrics_match_brute_force(pairs):
    predicted = [p for p, _ in pairs]
    truth = [t for _, t in pairs]
    m = metrics(confusion(predicted, truth))
    acc, prec, rec, f1 = brute_force_metrics(predicted, truth)
    assert (m.accuracy, m.precision, m.recall, m.f1) == (acc, prec, rec, f1)
    for v in (m.accuracy, m.precision, m.recall, m.f1):
        assert 0.0 <= v <= 1.0
    if m.precision > 0 and m.recall > 0:
        # harmonic mean sits between the two rates (up to float rounding)
        assert min(m.precision, m.recall) - 1e-12 <= m.f1 <= max(m.precision, m.recall) + 1e-12


class TestReports:
    def test_csv_and_table(self):
        rows = [
            ReportRow("10[1] 5[0]", "tfidf", "svm", metrics(ConfusionMatrix(2, 1, 6, 1)))
        ]
        csv_text = rows_to_csv(rows)
        assert csv_text.splitlines()[0] == "dataset,vectorizer,model,accuracy,precision,recall,f1"
        assert "tfidf,svm" in csv_text
        table = format_table(rows)
        assert "accuracy" in table and "0.8000" in table
