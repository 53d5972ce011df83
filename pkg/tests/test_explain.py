from __future__ import annotations

import numpy as np
import pytest

from mailsift.errors import EmptyDocument, ModelVectorizerMismatch
from mailsift.explain import (
    ExplainConfig,
    explain,
    explain_tokens,
    perturb_samples,
)

TOKENS = ["scan", "meeting", "edu", "report", "urgent", "deadline"]
COEFS = {"scan": 2.0, "edu": -1.0}


def linear_scorer(tokens):
    """Transparent oracle: presence-based linear score."""
    return sum(COEFS.get(t, 0.0) for t in set(tokens))


class TestPerturbSamples:
    def test_n1_only_original(self):
        samples = perturb_samples(TOKENS, 1, seed=0)
        assert len(samples) == 1
        mask, doc = samples[0]
        assert mask.tolist() == [1] * len(TOKENS)
        assert doc == TOKENS

    def test_single_token_doc(self):
        samples = perturb_samples(["solo"], 3, seed=0)
        assert samples[0][1] == ["solo"]
        for mask, doc in samples[1:]:
            assert mask.tolist() == [0]
            assert doc == []

    def test_every_later_sample_removes_something(self):
        for mask, _ in perturb_samples(TOKENS, 50, seed=2)[1:]:
            assert mask.sum() < len(TOKENS)

    def test_deterministic(self):
        a = perturb_samples(TOKENS, 100, seed=9)
        b = perturb_samples(TOKENS, 100, seed=9)
        assert all(np.array_equal(m1, m2) and d1 == d2 for (m1, d1), (m2, d2) in zip(a, b))

    def test_empty_document(self):
        with pytest.raises(EmptyDocument):
            perturb_samples([], 10, seed=0)


class TestExplainTokens:
    def test_constant_model_has_no_weights(self):
        e = explain_tokens(lambda toks: 0.7, TOKENS, ExplainConfig(seed=1))
        assert all(abs(t.weight) < 1e-6 for t in e.token_weights)
        assert e.surrogate_fit == pytest.approx(1.0)
        assert e.class_probs == (pytest.approx(0.3), pytest.approx(0.7))

    def test_recovers_linear_oracle_signs_and_ranking(self):
        e = explain_tokens(linear_scorer, TOKENS, ExplainConfig(n_samples=1000, seed=3))
        by_token = {t.token: t.weight for t in e.token_weights}
        assert by_token["scan"] > 0
        assert by_token["edu"] < 0
        # |scan| > |edu| > everything else, mirroring the true coefficients
        others = [w for tok, w in by_token.items() if tok not in COEFS]
        assert abs(by_token["scan"]) > abs(by_token["edu"]) > max(abs(w) for w in others)
        assert e.surrogate_fit >= 0.95

    def test_deterministic_explanations(self):
        cfg = ExplainConfig(n_samples=300, seed=12)
        e1 = explain_tokens(linear_scorer, TOKENS, cfg)
        e2 = explain_tokens(linear_scorer, TOKENS, cfg)
        assert e1.class_probs == e2.class_probs
        assert e1.surrogate_fit == e2.surrogate_fit
        assert [(t.token, t.position, t.weight) for t in e1.token_weights] == [
            (t.token, t.position, t.weight) for t in e2.token_weights
        ]

    def test_top_k_truncation_and_ordering(self):
        e = explain_tokens(linear_scorer, TOKENS, ExplainConfig(n_samples=500, seed=5, top_k=3))
        assert len(e.token_weights) == 3
        mags = [abs(t.weight) for t in e.token_weights]
        assert mags == sorted(mags, reverse=True)

    def test_tie_break_by_position(self):
        e = explain_tokens(lambda toks: 0.0, ["a", "b", "c"], ExplainConfig(seed=0, top_k=3))
        assert [t.position for t in e.token_weights] == [0, 1, 2]

    def test_repeated_tokens_get_independent_positions(self):
        e = explain_tokens(
            lambda toks: float(len(toks)), ["scan", "x", "scan"], ExplainConfig(seed=4, top_k=3)
        )
        positions = {t.position for t in e.token_weights}
        assert positions == {0, 1, 2}

    def test_sign_coherence_across_seeds(self):
        hits = 0
        for seed in range(20):
            e = explain_tokens(linear_scorer, TOKENS, ExplainConfig(n_samples=500, seed=seed))
            top_pos = next(t for t in e.token_weights if t.weight > 0)
            reduced = [t for i, t in enumerate(TOKENS) if i != top_pos.position]
            if linear_scorer(reduced) < linear_scorer(TOKENS):
                hits += 1
        assert hits >= 16  # 80% of 20 trials

    def test_probabilities_sum_to_one(self):
        e = explain_tokens(lambda toks: 0.25, TOKENS, ExplainConfig(seed=2))
        assert e.p_ham + e.p_spam == pytest.approx(1.0, abs=1e-9)


class TestConfigValidation:
    def test_bad_values(self):
        with pytest.raises(ValueError):
            ExplainConfig(n_samples=0)
        with pytest.raises(ValueError):
            ExplainConfig(kernel_width=0.0)
        with pytest.raises(ValueError):
            ExplainConfig(top_k=0)


@pytest.fixture(scope="module")
def trained():
    from mailsift.classifiers import train_svm
    from mailsift.textprep import PrepConfig
    from mailsift.vectorize import fit_tfidf, transform_tfidf_many

    docs = [
        ["free", "pills", "urgent"],
        ["win", "prize", "urgent"],
        ["meeting", "agenda", "report"],
        ["lunch", "schedule", "report"],
    ] * 5
    labels = [1, 1, 0, 0] * 5
    tm = fit_tfidf(docs)
    model = train_svm(transform_tfidf_many(tm, docs), labels)
    return model, tm, PrepConfig()


class TestExplainEndToEnd:

    def test_explains_raw_text(self, trained):
        model, tm, prep = trained
        e = explain(model, tm, "Free pills! Urgent offer!!", ExplainConfig(seed=1), prep=prep)
        assert e.p_spam > 0.5
        assert len(e.token_weights) >= 1

    def test_empty_document_rejected(self, trained):
        model, tm, prep = trained
        with pytest.raises(EmptyDocument):
            explain(model, tm, "!!! ??? ...", ExplainConfig(seed=1), prep=prep)

    def test_mismatched_model_rejected(self, trained):
        _, tm, prep = trained
        import numpy as np

        from mailsift.classifiers import SvmHyperparams
        from mailsift.classifiers.svm import SvmModel

        wrong = SvmModel(weights=np.zeros(tm.dim + 5), bias=0.0, hyperparams=SvmHyperparams())
        with pytest.raises(ModelVectorizerMismatch):
            explain(wrong, tm, "free pills", ExplainConfig(seed=1), prep=prep)

    def test_matches_predict_probability(self, trained):
        model, tm, prep = trained
        from mailsift.classifiers import token_scorer
        from mailsift.textprep import preprocess

        text = "urgent free pills meeting"
        e = explain(model, tm, text, ExplainConfig(seed=6), prep=prep)
        direct = token_scorer(model, tm)(preprocess(text, prep)).score
        assert abs(e.p_spam - direct) < 1e-9
