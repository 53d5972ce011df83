"""Explain one spam verdict token by token.

A recruitment-scam email goes through the trained classifier; the
explainer then masks random subsets of its tokens, reads how the spam
score moves, and fits a small weighted ridge surrogate. Positive weights
push toward spam (shown as #), negative toward ham (shown as -).
"""

from pathlib import Path

from mailsift.corpus import load_manifest, merge_corpora
from mailsift.datagen import SAMPLE_PHISHING_EMAIL, synthetic_dataset
from mailsift.explain import ExplainConfig
from mailsift.pipeline import TrainOptions, train_and_evaluate

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

datasets = load_manifest(FIXTURES / "manifest.txt")
datasets.append(synthetic_dataset(n_spam=150, n_ham=150, seed=7))
pipeline, _ = train_and_evaluate(merge_corpora(datasets), TrainOptions())

print(SAMPLE_PHISHING_EMAIL)
pred = pipeline.predict_text(SAMPLE_PHISHING_EMAIL)
print(f"verdict: {'SPAM' if pred.label else 'SAFE'}  (score {pred.score:.3f})\n")

explanation = pipeline.explain_text(
    SAMPLE_PHISHING_EMAIL, ExplainConfig(n_samples=1200, top_k=12, seed=1)
)
print(f"P(ham) = {explanation.p_ham:.3f}   P(spam) = {explanation.p_spam:.3f}")
print(f"surrogate fit R^2 = {explanation.surrogate_fit:.3f}\n")

scale = max(abs(t.weight) for t in explanation.token_weights)
for tw in explanation.token_weights:
    bar = ("#" if tw.weight >= 0 else "-") * max(1, round(12 * abs(tw.weight) / scale))
    side = "spam" if tw.weight >= 0 else "ham"
    print(f"  {tw.token:<14} pos {tw.position:>3}  {tw.weight:+.4f}  {bar} ({side})")
