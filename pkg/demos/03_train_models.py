"""Train the full model grid on the fixture + synthetic corpus.

Reproduces the experiment layout of the results table at desk scale:
two vectorizers crossed with three classifiers, all on the same 80/20
seeded split. TF-IDF should dominate the embedding rows.
"""

from pathlib import Path

from mailsift.corpus import load_manifest, merge_corpora
from mailsift.datagen import synthetic_dataset
from mailsift.evaluation import format_table
from mailsift.pipeline import TrainOptions, report_row, train_and_evaluate
from mailsift.word2vec import W2VParams

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

datasets = load_manifest(FIXTURES / "manifest.txt")
datasets.append(synthetic_dataset(n_spam=220, n_ham=220, seed=13))
corpus = merge_corpora(datasets)
print(f"corpus: {len(corpus)} records, {corpus.n_spam}[1] {corpus.n_ham}[0]\n")

rows = []
for vectorizer in ("tfidf", "word2vec"):
    for model in ("svm", "mnb", "rf"):
        opts = TrainOptions(
            vectorizer=vectorizer,
            model=model,
            rf_trees=40,
            w2v=W2VParams(dim=32, window=4, epochs=10, min_count=2, seed=42),
        )
        _, metrics = train_and_evaluate(corpus, opts)
        rows.append(report_row(corpus, opts, metrics))
        print(f"trained {vectorizer}+{model}: accuracy {metrics.accuracy:.3f}")

print()
print(format_table(rows))
