"""Skip-gram embeddings on the synthetic mail corpus.

Words that appear in interchangeable contexts end up with nearby vectors;
document vectors are plain means of their token vectors.
"""

import numpy as np

from mailsift.datagen import synthetic_dataset
from mailsift.textprep import PrepConfig, preprocess
from mailsift.word2vec import W2VParams, embed_document, train_word2vec

prep = PrepConfig.default()
records = synthetic_dataset(n_spam=250, n_ham=250, seed=5).records
docs = [preprocess(f"{r.subject} {r.body}", prep) for r in records]

table = train_word2vec(docs, W2VParams(dim=48, window=4, epochs=12, min_count=3, seed=42))
print(f"vocabulary: {len(table.vocabulary)} tokens, dim {table.dim}")


def nearest(token, k=5):
    v = table.vector(token)
    norms = np.linalg.norm(table.vectors, axis=1) * np.linalg.norm(v)
    sims = table.vectors @ v / np.maximum(norms, 1e-12)
    best = np.argsort(-sims)
    names = list(table.vocabulary)
    return [(names[i], float(sims[i])) for i in best[1 : k + 1]]


for probe in ("verify", "salary", "meeting"):
    if probe in table.vocabulary:
        pairs = ", ".join(f"{t} ({s:.2f})" for t, s in nearest(probe))
        print(f"  {probe:<10} -> {pairs}")

spam_doc = embed_document(table, docs[0])
ham_doc = embed_document(table, docs[-1])
print(f"\ndocument vectors: spam[:4]={np.round(spam_doc[:4], 3)} ham[:4]={np.round(ham_doc[:4], 3)}")
