"""TF-IDF by hand on a two-document corpus.

tf(w, d) = count / length, idf(w) = ln(n_docs / df(w)), weight = tf * idf.
A token present in every document scores exactly zero; a token unseen at
fit time contributes nothing at transform time.
"""

import math

from mailsift.textprep import PrepConfig, preprocess
from mailsift.vectorize import fit_tfidf, transform_tfidf

prep = PrepConfig.default()
raw = [
    "Free money!!! Claim your money now",
    "Agenda for today's budget meeting",
]
docs = [preprocess(t, prep) for t in raw]
print("tokens:", docs)

model = fit_tfidf(docs)
print(f"\nvocabulary ({model.dim} tokens, first-appearance order):")
for token, col in model.vocabulary.items():
    print(f"  {token:<8} df={model.doc_freq[col]}  idf={model.idf[col]:.4f}")

vec = transform_tfidf(model, docs[0])
print("\nfirst document weights:")
for idx, value in vec.entries():
    token = [t for t, c in model.vocabulary.items() if c == idx][0]
    print(f"  {token:<8} {value:.4f}")

money = model.vocabulary["money"]
n_tokens = len(docs[0])
print("\ncheck against the closed form:")
print(f"  tfidf(money) = (2/{n_tokens}) * ln(2/1) = {(2 / n_tokens) * math.log(2):.4f}"
      f"  (computed {vec.get(money):.4f})")
