"""Boot the inference service in-process and exercise its JSON API.

The same flow the web UI uses: paste text, POST /predict for the verdict,
POST /explain for token weights. A saved artifact round-trips through the
versioned binary format on the way.
"""

import json
import tempfile
import threading
import time
from pathlib import Path

import httpx
import uvicorn

from mailsift.artifact import load_artifact, save_artifact
from mailsift.corpus import load_manifest, merge_corpora
from mailsift.datagen import SAMPLE_PHISHING_EMAIL, synthetic_dataset
from mailsift.pipeline import TrainOptions, train_and_evaluate
from mailsift.service import create_app

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

datasets = load_manifest(FIXTURES / "manifest.txt")
datasets.append(synthetic_dataset(n_spam=150, n_ham=150, seed=7))
pipeline, metrics = train_and_evaluate(merge_corpora(datasets), TrainOptions())
print(f"trained tfidf+svm, test accuracy {metrics.accuracy:.3f}")

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "model.msift"
    save_artifact(pipeline, path)
    print(f"artifact: {path.stat().st_size} bytes")

    app = create_app(load_artifact(path))
    server = uvicorn.Server(uvicorn.Config(app, host="127.0.0.1", port=8899, log_level="error"))
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    while not server.started:
        time.sleep(0.05)

    base = "http://127.0.0.1:8899"
    print("\nGET /health ->", httpx.get(f"{base}/health").json())

    verdict = httpx.post(f"{base}/predict", json={"text": SAMPLE_PHISHING_EMAIL}).json()
    print("POST /predict ->", json.dumps(verdict))

    explanation = httpx.post(
        f"{base}/explain",
        json={"text": SAMPLE_PHISHING_EMAIL, "top_k": 5, "seed": 3},
    ).json()
    print("POST /explain ->")
    print(f"  probabilities: {explanation['probabilities']}")
    for tok in explanation["tokens"]:
        print(f"  {tok['token']:<12} {tok['weight']:+.4f}")

    server.should_exit = True
    thread.join(timeout=5)
print("server stopped")
