"""Command-line entry point: train, evaluate, predict, explain, serve.

Exit codes: 0 ok, 2 usage error, 3 data error, 4 artifact error,
5 internal error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import traceback

from .artifact import load_artifact, save_artifact
from .corpus import load_manifest, merge_corpora
from .errors import ArtifactError, DataError, MailsiftError, ModelVectorizerMismatch
from .evaluation import ReportRow, format_table, rows_to_csv
from .explain import ExplainConfig
from .pipeline import (
    MODELS,
    VECTORIZERS,
    TrainOptions,
    dataset_tag,
    reevaluate,
    train_and_evaluate,
)
from .textprep import PrepConfig, load_stopwords, read_stopword_file
from .word2vec import W2VParams

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_ARTIFACT = 4
EXIT_INTERNAL = 5

DEFAULT_ADDR = "127.0.0.1:8765"


def _prep_from_args(args) -> PrepConfig:
    words = read_stopword_file(args.stopwords) if args.stopwords else load_stopwords()
    return PrepConfig(stopwords=words)


def _load_corpus(manifest_path: str):
    datasets = load_manifest(manifest_path)
    corpus = merge_corpora(datasets)
    dropped = sum(d.n_dropped for d in datasets)
    if dropped:
        print(f"dropped {dropped} row(s) with unparseable labels", file=sys.stderr)
    if corpus.n_dropped_blank:
        print(f"dropped {corpus.n_dropped_blank} blank-text row(s)", file=sys.stderr)
    return corpus


def _print_report(rows: list[ReportRow], csv_path: str | None) -> None:
    print(format_table(rows), end="")
    csv_text = rows_to_csv(rows)
    if csv_path:
        with open(csv_path, "w", encoding="utf-8") as fh:
            fh.write(csv_text)
        print(f"wrote {csv_path}")
    else:
        print(csv_text, end="")


def cmd_train(args) -> int:
    corpus = _load_corpus(args.manifest)
    opts = TrainOptions(
        vectorizer=args.vectorizer,
        model=args.model,
        test_ratio=args.test_ratio,
        split_seed=args.seed,
        svm_c=args.svm_c,
        svm_epochs=args.svm_epochs,
        mnb_alpha=args.mnb_alpha,
        mnb_input="counts" if args.mnb_raw_counts else "tfidf",
        rf_trees=args.rf_trees,
        rf_max_features=args.rf_max_features if args.rf_max_features > 0 else None,
        rf_jobs=args.rf_jobs,
        l2_normalize=args.l2_normalize,
        w2v=W2VParams(
            dim=args.w2v_dim,
            window=args.w2v_window,
            epochs=args.w2v_epochs,
            min_count=args.w2v_min_count,
        ),
    )
    pipeline, m = train_and_evaluate(corpus, opts, prep=_prep_from_args(args))
    save_artifact(pipeline, args.out)
    print(f"wrote {args.out}")
    _print_report(
        [ReportRow(dataset_tag(corpus), opts.vectorizer, opts.model, m)], args.report_csv
    )
    return EXIT_OK


def cmd_evaluate(args) -> int:
    art = load_artifact(args.artifact)
    corpus = _load_corpus(args.manifest)
    m = reevaluate(
        art.pipeline,
        corpus,
        test_ratio=args.test_ratio,
        split_seed=args.seed,
        refit_vectorizer=not args.stored_vectorizer,
        whole_corpus=args.no_split,
    )
    _print_report(
        [ReportRow(dataset_tag(corpus), art.vectorizer_kind, art.classifier_kind, m)],
        args.report_csv,
    )
    return EXIT_OK


def _read_text(args, parser: argparse.ArgumentParser) -> str:
    if args.text is not None:
        text = args.text
    elif args.file is not None:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    else:
        parser.error("provide --text or --file")
    if not text.strip():
        parser.error("input text is empty")
    return text


def cmd_predict(args, parser) -> int:
    art = load_artifact(args.artifact)
    text = _read_text(args, parser)
    pred = art.pipeline.predict_text(text)
    payload = {
        "label": "spam" if pred.label == 1 else "ham",
        "score": pred.score,
        "model": art.classifier_kind,
    }
    if args.json:
        print(json.dumps(payload))
    else:
        print(f"{payload['label']} (score={pred.score:.4f}, model={payload['model']})")
    return EXIT_OK


def cmd_explain(args, parser) -> int:
    art = load_artifact(args.artifact)
    text = _read_text(args, parser)
    cfg = ExplainConfig(n_samples=args.n_samples, top_k=args.top_k, seed=args.seed)
    explanation = art.pipeline.explain_text(text, cfg)
    payload = {
        "probabilities": {"ham": explanation.p_ham, "spam": explanation.p_spam},
        "tokens": [
            {"token": t.token, "position": t.position, "weight": t.weight}
            for t in explanation.token_weights
        ],
        "fit": explanation.surrogate_fit,
    }
    if args.json:
        print(json.dumps(payload))
        return EXIT_OK
    print(f"ham  {explanation.p_ham:.4f}")
    print(f"spam {explanation.p_spam:.4f}")
    print(f"surrogate fit {explanation.surrogate_fit:.3f}")
    for t in explanation.token_weights:
        direction = "spam" if t.weight >= 0 else "ham"
        print(f"  {t.token:<20} pos={t.position:<4} weight={t.weight:+.4f} ({direction})")
    return EXIT_OK


def cmd_serve(args, parser) -> int:
    import uvicorn

    from .service import create_app

    artifact_path = args.artifact or os.environ.get("MAILSIFT_ARTIFACT")
    if not artifact_path:
        raise ArtifactError("no artifact: pass --artifact or set MAILSIFT_ARTIFACT")
    addr = args.addr or os.environ.get("MAILSIFT_ADDR", DEFAULT_ADDR)
    host, _, port = addr.rpartition(":")
    if not host or not port.isdigit():
        parser.error(f"bad address {addr!r}, expected host:port")
    app = create_app(load_artifact(artifact_path), cors_origins=tuple(args.cors_origin))
    uvicorn.run(app, host=host, port=int(port), log_level="warning")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mailsift", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    train = sub.add_parser("train", help="ingest, train and evaluate; write an artifact")
    train.add_argument("--manifest", required=True, help="dataset manifest (path,schema lines)")
    train.add_argument("--vectorizer", choices=VECTORIZERS, default="tfidf")
    train.add_argument("--model", choices=MODELS, default="svm")
    train.add_argument("--test-ratio", type=float, default=0.2)
    train.add_argument("--seed", type=int, default=42, help="train/test split seed")
    train.add_argument("--out", required=True, help="artifact output path")
    train.add_argument("--report-csv", default=None)
    train.add_argument("--stopwords", default=None, help="override the shipped stop-word list")
    train.add_argument("--svm-c", type=float, default=1.0)
    train.add_argument("--svm-epochs", type=int, default=20)
    train.add_argument("--mnb-alpha", type=float, default=1.0)
    train.add_argument(
        "--mnb-raw-counts",
        action="store_true",
        help="feed MNB raw token counts instead of TF-IDF values",
    )
    train.add_argument("--rf-trees", type=int, default=100)
    train.add_argument(
        "--rf-max-features",
        type=int,
        default=20000,
        help="TF-IDF vocabulary cap for RF runs; 0 disables",
    )
    train.add_argument("--rf-jobs", type=int, default=1)
    train.add_argument("--l2-normalize", action="store_true")
    train.add_argument("--w2v-dim", type=int, default=100)
    train.add_argument("--w2v-window", type=int, default=5)
    train.add_argument("--w2v-epochs", type=int, default=5)
    train.add_argument("--w2v-min-count", type=int, default=2)

    ev = sub.add_parser("evaluate", help="re-evaluate an artifact against a manifest")
    ev.add_argument("--artifact", required=True)
    ev.add_argument("--manifest", required=True)
    ev.add_argument("--test-ratio", type=float, default=None)
    ev.add_argument("--seed", type=int, default=None)
    ev.add_argument("--report-csv", default=None)
    ev.add_argument(
        "--stored-vectorizer",
        action="store_true",
        help="apply the artifact's vectorizer as-is instead of refitting the training protocol",
    )
    ev.add_argument(
        "--no-split",
        action="store_true",
        help="score every manifest record with the stored vectorizer (no train/test split)",
    )

    pred = sub.add_parser("predict", help="classify one text")
    pred.add_argument("--artifact", required=True)
    pred.add_argument("--text", default=None)
    pred.add_argument("--file", default=None)
    pred.add_argument("--json", action="store_true")

    ex = sub.add_parser("explain", help="explain one prediction")
    ex.add_argument("--artifact", required=True)
    ex.add_argument("--text", default=None)
    ex.add_argument("--file", default=None)
    ex.add_argument("--top-k", type=int, default=10)
    ex.add_argument("--n-samples", type=int, default=1000)
    ex.add_argument("--seed", type=int, default=0)
    ex.add_argument("--json", action="store_true")

    serve = sub.add_parser("serve", help="serve predictions over HTTP")
    serve.add_argument("--artifact", default=None, help="defaults to $MAILSIFT_ARTIFACT")
    serve.add_argument("--addr", default=None, help="host:port, defaults to $MAILSIFT_ADDR")
    serve.add_argument(
        "--cors-origin", action="append", default=[], help="allowed origin (repeatable)"
    )

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "train":
            return cmd_train(args)
        if args.command == "evaluate":
            return cmd_evaluate(args)
        if args.command == "predict":
            return cmd_predict(args, parser)
        if args.command == "explain":
            return cmd_explain(args, parser)
        if args.command == "serve":
            return cmd_serve(args, parser)
        parser.error(f"unknown command {args.command!r}")
    except ArtifactError as exc:
        print(f"artifact error: {exc}", file=sys.stderr)
        return EXIT_ARTIFACT
    except ModelVectorizerMismatch as exc:
        print(f"artifact error: {exc}", file=sys.stderr)
        return EXIT_ARTIFACT
    except (DataError, OSError, ValueError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except MailsiftError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception:
        traceback.print_exc()
        return EXIT_INTERNAL
    return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
