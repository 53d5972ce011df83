"""JSON-over-HTTP inference service.

Endpoints:

    POST /predict  {"text": str} -> {"label": "spam"|"ham", "score": float, "model": str}
    POST /explain  {"text": str, "top_k"?, "n_samples"?, "seed"?}
                   -> {"probabilities": {"ham": p, "spam": p}, "tokens": [...], "fit": float}
    GET  /health   -> {"status": "ok", "model": str, "format_version": int}

Exactly one artifact is loaded at boot and never mutated, so concurrent
requests share it read-only. Status codes: 400 for malformed requests,
413 over the 1 MiB body cap, 422 when the text preprocesses to zero
tokens, 503 before an artifact is loaded.
"""

from __future__ import annotations

import json
import threading

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .artifact import PipelineArtifact, load_artifact
from .explain import ExplainConfig
from .textprep import preprocess

MAX_BODY_BYTES = 1 << 20


def _error(status: int, message: str) -> JSONResponse:
    return JSONResponse({"error": message}, status_code=status)


async def _read_json_body(request: Request) -> tuple[dict | None, JSONResponse | None]:
    declared = request.headers.get("content-length")
    if declared is not None and declared.isdigit() and int(declared) > MAX_BODY_BYTES:
        return None, _error(413, f"request body exceeds {MAX_BODY_BYTES} bytes")
    body = await request.body()
    if len(body) > MAX_BODY_BYTES:
        return None, _error(413, f"request body exceeds {MAX_BODY_BYTES} bytes")
    try:
        data = json.loads(body)
    except (UnicodeDecodeError, json.JSONDecodeError):
        return None, _error(400, "request body is not valid JSON")
    if not isinstance(data, dict):
        return None, _error(400, "request body must be a JSON object")
    return data, None


def _require_text(data: dict) -> tuple[str | None, JSONResponse | None]:
    text = data.get("text")
    if not isinstance(text, str) or not text.strip():
        return None, _error(400, "field 'text' must be a non-empty string")
    return text, None


def _optional_int(data: dict, key: str) -> tuple[int | None, JSONResponse | None]:
    value = data.get(key)
    if value is None:
        return None, None
    if isinstance(value, bool) or not isinstance(value, int):
        return None, _error(400, f"field {key!r} must be an integer")
    return value, None


def create_app(
    artifact: PipelineArtifact | str | None = None,
    cors_origins: tuple[str, ...] = (),
) -> FastAPI:
    """Build the service; ``artifact`` may be a loaded bundle or a path."""
    if isinstance(artifact, str):
        artifact = load_artifact(artifact)

    app = FastAPI(title="mailsift", docs_url=None, redoc_url=None)
    app.state.artifact = artifact
    app.state.counters = {"predict": 0, "explain": 0}
    app.state.counter_lock = threading.Lock()

    if cors_origins:
        from fastapi.middleware.cors import CORSMiddleware

        app.add_middleware(
            CORSMiddleware,
            allow_origins=list(cors_origins),
            allow_methods=["*"],
            allow_headers=["*"],
        )

    def _count(name: str) -> None:
        with app.state.counter_lock:
            app.state.counters[name] += 1

    @app.get("/health")
    async def health() -> JSONResponse:
        art: PipelineArtifact | None = app.state.artifact
        if art is None:
            return JSONResponse({"status": "unavailable"}, status_code=503)
        return JSONResponse(
            {
                "status": "ok",
                "model": art.classifier_kind,
                "format_version": art.format_version,
            }
        )

    @app.post("/predict")
    async def predict_endpoint(request: Request) -> JSONResponse:
        art: PipelineArtifact | None = app.state.artifact
        if art is None:
            return _error(503, "no artifact loaded")
        data, err = await _read_json_body(request)
        if err is not None:
            return err
        text, err = _require_text(data)
        if err is not None:
            return err
        pipeline = art.pipeline
        tokens = preprocess(text, pipeline.prep)
        if not tokens:
            return _error(422, "text preprocesses to zero tokens")
        pred = pipeline.predict_tokens(tokens)
        _count("predict")
        return JSONResponse(
            {
                "label": "spam" if pred.label == 1 else "ham",
                "score": pred.score,
                "model": pipeline.classifier_kind,
            }
        )

    @app.post("/explain")
    async def explain_endpoint(request: Request) -> JSONResponse:
        art: PipelineArtifact | None = app.state.artifact
        if art is None:
            return _error(503, "no artifact loaded")
        data, err = await _read_json_body(request)
        if err is not None:
            return err
        text, err = _require_text(data)
        if err is not None:
            return err
        values: dict[str, int | None] = {}
        for key in ("top_k", "n_samples", "seed"):
            values[key], err = _optional_int(data, key)
            if err is not None:
                return err
        defaults = ExplainConfig()
        top_k = values["top_k"] if values["top_k"] is not None else defaults.top_k
        n_samples = values["n_samples"] if values["n_samples"] is not None else defaults.n_samples
        seed = values["seed"] if values["seed"] is not None else defaults.seed
        if top_k <= 0 or n_samples <= 0:
            return _error(400, "top_k and n_samples must be positive")

        pipeline = art.pipeline
        tokens = preprocess(text, pipeline.prep)
        if not tokens:
            return _error(422, "text preprocesses to zero tokens")
        cfg = ExplainConfig(n_samples=n_samples, top_k=top_k, seed=seed)
        explanation = pipeline.explain_text(text, cfg)
        _count("explain")
        return JSONResponse(
            {
                "probabilities": {
                    "ham": explanation.p_ham,
                    "spam": explanation.p_spam,
                },
                "tokens": [
                    {"token": tw.token, "position": tw.position, "weight": tw.weight}
                    for tw in explanation.token_weights
                ],
                "fit": explanation.surrogate_fit,
            }
        )

    return app
