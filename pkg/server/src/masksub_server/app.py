"""FastAPI application implementing the attack client's wire protocol.

    POST /classify   {"task": "classification", "texts": [...]}
                     {"task": "entailment", "pairs": [{premise, hypothesis}]}
                     -> {"probs": [[...]]}
    POST /fill_mask  {"original", "masked", "top_k"} -> {"candidates": [...]}
    POST /similarity {"a", "b"} -> {"score": ...}
    POST /grammar    {"text"} -> {"error_count": ...}
    GET  /healthz    -> {"ok": true}

Every non-200 response carries {"error": "message"}: 400 for malformed
requests, 422 when the masked input lacks a mask token, 503 while models
are still loading.
"""

from __future__ import annotations

from typing import Literal

from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .config import ServerConfig
from .engines import ClassifierEngine, EncoderEngine, MaskedLMEngine, MissingMaskError
from .grammar import RuleBasedChecker


class PairIn(BaseModel):
    premise: str
    hypothesis: str


class ClassifyRequest(BaseModel):
    task: Literal["classification", "entailment"]
    texts: list[str] | None = None
    pairs: list[PairIn] | None = None


class FillMaskRequest(BaseModel):
    original: str
    masked: str
    top_k: int = 50


class SimilarityRequest(BaseModel):
    a: str
    b: str


class GrammarRequest(BaseModel):
    text: str


def create_app(config: ServerConfig) -> FastAPI:
    """Load every configured model (fail fast) and build the app."""
    app = FastAPI(title="masksub-server", version="0.1.0")
    app.state.ready = False

    mlm = MaskedLMEngine(config.mlm_model, config.max_seq_len, config.device)
    encoder = EncoderEngine(config.encoder_model, config.max_seq_len, config.device)
    classifiers = {
        task: ClassifierEngine(name, config.max_seq_len, config.device)
        for task, name in config.classifier_models.items()
    }
    checker = RuleBasedChecker()

    @app.exception_handler(RequestValidationError)
    async def on_bad_request(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"error": str(exc)})

    @app.exception_handler(HTTPException)
    async def on_http_error(request: Request, exc: HTTPException):
        return JSONResponse(status_code=exc.status_code, content={"error": str(exc.detail)})

    @app.exception_handler(MissingMaskError)
    async def on_missing_mask(request: Request, exc: MissingMaskError):
        return JSONResponse(status_code=422, content={"error": str(exc)})

    @app.exception_handler(Exception)
    async def on_internal_error(request: Request, exc: Exception):
        return JSONResponse(status_code=500, content={"error": str(exc)})

    def require_ready():
        if not app.state.ready:
            raise HTTPException(status_code=503, detail="models are loading")

    @app.get("/healthz")
    async def healthz():
        return {"ok": True}

    @app.post("/classify")
    async def classify(req: ClassifyRequest):
        require_ready()
        engine = classifiers.get(req.task)
        if engine is None:
            raise HTTPException(
                status_code=400, detail=f"no classifier configured for task {req.task!r}"
            )
        if req.task == "classification":
            if not req.texts:
                raise HTTPException(status_code=400, detail="texts is required")
            probs = engine.classify_texts(req.texts)
        else:
            if not req.pairs:
                raise HTTPException(status_code=400, detail="pairs is required")
            probs = engine.classify_pairs([(p.premise, p.hypothesis) for p in req.pairs])
        return {"probs": probs}

    @app.post("/fill_mask")
    async def fill_mask(req: FillMaskRequest):
        require_ready()
        if req.top_k < 1:
            raise HTTPException(status_code=400, detail="top_k must be >= 1")
        candidates = mlm.top_candidates(req.original, req.masked, req.top_k)
        return {"candidates": [{"token": t, "prob": p} for t, p in candidates]}

    @app.post("/similarity")
    async def similarity(req: SimilarityRequest):
        require_ready()
        if not req.a or not req.b:
            raise HTTPException(status_code=400, detail="both a and b are required")
        return {"score": encoder.similarity(req.a, req.b)}

    @app.post("/grammar")
    async def grammar(req: GrammarRequest):
        require_ready()
        return {"error_count": checker.error_count(req.text)}

    app.state.ready = True
    return app
