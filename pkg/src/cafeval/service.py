"""HTTP reward service.

Exposes the reward stack and judge event extraction to external callers
(typically an RL trainer colocated with this process). The service holds
no per-request state: every call carries its own sample (inline or by id
against a preloaded dataset) and trace text.

Status codes: 400 for malformed payloads (including the sample/sample_id
exclusivity rule), 422 for an unknown sample_id, 503 when the judge
transport is unavailable.
"""

from __future__ import annotations

from dataclasses import replace

from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, ConfigDict

from . import __version__
from .judge.gateway import Judge, JudgeError, JudgeTransportError
from .judge.replies import extraction_to_json
from .reports import run_extraction
from .rewards import RewardWeights, compute_trace_reward
from .samples import AudioQASample, DatasetError, sample_from_json


class RewardRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    sample: dict | None = None
    sample_id: str | None = None
    trace: str
    weights: dict | None = None


class ExtractRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    sample: dict | None = None
    sample_id: str | None = None
    trace: str


def create_app(
    *,
    dataset: dict[str, AudioQASample] | None = None,
    judge: Judge,
    judge_kind: str = "ok",
    weights: RewardWeights | None = None,
    score_malformed: bool = False,
) -> FastAPI:
    app = FastAPI(title="cafeval reward service", version=__version__)
    base_weights = weights or RewardWeights()

    @app.exception_handler(RequestValidationError)
    async def _bad_payload(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"detail": exc.errors()})

    def resolve_sample(req) -> AudioQASample:
        if (req.sample is None) == (req.sample_id is None):
            raise HTTPException(
                status_code=400, detail="provide exactly one of sample or sample_id"
            )
        if req.sample is not None:
            try:
                return sample_from_json(req.sample)
            except DatasetError as exc:
                raise HTTPException(status_code=400, detail=f"bad sample: {exc}") from None
        if dataset is None or req.sample_id not in dataset:
            raise HTTPException(
                status_code=422, detail=f"unknown sample_id {req.sample_id!r}"
            )
        return dataset[req.sample_id]

    @app.get("/healthz")
    async def healthz():
        return {"version": __version__, "judge": judge_kind}

    @app.post("/v1/reward")
    async def reward(req: RewardRequest):
        sample = resolve_sample(req)
        if not req.trace.strip():
            raise HTTPException(status_code=400, detail="trace must be non-empty")
        w = base_weights
        if req.weights is not None:
            unknown = set(req.weights) - set(base_weights.to_json())
            if unknown:
                raise HTTPException(
                    status_code=400, detail=f"unknown weight {sorted(unknown)[0]!r}"
                )
            try:
                w = replace(base_weights, **{k: float(v) for k, v in req.weights.items()})
            except (TypeError, ValueError) as exc:
                raise HTTPException(status_code=400, detail=f"bad weights: {exc}") from None
        breakdown = compute_trace_reward(
            req.trace, sample, judge, weights=w, score_malformed=score_malformed
        )
        if "judge_transport" in breakdown.flags:
            raise HTTPException(status_code=503, detail="judge unavailable")
        return breakdown.to_json()

    @app.post("/v1/extract")
    async def extract(req: ExtractRequest):
        sample = resolve_sample(req)
        if not req.trace.strip():
            raise HTTPException(status_code=400, detail="trace must be non-empty")
        try:
            extraction = run_extraction(sample, req.trace, judge)
        except JudgeTransportError:
            raise HTTPException(status_code=503, detail="judge unavailable") from None
        except JudgeError as exc:
            raise HTTPException(status_code=502, detail=f"judge failure: {exc}") from None
        return extraction_to_json(extraction)

    return app
