"""Pydantic request/response models for the uvmark service.

Endpoints operate on filesystem paths; client and server are assumed to
share a filesystem (the CLI runs the app in-process by default).
"""

from __future__ import annotations

from pydantic import BaseModel, Field


class HealthResponse(BaseModel):
    status: str = "ok"


class ErrorResponse(BaseModel):
    error: str
    message: str


class ControllerSimRequest(BaseModel):
    camera_rate_hz: float
    duration_ms: float
    mode: str = "dark"  # "dark" | "ambient"
    regular_intensity: float = 1.0
    uv_intensity: float = 1.0


class ControllerSimResponse(BaseModel):
    n_triggers: int
    records: list[str]  # "t_ms,regular,uv,trigger" lines


class SynthRequest(BaseModel):
    spec: dict  # SceneSpec JSON document
    n_frames: int = Field(ge=2)
    out_dir: str
    seed: int | None = None  # overrides spec["seed"] when given


class SynthResponse(BaseModel):
    manifest: str
    n_frames: int
    n_pairs: int


class PairRequest(BaseModel):
    manifest: str


class PairEntry(BaseModel):
    pair: int
    regular_seq: int
    uv_seq: int


class PairResponse(BaseModel):
    n_pairs: int
    pairs: list[PairEntry]


class AlignRequest(BaseModel):
    manifest: str
    out: str | None = None  # JSON file for per-pair homographies
    debug_dir: str | None = None
    seed: int = 0
    iterations: int = 1000
    inlier_threshold: float = 2.0
    min_inliers: int = 12
    fast_threshold: int = 20
    max_keypoints: int = 500
    max_match_distance: int = 64


class AlignPairResult(BaseModel):
    pair: int
    h: list[float]  # row-major 9 floats, UV -> regular
    inliers: int
    failed: bool


class AlignResponse(BaseModel):
    pairs: list[AlignPairResult]


class AnnotateRequest(BaseModel):
    manifest: str
    palette: str  # palette JSON path
    mode: str  # "dark" | "ambient"
    out_dir: str
    align: bool = True  # ambient only; camera assumed moving
    jobs: int = 1
    preview: bool = False
    seed: int = 0


class AnnotateResponse(BaseModel):
    samples: int
    failed: int
    out_dir: str
    dataset_manifest: str


class EvalRequest(BaseModel):
    a_dir: str
    b_dir: str | None = None
    reference: str | None = None  # single mask path, alternative to b_dir
    labels: list[int] | None = None  # default: union of labels found
    out: str | None = None
    csv: str | None = None


class LabelReport(BaseModel):
    mean: float
    std: float
    n_pairs: int


class EvalResponse(BaseModel):
    per_label: dict[str, LabelReport]
