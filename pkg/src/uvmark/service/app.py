"""FastAPI service exposing the annotation pipeline."""

from __future__ import annotations

import json
import os

import numpy as np
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import controller as ctrl
from ..core import ClassPalette, Homography
from ..dataset import write_annotations
from ..debug import dump_pair_debug
from ..errors import AlignmentFailedError, DegenerateInputError, InsufficientDataError, UvmarkError
from ..features import match_bruteforce
from ..ingest import load_stream, pair_stream
from ..metrics import iou
from ..pngio import load_mask
from ..registration import (
    FeatureConfig,
    RansacConfig,
    estimate_homography_ransac,
    extract_features,
)
from ..segmentation import annotate_pairs
from ..synth import SceneSpec, write_stream
from . import models as m

app = FastAPI(title="uvmark", version="0.1.0",
              description="Segmentation-mask annotation from interleaved "
                          "regular/UV-light image streams")


@app.exception_handler(UvmarkError)
async def uvmark_error_handler(request: Request, exc: UvmarkError):
    return JSONResponse(
        status_code=400,
        content={"error": type(exc).__name__, "message": str(exc)},
    )


@app.get("/health", response_model=m.HealthResponse)
def health() -> m.HealthResponse:
    return m.HealthResponse()


@app.post("/controller-sim", response_model=m.ControllerSimResponse)
def controller_sim(req: m.ControllerSimRequest) -> m.ControllerSimResponse:
    cfg = ctrl.ControllerConfig(
        camera_rate_hz=req.camera_rate_hz,
        regular_intensity=req.regular_intensity,
        uv_intensity=req.uv_intensity,
        mode=ctrl.ControllerMode(req.mode),
    )
    signals = ctrl.schedule(cfg, req.duration_ms)
    return m.ControllerSimResponse(
        n_triggers=len(signals),
        records=ctrl.schedule_csv_lines(signals),
    )


@app.post("/synth", response_model=m.SynthResponse)
def synth(req: m.SynthRequest) -> m.SynthResponse:
    doc = dict(req.spec)
    if req.seed is not None:
        doc["seed"] = req.seed
    spec = SceneSpec.from_dict(doc)
    manifest_path = write_stream(spec, req.n_frames, req.out_dir)
    return m.SynthResponse(manifest=manifest_path, n_frames=req.n_frames,
                           n_pairs=req.n_frames // 2)


@app.post("/pair", response_model=m.PairResponse)
def pair(req: m.PairRequest) -> m.PairResponse:
    _, frames = load_stream(req.manifest)
    pairs = pair_stream(frames)
    return m.PairResponse(
        n_pairs=len(pairs),
        pairs=[m.PairEntry(pair=i, regular_seq=p.regular.seq, uv_seq=p.uv.seq)
               for i, p in enumerate(pairs)],
    )


@app.post("/align", response_model=m.AlignResponse)
def align(req: m.AlignRequest) -> m.AlignResponse:
    _, frames = load_stream(req.manifest)
    pairs = pair_stream(frames)
    fcfg = FeatureConfig(fast_threshold=req.fast_threshold,
                         max_keypoints=req.max_keypoints,
                         max_match_distance=req.max_match_distance)
    rcfg = RansacConfig(iterations=req.iterations,
                        inlier_threshold=req.inlier_threshold,
                        min_inliers=req.min_inliers, seed=req.seed)
    results = []
    for i, p in enumerate(pairs):
        kps_uv, d_uv = extract_features(p.uv, fcfg)
        kps_reg, d_reg = extract_features(p.regular, fcfg)
        matches = match_bruteforce(d_uv, d_reg, max_distance=fcfg.max_match_distance)
        if req.debug_dir:
            dump_pair_debug(i, p, kps_uv, kps_reg, matches, req.debug_dir)
        try:
            if len(matches) < 4:
                raise AlignmentFailedError(f"only {len(matches)} matches")
            src = np.array([[kps_uv[mt.index_a].x, kps_uv[mt.index_a].y] for mt in matches])
            dst = np.array([[kps_reg[mt.index_b].x, kps_reg[mt.index_b].y] for mt in matches])
            hom, inliers = estimate_homography_ransac(src, dst, rcfg)
            results.append(m.AlignPairResult(
                pair=i, h=hom.h.reshape(-1).tolist(),
                inliers=int(inliers.sum()), failed=False))
        except (AlignmentFailedError, InsufficientDataError, DegenerateInputError):
            results.append(m.AlignPairResult(
                pair=i, h=Homography.identity().h.reshape(-1).tolist(),
                inliers=0, failed=True))
    if req.out:
        with open(req.out, "w") as f:
            json.dump([r.model_dump() for r in results], f, indent=2)
            f.write("\n")
    return m.AlignResponse(pairs=results)


@app.post("/annotate", response_model=m.AnnotateResponse)
def annotate(req: m.AnnotateRequest) -> m.AnnotateResponse:
    with open(req.palette) as f:
        palette = ClassPalette.from_dict(json.load(f))
    _, frames = load_stream(req.manifest)
    pairs = pair_stream(frames)
    samples = annotate_pairs(
        pairs, palette, req.mode, align=req.align,
        rcfg=RansacConfig(seed=req.seed), jobs=req.jobs,
    )
    summary = write_annotations(samples, req.out_dir, palette, preview=req.preview)
    return m.AnnotateResponse(
        samples=summary["samples"], failed=summary["failed"],
        out_dir=req.out_dir,
        dataset_manifest=os.path.join(req.out_dir, "dataset.json"),
    )


def _load_mask_dir(path: str):
    if not os.path.isdir(path):
        raise UvmarkError(f"not a directory: {path}")
    names = sorted(n for n in os.listdir(path) if n.lower().endswith(".png"))
    return [load_mask(os.path.join(path, n)) for n in names]


@app.post("/eval", response_model=m.EvalResponse)
def evaluate(req: m.EvalRequest) -> m.EvalResponse:
    masks_a = _load_mask_dir(req.a_dir)
    if (req.b_dir is None) == (req.reference is None):
        raise UvmarkError("exactly one of b_dir / reference must be given")
    if req.reference is not None:
        reference = load_mask(req.reference)
        pairs = [(a, reference) for a in masks_a]
    else:
        masks_b = _load_mask_dir(req.b_dir)
        if len(masks_a) != len(masks_b):
            raise UvmarkError(
                f"mask counts differ: {len(masks_a)} vs {len(masks_b)}")
        pairs = list(zip(masks_a, masks_b))
    if not pairs:
        raise UvmarkError("no mask pairs to evaluate")
    if req.labels is not None:
        labels = req.labels
    else:
        found = set()
        for a, b in pairs:
            found |= set(np.unique(a.labels)) | set(np.unique(b.labels))
        labels = sorted(int(l) for l in found if l != 0)
    per_label = {}
    for label in labels:
        values = [iou(a, b, label) for a, b in pairs]
        arr = np.asarray(values)
        per_label[str(label)] = m.LabelReport(
            mean=float(arr.mean()), std=float(arr.std()), n_pairs=len(values))
    resp = m.EvalResponse(per_label=per_label)
    if req.out:
        with open(req.out, "w") as f:
            json.dump(resp.model_dump(), f, indent=2, sort_keys=True)
            f.write("\n")
    if req.csv:
        with open(req.csv, "w") as f:
            f.write("label,mean,std,n_pairs\n")
            for label, rep in per_label.items():
                f.write(f"{label},{rep.mean:.6f},{rep.std:.6f},{rep.n_pairs}\n")
    return resp
