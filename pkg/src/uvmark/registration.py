"""Robust homography estimation and image warping.

The alignment pipeline maps each UV frame onto its paired regular frame:
feature extraction, brute-force matching, RANSAC homography fit, then an
inverse-mapping bilinear warp with a validity mask.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Frame, FramePair, Homography, Image, quantize_u8
from .errors import (
    AlignmentFailedError,
    DegenerateInputError,
    DimensionMismatchError,
    InsufficientDataError,
)
from .features import box_blur, describe_brief, detect_fast, grayscale, match_bruteforce

__all__ = ["RansacConfig", "FeatureConfig", "solve_homography_dlt",
           "estimate_homography_ransac", "symmetric_transfer_error", "warp",
           "warp_nearest_labels", "extract_features", "align_pair"]


@dataclass(frozen=True)
class RansacConfig:
    iterations: int = 1000
    inlier_threshold: float = 2.0  # px, symmetric transfer error
    min_inliers: int = 12
    seed: int = 0
    confidence: float = 0.999  # early-exit target

    def __post_init__(self):
        if self.iterations < 1:
            raise DegenerateInputError("iterations must be >= 1")
        if self.inlier_threshold <= 0:
            raise DegenerateInputError("inlier_threshold must be > 0")


@dataclass(frozen=True)
class FeatureConfig:
    fast_threshold: int = 20
    max_keypoints: int = 500
    max_match_distance: int = 64


def _normalization(pts: np.ndarray) -> np.ndarray:
    """Hartley normalization: centroid to origin, mean distance to sqrt(2)."""
    centroid = pts.mean(axis=0)
    d = np.sqrt(((pts - centroid) ** 2).sum(axis=1)).mean()
    if d < 1e-12:
        raise DegenerateInputError("all points coincide")
    s = np.sqrt(2.0) / d
    return np.array([
        [s, 0.0, -s * centroid[0]],
        [0.0, s, -s * centroid[1]],
        [0.0, 0.0, 1.0],
    ])


def solve_homography_dlt(src: np.ndarray, dst: np.ndarray) -> Homography:
    """Least-squares DLT with Hartley normalization.

    src, dst: (n, 2) corresponding points, n >= 4.
    """
    src = np.asarray(src, dtype=np.float64)
    dst = np.asarray(dst, dtype=np.float64)
    if src.ndim != 2 or src.shape[1] != 2 or src.shape != dst.shape:
        raise InsufficientDataError("need matching (n, 2) point arrays")
    n = src.shape[0]
    if n < 4:
        raise InsufficientDataError(f"need >= 4 correspondences, got {n}")
    t_src = _normalization(src)
    t_dst = _normalization(dst)
    sh = np.hstack([src, np.ones((n, 1))]) @ t_src.T
    dh = np.hstack([dst, np.ones((n, 1))]) @ t_dst.T
    x, y = sh[:, 0], sh[:, 1]
    u, v = dh[:, 0], dh[:, 1]
    zeros = np.zeros(n)
    ones = np.ones(n)
    rows_u = np.stack([-x, -y, -ones, zeros, zeros, zeros, u * x, u * y, u], axis=1)
    rows_v = np.stack([zeros, zeros, zeros, -x, -y, -ones, v * x, v * y, v], axis=1)
    a = np.vstack([rows_u, rows_v])
    _, s, vt = np.linalg.svd(a)
    if s[-2] < 1e-9 * max(s[0], 1.0):
        raise DegenerateInputError("correspondences are degenerate (rank-deficient system)")
    hn = vt[-1].reshape(3, 3)
    h = np.linalg.inv(t_dst) @ hn @ t_src
    try:
        return Homography(h)
    except DegenerateInputError:
        raise DegenerateInputError("DLT produced a non-invertible homography")


def symmetric_transfer_error(h: Homography, src: np.ndarray, dst: np.ndarray) -> np.ndarray:
    """Mean of forward and backward reprojection distances, per correspondence."""
    fwd = np.sqrt(((h.apply(src) - dst) ** 2).sum(axis=1))
    bwd = np.sqrt(((h.inverse().apply(dst) - src) ** 2).sum(axis=1))
    return (fwd + bwd) / 2.0


def estimate_homography_ransac(src: np.ndarray, dst: np.ndarray,
                               cfg: RansacConfig = RansacConfig()
                               ) -> tuple[Homography, np.ndarray]:
    """Classic RANSAC over 4-point samples, refit on the best inlier set.

    Deterministic for a fixed cfg.seed. Raises AlignmentFailedError when the
    best model has fewer than cfg.min_inliers supporters.
    """
    src = np.asarray(src, dtype=np.float64)
    dst = np.asarray(dst, dtype=np.float64)
    n = src.shape[0]
    if n < 4:
        raise InsufficientDataError(f"need >= 4 matches, got {n}")
    rng = np.random.default_rng(cfg.seed)
    best_inliers: np.ndarray | None = None
    best_count = 0
    max_iters = cfg.iterations
    it = 0
    while it < max_iters:
        it += 1
        idx = rng.choice(n, size=4, replace=False)
        try:
            h = solve_homography_dlt(src[idx], dst[idx])
        except (DegenerateInputError, InsufficientDataError):
            continue
        err = symmetric_transfer_error(h, src, dst)
        inliers = err <= cfg.inlier_threshold
        count = int(inliers.sum())
        if count > best_count:
            best_count = count
            best_inliers = inliers
            # adaptive iteration bound at the configured confidence
            w = count / n
            if w > 0:
                denom = np.log1p(-min(w ** 4, 1 - 1e-12))
                needed = int(np.ceil(np.log(1 - cfg.confidence) / denom)) if denom < 0 else max_iters
                max_iters = min(max_iters, max(it, needed))
    if best_inliers is None or best_count < cfg.min_inliers:
        raise AlignmentFailedError(
            f"best model has {best_count} inliers, need {cfg.min_inliers}"
        )
    h = solve_homography_dlt(src[best_inliers], dst[best_inliers])
    err = symmetric_transfer_error(h, src, dst)
    final_inliers = err <= cfg.inlier_threshold
    return h, final_inliers


def warp(img: Image, h: Homography, out_w: int, out_h: int) -> tuple[Image, np.ndarray]:
    """Inverse-mapping warp with bilinear sampling.

    Returns (warped image, validity mask); out-of-bounds samples are 0 and
    flagged invalid.
    """
    hinv = h.inverse().h
    xs, ys = np.meshgrid(np.arange(out_w, dtype=np.float64),
                         np.arange(out_h, dtype=np.float64))
    denom = hinv[2, 0] * xs + hinv[2, 1] * ys + hinv[2, 2]
    with np.errstate(divide="ignore", invalid="ignore"):
        sx = (hinv[0, 0] * xs + hinv[0, 1] * ys + hinv[0, 2]) / denom
        sy = (hinv[1, 0] * xs + hinv[1, 1] * ys + hinv[1, 2]) / denom
    w, hh = img.width, img.height
    valid = (np.abs(denom) > 1e-12) & np.isfinite(sx) & np.isfinite(sy)
    valid &= (sx >= 0) & (sx <= w - 1) & (sy >= 0) & (sy <= hh - 1)
    sx = np.where(valid, sx, 0.0)
    sy = np.where(valid, sy, 0.0)
    x0 = np.floor(sx).astype(int)
    y0 = np.floor(sy).astype(int)
    x1 = np.minimum(x0 + 1, w - 1)
    y1 = np.minimum(y0 + 1, hh - 1)
    fx = sx - x0
    fy = sy - y0
    src = img.pixels.astype(np.float64)
    if src.ndim == 2:
        src = src[:, :, None]
    fx = fx[:, :, None]
    fy = fy[:, :, None]
    out = (src[y0, x0] * (1 - fx) * (1 - fy) + src[y0, x1] * fx * (1 - fy)
           + src[y1, x0] * (1 - fx) * fy + src[y1, x1] * fx * fy)
    out[~valid] = 0.0
    if img.channels == 1:
        out = out[:, :, 0]
    return Image(quantize_u8(out)), valid


def warp_nearest_labels(labels: np.ndarray, h: Homography, out_w: int, out_h: int) -> np.ndarray:
    """Nearest-neighbor label warp; out-of-bounds maps to background 0."""
    hinv = h.inverse().h
    xs, ys = np.meshgrid(np.arange(out_w, dtype=np.float64),
                         np.arange(out_h, dtype=np.float64))
    denom = hinv[2, 0] * xs + hinv[2, 1] * ys + hinv[2, 2]
    with np.errstate(divide="ignore", invalid="ignore"):
        sx = np.rint((hinv[0, 0] * xs + hinv[0, 1] * ys + hinv[0, 2]) / denom).astype(int)
        sy = np.rint((hinv[1, 0] * xs + hinv[1, 1] * ys + hinv[1, 2]) / denom).astype(int)
    hh, w = labels.shape
    valid = (np.abs(denom) > 1e-12) & (sx >= 0) & (sx < w) & (sy >= 0) & (sy < hh)
    out = np.zeros((out_h, out_w), dtype=labels.dtype)
    out[valid] = labels[sy[valid], sx[valid]]
    return out


def extract_features(frame: Frame, fcfg: FeatureConfig = FeatureConfig()):
    """Grayscale, smooth, detect, describe; returns (keypoints, descriptors)."""
    gray = grayscale(frame.image)
    smooth = box_blur(gray, 5)
    kps = detect_fast(gray, threshold=fcfg.fast_threshold, max_keypoints=fcfg.max_keypoints)
    out_kps, descs = [], []
    for kp in kps:
        d = describe_brief(smooth, kp)
        if d is not None:
            out_kps.append(kp)
            descs.append(d)
    return out_kps, descs


def align_pair(pair: FramePair, fcfg: FeatureConfig = FeatureConfig(),
               rcfg: RansacConfig = RansacConfig()) -> FramePair:
    """Three-step alignment: extract features, match, estimate + warp UV->regular.

    On failure falls back to identity (static-camera assumption) and flags
    the pair instead of raising.
    """
    if not pair.regular.image.same_shape(pair.uv.image):
        raise DimensionMismatchError("pair frames must share dimensions")
    w, h = pair.regular.image.width, pair.regular.image.height
    try:
        kps_uv, d_uv = extract_features(pair.uv, fcfg)
        kps_reg, d_reg = extract_features(pair.regular, fcfg)
        matches = match_bruteforce(d_uv, d_reg, max_distance=fcfg.max_match_distance)
        if len(matches) < 4:
            raise AlignmentFailedError(f"only {len(matches)} matches")
        src = np.array([[kps_uv[m.index_a].x, kps_uv[m.index_a].y] for m in matches])
        dst = np.array([[kps_reg[m.index_b].x, kps_reg[m.index_b].y] for m in matches])
        hom, _ = estimate_homography_ransac(src, dst, rcfg)
    except (AlignmentFailedError, InsufficientDataError, DegenerateInputError):
        return pair.with_alignment(Homography.identity(), failed=True)
    warped, valid = warp(pair.uv.image, hom, w, h)
    uv_frame = Frame(image=warped, kind=pair.uv.kind, seq=pair.uv.seq,
                     timestamp_ms=pair.uv.timestamp_ms)
    return pair.with_alignment(hom, uv=uv_frame, validity=valid)
