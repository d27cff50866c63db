"""Mask extraction: thresholding, multi-color classification, cleanup.

Dark mode classifies the UV frame directly; ambient mode classifies the
absolute difference between the regular frame and the (aligned) UV frame.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .core import ClassPalette, Frame, FramePair, Homography, Image, LabelMask, LightKind, absdiff
from .errors import InvalidArgumentError, UvmarkError
from .registration import FeatureConfig, RansacConfig, align_pair

__all__ = ["classify_pixel", "classify_image", "dark_mode_mask", "ambient_mode_mask",
           "postprocess", "AnnotatedSample", "annotate_pairs"]


def classify_image(img: Image, palette: ClassPalette) -> LabelMask:
    """Assign each pixel the nearest eligible class by normalized chroma.

    A class is eligible when the pixel's max channel reaches its threshold;
    among eligible classes the one with the smallest Euclidean distance in
    max-normalized RGB wins, ties going to the lowest label id.
    """
    if not palette.classes:
        raise InvalidArgumentError("palette has no classes")
    if img.channels != 3:
        raise InvalidArgumentError("classification expects a 3-channel image")
    px = img.pixels.astype(np.float64)
    maxc = px.max(axis=2)
    safe = np.maximum(maxc, 1.0)
    chroma = px / safe[:, :, None]
    best_d2 = np.full(maxc.shape, np.inf)
    labels = np.zeros(maxc.shape, dtype=np.uint8)
    for cls in sorted(palette.classes, key=lambda c: c.label):
        color = np.array(cls.color, dtype=np.float64)
        cmax = max(color.max(), 1.0)
        ref = color / cmax
        d2 = ((chroma - ref[None, None, :]) ** 2).sum(axis=2)
        eligible = maxc >= cls.threshold
        take = eligible & (d2 < best_d2)
        labels[take] = cls.label
        best_d2[take] = d2[take]
    return LabelMask(labels)


def classify_pixel(rgb: tuple[int, int, int], palette: ClassPalette) -> int:
    """Single-pixel form of classify_image (same decision rule)."""
    img = Image(np.array([[rgb]], dtype=np.uint8))
    return int(classify_image(img, palette).labels[0, 0])


def dark_mode_mask(uv: Frame, palette: ClassPalette) -> LabelMask:
    """Dark-room annotation: only painted regions emit, threshold the UV frame."""
    if uv.kind is not LightKind.UV:
        raise InvalidArgumentError("dark_mode_mask expects a UV frame")
    return classify_image(uv.image, palette)


def ambient_mode_mask(pair: FramePair, palette: ClassPalette) -> LabelMask:
    """Ambient annotation: classify the regular/UV difference on an aligned pair."""
    if pair.alignment is None:
        raise InvalidArgumentError("ambient_mode_mask requires an aligned pair "
                                   "(identity alignment allowed)")
    if not pair.regular.image.same_shape(pair.uv.image):
        raise InvalidArgumentError("pair frames must share dimensions")
    diff = absdiff(pair.regular.image, pair.uv.image)
    if pair.validity is not None:
        px = diff.pixels.copy()
        px[~pair.validity] = 0
        diff = Image(px)
    return classify_image(diff, palette)


def postprocess(mask: LabelMask, min_area: int) -> LabelMask:
    """Drop 4-connected components smaller than min_area, per label."""
    if min_area < 0:
        raise InvalidArgumentError("min_area must be >= 0")
    if min_area == 0:
        return mask
    out = mask.labels.copy()
    for label in np.unique(mask.labels):
        if label == 0:
            continue
        comp, n = ndimage.label(mask.labels == label)  # default structure = 4-connectivity
        if n == 0:
            continue
        sizes = np.bincount(comp.ravel())
        small = np.nonzero(sizes < min_area)[0]
        small = small[small != 0]
        if small.size:
            out[np.isin(comp, small)] = 0
    return LabelMask(out)


@dataclass(frozen=True)
class AnnotatedSample:
    pair_index: int
    regular: Frame | None
    mask: LabelMask | None
    alignment: Homography | None
    alignment_failed: bool
    error: str | None = None


def _annotate_one(i: int, pair: FramePair, palette: ClassPalette, mode: str,
                  align: bool, fcfg: FeatureConfig, rcfg: RansacConfig) -> AnnotatedSample:
    try:
        if mode == "dark":
            # alignment is skipped entirely: the UV frame alone carries the mask
            mask = dark_mode_mask(pair.uv, palette)
            aligned = pair
        else:
            aligned = align_pair(pair, fcfg, rcfg) if align else \
                pair.with_alignment(Homography.identity())
            mask = ambient_mode_mask(aligned, palette)
        mask = postprocess(mask, palette.min_area)
        return AnnotatedSample(pair_index=i, regular=pair.regular, mask=mask,
                               alignment=aligned.alignment,
                               alignment_failed=aligned.alignment_failed)
    except UvmarkError as e:
        return AnnotatedSample(pair_index=i, regular=pair.regular, mask=None,
                               alignment=None, alignment_failed=False, error=str(e))


def annotate_pairs(pairs: list[FramePair], palette: ClassPalette, mode: str,
                   align: bool = True, fcfg: FeatureConfig = FeatureConfig(),
                   rcfg: RansacConfig = RansacConfig(), jobs: int = 1
                   ) -> list[AnnotatedSample]:
    """Annotate every pair; per-pair errors are recorded, never raised.

    Results are returned in pair order regardless of worker completion order.
    """
    if mode not in ("dark", "ambient"):
        raise InvalidArgumentError(f"unknown mode {mode!r}")
    if jobs <= 1 or len(pairs) <= 1:
        return [_annotate_one(i, p, palette, mode, align, fcfg, rcfg)
                for i, p in enumerate(pairs)]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(_annotate_one, i, p, palette, mode, align, fcfg, rcfg)
                   for i, p in enumerate(pairs)]
        return [f.result() for f in futures]
