"""Keypoint detection, binary description, and brute-force matching.

Single-scale oriented FAST corners with a rotated binary-test descriptor:
consecutive captures at the 15 Hz pair rate have near-unit scale change, so
no pyramid is built.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._brief_pattern import PATTERN
from .core import Image, quantize_u8
from .errors import InvalidArgumentError

__all__ = ["Keypoint", "Descriptor", "Match", "grayscale", "box_blur",
           "detect_fast", "describe_brief", "match_bruteforce", "hamming"]

# Margin needed by the orientation patch (radius 15) and the rotated 31x31
# descriptor patch; detection keeps keypoints at least this far from edges.
PATCH_MARGIN = 16
ORIENTATION_RADIUS = 15

# 16-pixel Bresenham circle of radius 3, clockwise from 12 o'clock.
_CIRCLE = np.array([
    (0, -3), (1, -3), (2, -2), (3, -1), (3, 0), (3, 1), (2, 2), (1, 3),
    (0, 3), (-1, 3), (-2, 2), (-3, 1), (-3, 0), (-3, -1), (-2, -2), (-1, -3),
], dtype=np.int32)

_POPCOUNT = np.array([bin(i).count("1") for i in range(256)], dtype=np.uint16)


@dataclass(frozen=True)
class Keypoint:
    x: float
    y: float
    score: float
    angle: float  # radians, intensity-centroid orientation


@dataclass(frozen=True)
class Descriptor:
    bits: np.ndarray  # 32 packed uint8 = 256 bits

    def __post_init__(self):
        b = np.ascontiguousarray(self.bits, dtype=np.uint8)
        if b.shape != (32,):
            raise InvalidArgumentError("descriptor must pack 256 bits into 32 bytes")
        b.setflags(write=False)
        object.__setattr__(self, "bits", b)


@dataclass(frozen=True)
class Match:
    index_a: int
    index_b: int
    distance: int


def grayscale(img: Image) -> Image:
    """Rec.601 luma: round(0.299 R + 0.587 G + 0.114 B)."""
    if img.channels != 3:
        raise InvalidArgumentError("grayscale expects a 3-channel image")
    px = img.pixels.astype(np.float64)
    luma = 0.299 * px[:, :, 0] + 0.587 * px[:, :, 1] + 0.114 * px[:, :, 2]
    return Image(quantize_u8(luma))


def box_blur(img: Image, size: int = 5) -> Image:
    """Integer-exact box blur with clamp-to-edge padding."""
    if img.channels != 1:
        raise InvalidArgumentError("box_blur expects a grayscale image")
    if size < 1 or size % 2 == 0:
        raise InvalidArgumentError("kernel size must be odd and >= 1")
    r = size // 2
    padded = np.pad(img.pixels.astype(np.int64), r, mode="edge")
    c = np.cumsum(np.cumsum(padded, axis=0), axis=1)
    c = np.pad(c, ((1, 0), (1, 0)))
    h, w = img.pixels.shape
    s = (c[size:size + h, size:size + w] - c[size:size + h, :w]
         - c[:h, size:size + w] + c[:h, :w])
    return Image(quantize_u8(s / (size * size)))


def _orientation(gray: np.ndarray, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Intensity-centroid angle over a radius-15 disc at each (x, y)."""
    r = ORIENTATION_RADIUS
    dy, dx = np.mgrid[-r:r + 1, -r:r + 1]
    disc = dx * dx + dy * dy <= r * r
    ox = dx[disc]
    oy = dy[disc]
    sample_y = ys[:, None] + oy[None, :]
    sample_x = xs[:, None] + ox[None, :]
    vals = gray[sample_y, sample_x].astype(np.float64)
    m10 = vals @ ox.astype(np.float64)
    m01 = vals @ oy.astype(np.float64)
    return np.arctan2(m01, m10)


def detect_fast(img: Image, threshold: int = 20, max_keypoints: int = 500) -> list[Keypoint]:
    """FAST-9 corners with 3x3 non-maximum suppression and orientation.

    Score is the sum of |circle - center| over the circle pixels passing the
    brighter/darker test. Keypoints keep a PATCH_MARGIN border so descriptors
    are always computable.
    """
    if img.channels != 1:
        raise InvalidArgumentError("detect_fast expects a grayscale image")
    if img.width < 32 or img.height < 32:
        raise InvalidArgumentError("image must be at least 32x32")
    gray = img.pixels.astype(np.int16)
    h, w = gray.shape
    m = PATCH_MARGIN
    if h - 2 * m <= 0 or w - 2 * m <= 0:
        return []
    center = gray[m:h - m, m:w - m]
    ring = np.stack([
        gray[m + dy:h - m + dy, m + dx:w - m + dx] for dx, dy in _CIRCLE
    ])  # (16, H, W)
    diff = ring - center[None, :, :]
    bright = diff > threshold
    dark = diff < -threshold
    bright2 = np.concatenate([bright, bright[:8]], axis=0)
    dark2 = np.concatenate([dark, dark[:8]], axis=0)
    is_corner = np.zeros(center.shape, dtype=bool)
    for i in range(16):
        is_corner |= bright2[i:i + 9].all(axis=0)
        is_corner |= dark2[i:i + 9].all(axis=0)
    if not is_corner.any():
        return []
    absdiff = np.abs(diff)
    score = np.where(bright | dark, absdiff, 0).sum(axis=0).astype(np.float64)
    score[~is_corner] = 0.0

    # 3x3 NMS on the score map (non-corner pixels hold score 0)
    padded = np.pad(score, 1, constant_values=-1.0)
    neigh = np.stack([
        padded[1 + dy:1 + dy + score.shape[0], 1 + dx:1 + dx + score.shape[1]]
        for dy in (-1, 0, 1) for dx in (-1, 0, 1) if not (dx == 0 and dy == 0)
    ])
    keep = is_corner & (score >= neigh.max(axis=0))
    ys, xs = np.nonzero(keep)
    sc = score[ys, xs]
    order = np.lexsort((xs, ys, -sc))[:max_keypoints]
    ys, xs, sc = ys[order], xs[order], sc[order]
    dx = _parabolic_offset(score, ys, xs, axis=1)
    dy = _parabolic_offset(score, ys, xs, axis=0)
    angles = _orientation(gray, xs + m, ys + m)
    return [
        Keypoint(x=float(x + m + ox), y=float(y + m + oy), score=float(s), angle=float(a))
        for x, y, ox, oy, s, a in zip(xs, ys, dx, dy, sc, angles)
    ]


def _parabolic_offset(score: np.ndarray, ys: np.ndarray, xs: np.ndarray,
                      axis: int) -> np.ndarray:
    """Subpixel peak offset from a 3-point parabola fit along one axis."""
    h, w = score.shape
    if axis == 1:
        lo = score[ys, np.maximum(xs - 1, 0)]
        hi = score[ys, np.minimum(xs + 1, w - 1)]
    else:
        lo = score[np.maximum(ys - 1, 0), xs]
        hi = score[np.minimum(ys + 1, h - 1), xs]
    mid = score[ys, xs]
    denom = lo - 2 * mid + hi
    with np.errstate(divide="ignore", invalid="ignore"):
        off = 0.5 * (lo - hi) / denom
    off = np.where(np.abs(denom) > 1e-12, off, 0.0)
    # clip just under half a pixel so rounding recovers the detection cell
    return np.clip(off, -0.49, 0.49)


def describe_brief(img: Image, kp: Keypoint) -> Descriptor | None:
    """Rotated 256-bit binary descriptor; expects a pre-smoothed grayscale image.

    Returns None (skip) when the keypoint is too close to the border.
    """
    if img.channels != 1:
        raise InvalidArgumentError("describe_brief expects a grayscale image")
    gray = img.pixels
    h, w = gray.shape
    cx, cy = int(round(kp.x)), int(round(kp.y))
    if not (PATCH_MARGIN <= cx < w - PATCH_MARGIN and PATCH_MARGIN <= cy < h - PATCH_MARGIN):
        return None
    cos_a, sin_a = np.cos(kp.angle), np.sin(kp.angle)
    pts = PATTERN.astype(np.float64).reshape(256, 2, 2)  # (test, endpoint, xy)
    rx = np.rint(pts[:, :, 0] * cos_a - pts[:, :, 1] * sin_a).astype(np.int64)
    ry = np.rint(pts[:, :, 0] * sin_a + pts[:, :, 1] * cos_a).astype(np.int64)
    va = gray[cy + ry[:, 0], cx + rx[:, 0]]
    vb = gray[cy + ry[:, 1], cx + rx[:, 1]]
    bits = (va < vb).astype(np.uint8)
    return Descriptor(np.packbits(bits))


def hamming(a: Descriptor, b: Descriptor) -> int:
    return int(_POPCOUNT[a.bits ^ b.bits].sum())


def _distance_matrix(a: list[Descriptor], b: list[Descriptor]) -> np.ndarray:
    da = np.stack([d.bits for d in a])
    db = np.stack([d.bits for d in b])
    xor = da[:, None, :] ^ db[None, :, :]
    return _POPCOUNT[xor].sum(axis=2).astype(np.int32)


def match_bruteforce(a: list[Descriptor], b: list[Descriptor],
                     max_distance: int = 64) -> list[Match]:
    """Mutual-nearest (cross-checked) Hamming matching with a distance cutoff."""
    if not a or not b:
        return []
    dist = _distance_matrix(a, b)
    best_b = dist.argmin(axis=1)
    best_a = dist.argmin(axis=0)
    out = []
    for i, j in enumerate(best_b):
        if best_a[j] == i and dist[i, j] <= max_distance:
            out.append(Match(index_a=i, index_b=int(j), distance=int(dist[i, j])))
    return out
