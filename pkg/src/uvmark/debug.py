"""Keypoint / match visualization dumps for `align --debug-dir`."""

from __future__ import annotations

import os

import numpy as np

from .core import FramePair, Image
from .features import Keypoint, Match
from .pngio import save_image

__all__ = ["draw_keypoints", "draw_matches", "dump_pair_debug"]

_KP_COLOR = np.array([0, 255, 0], dtype=np.uint8)
_LINE_COLOR = np.array([255, 128, 0], dtype=np.uint8)


def draw_keypoints(img: Image, kps: list[Keypoint], radius: int = 2) -> Image:
    out = np.ascontiguousarray(img.pixels) if img.channels == 3 else \
        np.repeat(img.pixels[:, :, None], 3, axis=2)
    out = out.copy()
    h, w = out.shape[:2]
    for kp in kps:
        x, y = int(round(kp.x)), int(round(kp.y))
        out[max(y - radius, 0):y + radius + 1, x] = _KP_COLOR
        out[y, max(x - radius, 0):x + radius + 1] = _KP_COLOR
    return Image(out)


def draw_matches(a: Image, kps_a: list[Keypoint], b: Image, kps_b: list[Keypoint],
                 matches: list[Match]) -> Image:
    left = draw_keypoints(a, kps_a).pixels
    right = draw_keypoints(b, kps_b).pixels
    h = max(left.shape[0], right.shape[0])
    canvas = np.zeros((h, left.shape[1] + right.shape[1], 3), dtype=np.uint8)
    canvas[:left.shape[0], :left.shape[1]] = left
    canvas[:right.shape[0], left.shape[1]:] = right
    for m in matches:
        ka, kb = kps_a[m.index_a], kps_b[m.index_b]
        x0, y0 = ka.x, ka.y
        x1, y1 = kb.x + left.shape[1], kb.y
        n = int(max(abs(x1 - x0), abs(y1 - y0))) + 1
        xs = np.rint(np.linspace(x0, x1, n)).astype(int)
        ys = np.rint(np.linspace(y0, y1, n)).astype(int)
        canvas[ys, xs] = _LINE_COLOR
    return Image(canvas)


def dump_pair_debug(pair_index: int, pair: FramePair, kps_uv, kps_reg, matches,
                    debug_dir: str | os.PathLike) -> None:
    os.makedirs(debug_dir, exist_ok=True)
    save_image(draw_keypoints(pair.uv.image, kps_uv),
               os.path.join(debug_dir, f"pair_{pair_index:04d}_uv_keypoints.png"))
    save_image(draw_keypoints(pair.regular.image, kps_reg),
               os.path.join(debug_dir, f"pair_{pair_index:04d}_regular_keypoints.png"))
    save_image(draw_matches(pair.uv.image, kps_uv, pair.regular.image, kps_reg, matches),
               os.path.join(debug_dir, f"pair_{pair_index:04d}_matches.png"))
