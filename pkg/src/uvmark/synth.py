"""Synthetic capture-stream generator with planted ground truth.

Renders the two lighting regimes over moving blobs and a moving camera, so
every pipeline claim can be checked against known masks and homographies.
Emission is additive and clamped: paint glows on top of whatever ambient
light shows.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field

import numpy as np

from .core import Frame, Homography, Image, LabelMask, LightKind, quantize_u8
from .errors import InvalidArgumentError
from .ingest import ManifestEntry, StreamManifest, write_manifest
from .pngio import save_image, save_mask
from .registration import warp, warp_nearest_labels

__all__ = ["BlobSpec", "CameraMotionSpec", "SceneSpec", "generate_stream", "write_stream"]


@dataclass(frozen=True)
class BlobSpec:
    label: int
    color: tuple[int, int, int]  # emission RGB under UV
    shape: str  # "ellipse" | "polygon"
    params: tuple[float, ...]  # ellipse: (cx, cy, rx, ry); polygon: flat x,y list
    velocity: tuple[float, float] = (0.0, 0.0)  # px per capture
    reflectance: int = 180  # body brightness under ambient light


@dataclass(frozen=True)
class CameraMotionSpec:
    max_translation: float = 0.0  # px per frame
    max_rotation: float = 0.0  # radians per frame


@dataclass(frozen=True)
class SceneSpec:
    width: int
    height: int
    background: str = "flat"  # "flat" | "checkerboard" | "random"
    background_param: int = 16  # checker square / random block size
    blobs: tuple[BlobSpec, ...] = ()
    camera: CameraMotionSpec = field(default_factory=CameraMotionSpec)
    uv_emission_gain: float = 1.0
    ambient_level: int = 0  # 0 = dark room
    noise_sigma: float = 0.0
    seed: int = 0
    frame_rate_hz: float = 30.0

    def __post_init__(self):
        if self.noise_sigma < 0:
            raise InvalidArgumentError("noise_sigma must be >= 0")
        if not (0.0 <= self.uv_emission_gain <= 1.0):
            raise InvalidArgumentError("uv_emission_gain must be in [0, 1]")
        if not (0 <= self.ambient_level <= 255):
            raise InvalidArgumentError("ambient_level must be 0-255")

    @property
    def mode(self) -> str:
        return "dark" if self.ambient_level == 0 else "ambient"

    @classmethod
    def from_dict(cls, d: dict) -> "SceneSpec":
        blobs = tuple(
            BlobSpec(label=int(b["label"]), color=tuple(int(v) for v in b["color"]),
                     shape=b["shape"], params=tuple(float(v) for v in b["params"]),
                     velocity=tuple(float(v) for v in b.get("velocity", (0.0, 0.0))),
                     reflectance=int(b.get("reflectance", 180)))
            for b in d.get("blobs", ())
        )
        cam = d.get("camera", {})
        return cls(
            width=int(d["width"]), height=int(d["height"]),
            background=d.get("background", "flat"),
            background_param=int(d.get("background_param", 16)),
            blobs=blobs,
            camera=CameraMotionSpec(
                max_translation=float(cam.get("max_translation", 0.0)),
                max_rotation=float(cam.get("max_rotation", 0.0))),
            uv_emission_gain=float(d.get("uv_emission_gain", 1.0)),
            ambient_level=int(d.get("ambient_level", 0)),
            noise_sigma=float(d.get("noise_sigma", 0.0)),
            seed=int(d.get("seed", 0)),
            frame_rate_hz=float(d.get("frame_rate_hz", 30.0)),
        )


# World canvas padding so a moving camera never looks past the scene edge.
WORLD_MARGIN = 40


def _background(spec: SceneSpec, rng: np.random.Generator) -> np.ndarray:
    h, w = spec.height + 2 * WORLD_MARGIN, spec.width + 2 * WORLD_MARGIN
    if spec.background == "flat":
        return np.full((h, w, 3), 255.0)
    if spec.background == "checkerboard":
        s = spec.background_param
        yy, xx = np.mgrid[0:h, 0:w]
        checker = ((yy // s + xx // s) % 2).astype(np.float64)
        return (64.0 + 191.0 * checker)[:, :, None].repeat(3, axis=2)
    if spec.background == "random":
        s = spec.background_param
        bh, bw = -(-h // s), -(-w // s)
        blocks = rng.integers(32, 256, size=(bh, bw, 3)).astype(np.float64)
        return blocks.repeat(s, axis=0).repeat(s, axis=1)[:h, :w]
    raise InvalidArgumentError(f"unknown background {spec.background!r}")


def _blob_mask(blob: BlobSpec, t: int, w: int, h: int,
               offset: float = 0.0) -> np.ndarray:
    """Rasterize one blob at capture time t; offset shifts into world coords."""
    dx = blob.velocity[0] * t + offset
    dy = blob.velocity[1] * t + offset
    yy, xx = np.mgrid[0:h, 0:w]
    if blob.shape == "ellipse":
        cx, cy, rx, ry = blob.params
        return (((xx - cx - dx) / rx) ** 2 + ((yy - cy - dy) / ry) ** 2) <= 1.0
    if blob.shape == "polygon":
        pts = np.array(blob.params, dtype=np.float64).reshape(-1, 2)
        pts = pts + np.array([dx, dy])
        # even-odd crossing test, vectorized over the pixel grid
        inside = np.zeros((h, w), dtype=bool)
        n = len(pts)
        px = xx + 0.0
        py = yy + 0.0
        for i in range(n):
            x1, y1 = pts[i]
            x2, y2 = pts[(i + 1) % n]
            cond = (y1 <= py) != (y2 <= py)
            with np.errstate(divide="ignore", invalid="ignore"):
                xint = x1 + (py - y1) * (x2 - x1) / (y2 - y1)
            inside ^= cond & (px < xint)
        return inside
    raise InvalidArgumentError(f"unknown blob shape {blob.shape!r}")


def _world_labels(spec: SceneSpec, t: int) -> np.ndarray:
    """Planted class labels at capture time t on the padded world canvas."""
    m = WORLD_MARGIN
    labels = np.zeros((spec.height + 2 * m, spec.width + 2 * m), dtype=np.uint8)
    for blob in spec.blobs:
        labels[_blob_mask(blob, t, spec.width + 2 * m, spec.height + 2 * m,
                          offset=m)] = blob.label
    return labels


def _camera_walk(spec: SceneSpec, n_frames: int, rng: np.random.Generator) -> list[Homography]:
    """Cumulative random-walk homographies about the image center."""
    homs = [Homography.identity()]
    cx, cy = (spec.width - 1) / 2.0, (spec.height - 1) / 2.0
    h = np.eye(3)
    for _ in range(1, n_frames):
        tx, ty = rng.uniform(-spec.camera.max_translation, spec.camera.max_translation, 2)
        theta = rng.uniform(-spec.camera.max_rotation, spec.camera.max_rotation)
        c, s = math.cos(theta), math.sin(theta)
        step = np.array([
            [c, -s, tx + cx - c * cx + s * cy],
            [s, c, ty + cy - s * cx - c * cy],
            [0.0, 0.0, 1.0],
        ])
        h = step @ h
        homs.append(Homography(h))
    return homs


def generate_stream(spec: SceneSpec, n_frames: int
                    ) -> tuple[list[Frame], list[LabelMask], list[Homography]]:
    """Render an alternating regular/UV stream.

    Returns (frames, per-pair ground-truth masks in regular-frame coordinates,
    per-frame true camera homographies). Deterministic for a fixed spec.
    """
    if n_frames < 2:
        raise InvalidArgumentError("need at least 2 frames")
    rng = np.random.default_rng(spec.seed)
    bg = _background(spec, rng)
    cameras = _camera_walk(spec, n_frames, rng)
    ambient = spec.ambient_level / 255.0
    period_ms = 1000.0 / spec.frame_rate_hz
    m = WORLD_MARGIN
    # world -> view: shift the padded canvas into frame coords, then apply
    # the camera walk (expressed in frame coords)
    shift = np.array([[1.0, 0.0, -m], [0.0, 1.0, -m], [0.0, 0.0, 1.0]])

    def render(canvas: np.ndarray, cam: Homography) -> np.ndarray:
        if cam.is_identity():
            return canvas[m:m + spec.height, m:m + spec.width].astype(np.float64)
        h_render = Homography(cam.h @ shift)
        img, _ = warp(Image(quantize_u8(canvas)), h_render, spec.width, spec.height)
        return img.pixels.astype(np.float64)

    frames = []
    world_label_cache = {}
    for k in range(n_frames):
        labels = _world_labels(spec, k)
        world_label_cache[k] = labels
        scene = bg.copy()
        for blob in spec.blobs:
            scene[labels == blob.label] = float(blob.reflectance)
        world = scene * ambient
        if k % 2 == 1:  # UV capture
            for blob in spec.blobs:
                sel = labels == blob.label
                world[sel] += np.array(blob.color, dtype=np.float64) * spec.uv_emission_gain
        world = np.clip(world, 0, 255)
        rendered = render(world, cameras[k])
        if spec.noise_sigma > 0:
            rendered = rendered + rng.normal(0.0, spec.noise_sigma, rendered.shape)
        frames.append(Frame(
            image=Image(quantize_u8(rendered)),
            kind=LightKind.REGULAR if k % 2 == 0 else LightKind.UV,
            seq=k,
            timestamp_ms=int(round(k * period_ms)),
        ))

    # ground truth per pair: painted regions at UV time, seen from the
    # regular frame's camera (object-motion gap is left in, camera is not)
    gt_masks = []
    for i in range(n_frames // 2):
        labels_uv_time = world_label_cache[2 * i + 1]
        cam_reg = cameras[2 * i]
        if cam_reg.is_identity():
            gt = labels_uv_time[m:m + spec.height, m:m + spec.width]
        else:
            gt = warp_nearest_labels(labels_uv_time,
                                     Homography(cam_reg.h @ shift),
                                     spec.width, spec.height)
        gt_masks.append(LabelMask(np.ascontiguousarray(gt)))
    return frames, gt_masks, cameras


def write_stream(spec: SceneSpec, n_frames: int, out_dir: str | os.PathLike
                 ) -> str:
    """Generate and persist a stream in the ingest manifest format.

    Writes frame PNGs, manifest.json, and truth sidecars (masks + camera
    homographies). Returns the manifest path.
    """
    frames, gt_masks, cameras = generate_stream(spec, n_frames)
    out_dir = os.fspath(out_dir)
    truth_dir = os.path.join(out_dir, "truth")
    os.makedirs(truth_dir, exist_ok=True)
    entries = []
    for fr in frames:
        name = f"frame_{fr.seq:04d}.png"
        save_image(fr.image, os.path.join(out_dir, name))
        entries.append(ManifestEntry(path=name, kind=fr.kind, seq=fr.seq,
                                     t_ms=fr.timestamp_ms))
    manifest = StreamManifest(mode=spec.mode, width=spec.width, height=spec.height,
                              entries=tuple(entries))
    manifest_path = os.path.join(out_dir, "manifest.json")
    write_manifest(manifest, manifest_path)
    for i, gt in enumerate(gt_masks):
        save_mask(gt, os.path.join(truth_dir, f"mask_{i:04d}.png"))
    with open(os.path.join(truth_dir, "homographies.json"), "w") as f:
        json.dump({"frames": [cam.h.reshape(-1).tolist() for cam in cameras]},
                  f, indent=2)
        f.write("\n")
    return manifest_path
