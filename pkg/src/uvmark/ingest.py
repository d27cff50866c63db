"""Stream loading, alternation validation, and frame pairing.

Manifest schema (JSON):
    {"mode": "dark"|"ambient", "width": int, "height": int,
     "frames": [{"path": str, "kind": "regular"|"uv", "seq": int, "t_ms": int}]}

Image paths are resolved relative to the manifest's directory.
"""

from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass

from .core import Frame, FramePair, LightKind
from .errors import (
    AlternationViolationError,
    DimensionMismatchError,
    ManifestError,
    MissingFileError,
)
from .pngio import load_image

log = logging.getLogger(__name__)

__all__ = ["ManifestEntry", "StreamManifest", "load_manifest", "load_stream",
           "pair_stream", "write_manifest"]


@dataclass(frozen=True)
class ManifestEntry:
    path: str
    kind: LightKind
    seq: int
    t_ms: int


@dataclass(frozen=True)
class StreamManifest:
    mode: str  # "dark" | "ambient"
    width: int
    height: int
    entries: tuple[ManifestEntry, ...]


def load_manifest(path: str | os.PathLike) -> StreamManifest:
    if not os.path.exists(path):
        raise MissingFileError(str(path))
    try:
        with open(path) as f:
            doc = json.load(f)
    except json.JSONDecodeError as e:
        raise ManifestError(f"manifest is not valid JSON: {e}") from e
    try:
        mode = doc["mode"]
        if mode not in ("dark", "ambient"):
            raise ManifestError(f"unknown mode {mode!r}")
        entries = tuple(
            ManifestEntry(path=str(fr["path"]), kind=LightKind(fr["kind"]),
                          seq=int(fr["seq"]), t_ms=int(fr["t_ms"]))
            for fr in doc["frames"]
        )
        manifest = StreamManifest(mode=mode, width=int(doc["width"]),
                                  height=int(doc["height"]), entries=entries)
    except ManifestError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise ManifestError(f"malformed manifest: {e}") from e
    seqs = [e.seq for e in manifest.entries]
    if any(b <= a for a, b in zip(seqs, seqs[1:])):
        raise ManifestError("manifest entries must be sorted by strictly increasing seq")
    return manifest


def write_manifest(manifest: StreamManifest, path: str | os.PathLike) -> None:
    doc = {
        "mode": manifest.mode,
        "width": manifest.width,
        "height": manifest.height,
        "frames": [
            {"path": e.path, "kind": e.kind.value, "seq": e.seq, "t_ms": e.t_ms}
            for e in manifest.entries
        ],
    }
    with open(path, "w") as f:
        json.dump(doc, f, indent=2, sort_keys=True)
        f.write("\n")


def load_stream(manifest_path: str | os.PathLike) -> tuple[StreamManifest, list[Frame]]:
    """Load a manifest and its referenced images, in seq order."""
    manifest = load_manifest(manifest_path)
    base = os.path.dirname(os.fspath(manifest_path))
    frames = []
    for e in manifest.entries:
        img = load_image(os.path.join(base, e.path))
        if (img.width, img.height) != (manifest.width, manifest.height):
            raise DimensionMismatchError(
                f"{e.path}: image is {img.width}x{img.height}, "
                f"manifest declares {manifest.width}x{manifest.height}"
            )
        frames.append(Frame(image=img, kind=e.kind, seq=e.seq, timestamp_ms=e.t_ms))
    return manifest, frames


def pair_stream(frames: list[Frame]) -> list[FramePair]:
    """Pair consecutive (regular, UV) frames, canonical orientation (regular, uv).

    Raises AlternationViolationError when two consecutive frames share a kind.
    A trailing unpaired frame is dropped with a warning.
    """
    for prev, cur in zip(frames, frames[1:]):
        if cur.kind is prev.kind:
            raise AlternationViolationError(cur.seq)
    pairs = []
    for i in range(0, len(frames) - 1, 2):
        a, b = frames[i], frames[i + 1]
        if a.kind is LightKind.REGULAR:
            pairs.append(FramePair(regular=a, uv=b))
        else:
            pairs.append(FramePair(regular=b, uv=a))
    if len(frames) % 2 == 1 and frames:
        log.warning("dropping trailing unpaired frame seq %d", frames[-1].seq)
    return pairs
