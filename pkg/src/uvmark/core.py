"""Domain types and pixel arithmetic shared by every pipeline stage.

All public image data is 8-bit; intermediate arithmetic runs in float64 and
is brought back to uint8 with round-half-away-from-zero followed by a clamp
to [0, 255].
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import DegenerateInputError, DimensionMismatchError, InvalidArgumentError

__all__ = [
    "Image",
    "LightKind",
    "Frame",
    "FramePair",
    "Homography",
    "LabelMask",
    "PaletteClass",
    "ClassPalette",
    "quantize_u8",
    "resize_bilinear",
    "absdiff",
]


def quantize_u8(a: np.ndarray) -> np.ndarray:
    """Round half away from zero, clamp to [0, 255], return uint8."""
    return np.clip(np.floor(np.asarray(a, dtype=np.float64) + 0.5), 0, 255).astype(np.uint8)


def _freeze(arr: np.ndarray) -> np.ndarray:
    out = np.ascontiguousarray(arr)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class Image:
    """8-bit image, grayscale (h, w) or RGB (h, w, 3), immutable."""

    pixels: np.ndarray

    def __post_init__(self):
        px = np.asarray(self.pixels)
        if px.dtype != np.uint8:
            raise InvalidArgumentError(f"image samples must be uint8, got {px.dtype}")
        if px.ndim == 3 and px.shape[2] == 1:
            px = px[:, :, 0]
        if px.ndim not in (2, 3) or (px.ndim == 3 and px.shape[2] != 3):
            raise InvalidArgumentError(f"image must be (h, w) or (h, w, 3), got {px.shape}")
        if px.shape[0] < 1 or px.shape[1] < 1:
            raise InvalidArgumentError("image dimensions must be >= 1")
        object.__setattr__(self, "pixels", _freeze(px))

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def channels(self) -> int:
        return 1 if self.pixels.ndim == 2 else 3

    def same_shape(self, other: "Image") -> bool:
        return self.pixels.shape == other.pixels.shape


class LightKind(enum.Enum):
    REGULAR = "regular"
    UV = "uv"


@dataclass(frozen=True)
class Frame:
    """One capture: image plus lighting tag, sequence index, and timestamp."""

    image: Image
    kind: LightKind
    seq: int
    timestamp_ms: int


@dataclass(frozen=True)
class Homography:
    """3x3 invertible planar projective transform, normalized to h[2,2] = 1."""

    h: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.h, dtype=np.float64)
        if m.shape != (3, 3):
            raise InvalidArgumentError(f"homography must be 3x3, got {m.shape}")
        if not np.all(np.isfinite(m)):
            raise DegenerateInputError("homography contains non-finite entries")
        if abs(m[2, 2]) > 1e-12:
            m = m / m[2, 2]
        if abs(np.linalg.det(m)) <= 1e-12:
            raise DegenerateInputError("homography is not invertible")
        object.__setattr__(self, "h", _freeze(m))

    @classmethod
    def identity(cls) -> "Homography":
        return cls(np.eye(3))

    def inverse(self) -> "Homography":
        return Homography(np.linalg.inv(self.h))

    def compose(self, other: "Homography") -> "Homography":
        """self after other: (self @ other)(p) = self(other(p))."""
        return Homography(self.h @ other.h)

    def apply(self, pts: np.ndarray) -> np.ndarray:
        """Map (n, 2) points through the transform."""
        pts = np.asarray(pts, dtype=np.float64)
        ones = np.ones((pts.shape[0], 1))
        q = np.hstack([pts, ones]) @ self.h.T
        return q[:, :2] / q[:, 2:3]

    def is_identity(self, tol: float = 1e-12) -> bool:
        return bool(np.allclose(self.h, np.eye(3), atol=tol))


@dataclass(frozen=True)
class FramePair:
    """A (regular, UV) capture pair; alignment maps UV coords onto regular coords."""

    regular: Frame
    uv: Frame
    alignment: Homography | None = None
    validity: np.ndarray | None = None  # bool (h, w), where the warped UV frame is defined
    alignment_failed: bool = False

    def __post_init__(self):
        if self.regular.kind is not LightKind.REGULAR:
            raise InvalidArgumentError("pair.regular must have kind REGULAR")
        if self.uv.kind is not LightKind.UV:
            raise InvalidArgumentError("pair.uv must have kind UV")
        if abs(self.regular.seq - self.uv.seq) != 1:
            raise InvalidArgumentError(
                f"pair frames must be adjacent captures, got seq {self.regular.seq} and {self.uv.seq}"
            )
        if self.validity is not None:
            object.__setattr__(self, "validity", _freeze(np.asarray(self.validity, dtype=bool)))

    def with_alignment(self, alignment, uv=None, validity=None, failed=False) -> "FramePair":
        return replace(
            self,
            alignment=alignment,
            uv=self.uv if uv is None else uv,
            validity=validity,
            alignment_failed=failed,
        )


@dataclass(frozen=True)
class LabelMask:
    """Per-pixel 8-bit class ids, 0 = background."""

    labels: np.ndarray

    def __post_init__(self):
        lab = np.asarray(self.labels)
        if lab.dtype != np.uint8 or lab.ndim != 2:
            raise InvalidArgumentError("labels must be a 2-d uint8 array")
        object.__setattr__(self, "labels", _freeze(lab))

    @property
    def width(self) -> int:
        return self.labels.shape[1]

    @property
    def height(self) -> int:
        return self.labels.shape[0]


@dataclass(frozen=True)
class PaletteClass:
    label: int
    color: tuple[int, int, int]  # emission RGB under UV
    threshold: int  # minimum max-channel intensity, 0-255


@dataclass(frozen=True)
class ClassPalette:
    """Fluorescent classes: label id, emission color, detection threshold."""

    classes: tuple[PaletteClass, ...]
    min_area: int = 0

    def __post_init__(self):
        labels = [c.label for c in self.classes]
        if any(not (1 <= l <= 255) for l in labels):
            raise InvalidArgumentError("class labels must be nonzero 8-bit ids")
        if len(set(labels)) != len(labels):
            raise InvalidArgumentError("class labels must be unique")
        colors = [tuple(c.color) for c in self.classes]
        if len(set(colors)) != len(colors):
            raise InvalidArgumentError("emission colors must be pairwise distinct")
        for c in self.classes:
            if not all(0 <= v <= 255 for v in c.color):
                raise InvalidArgumentError("emission colors must be 0-255")
            if not (0 <= c.threshold <= 255):
                raise InvalidArgumentError("thresholds must be 0-255")
        object.__setattr__(self, "classes", tuple(self.classes))

    @classmethod
    def from_dict(cls, d: dict) -> "ClassPalette":
        classes = tuple(
            PaletteClass(label=int(c["label"]), color=tuple(int(v) for v in c["color"]),
                         threshold=int(c["threshold"]))
            for c in d["classes"]
        )
        return cls(classes=classes, min_area=int(d.get("min_area", 0)))

    def to_dict(self) -> dict:
        return {
            "classes": [
                {"label": c.label, "color": list(c.color), "threshold": c.threshold}
                for c in self.classes
            ],
            "min_area": self.min_area,
        }


def resize_bilinear(img: Image, new_w: int, new_h: int) -> Image:
    """Bilinear resize with half-pixel-center sampling."""
    if new_w < 1 or new_h < 1:
        raise InvalidArgumentError("target dimensions must be >= 1")
    if new_w == img.width and new_h == img.height:
        return img
    src = img.pixels.astype(np.float64)
    if src.ndim == 2:
        src = src[:, :, None]
    h, w = img.height, img.width
    xs = np.clip((np.arange(new_w) + 0.5) * w / new_w - 0.5, 0, w - 1)
    ys = np.clip((np.arange(new_h) + 0.5) * h / new_h - 0.5, 0, h - 1)
    x0 = np.floor(xs).astype(int)
    y0 = np.floor(ys).astype(int)
    x1 = np.minimum(x0 + 1, w - 1)
    y1 = np.minimum(y0 + 1, h - 1)
    fx = (xs - x0)[None, :, None]
    fy = (ys - y0)[:, None, None]
    top = src[np.ix_(y0, x0)] * (1 - fx) + src[np.ix_(y0, x1)] * fx
    bot = src[np.ix_(y1, x0)] * (1 - fx) + src[np.ix_(y1, x1)] * fx
    out = top * (1 - fy) + bot * fy
    if img.channels == 1:
        out = out[:, :, 0]
    return Image(quantize_u8(out))


def absdiff(a: Image, b: Image) -> Image:
    """Per-sample absolute difference of two same-shaped images."""
    if a.pixels.shape != b.pixels.shape:
        raise DimensionMismatchError(
            f"absdiff operands differ: {a.pixels.shape} vs {b.pixels.shape}"
        )
    diff = np.abs(a.pixels.astype(np.int16) - b.pixels.astype(np.int16))
    return Image(diff.astype(np.uint8))
