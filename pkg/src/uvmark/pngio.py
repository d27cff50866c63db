"""PNG load/save helpers (8-bit RGB images, single-channel label masks)."""

from __future__ import annotations

import os

import numpy as np
from PIL import Image as PILImage

from .core import Image, LabelMask
from .errors import MissingFileError


def load_image(path: str | os.PathLike) -> Image:
    if not os.path.exists(path):
        raise MissingFileError(str(path))
    with PILImage.open(path) as im:
        arr = np.asarray(im.convert("RGB"), dtype=np.uint8)
    return Image(arr)


def save_image(img: Image, path: str | os.PathLike) -> None:
    px = img.pixels
    mode = "L" if px.ndim == 2 else "RGB"
    PILImage.fromarray(px, mode=mode).save(path, format="PNG")


def load_mask(path: str | os.PathLike) -> LabelMask:
    if not os.path.exists(path):
        raise MissingFileError(str(path))
    with PILImage.open(path) as im:
        arr = np.asarray(im.convert("L"), dtype=np.uint8)
    return LabelMask(arr)


def save_mask(mask: LabelMask, path: str | os.PathLike) -> None:
    PILImage.fromarray(mask.labels, mode="L").save(path, format="PNG")
