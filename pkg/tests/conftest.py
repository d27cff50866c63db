import numpy as np
import pytest

from uvmark.core import ClassPalette, Frame, Image, LightKind, PaletteClass


def make_image(arr) -> Image:
    return Image(np.asarray(arr, dtype=np.uint8))


def make_frame(arr, kind=LightKind.UV, seq=1, t_ms=0) -> Frame:
    return Frame(image=make_image(arr), kind=kind, seq=seq, timestamp_ms=t_ms)


@pytest.fixture
def red_palette() -> ClassPalette:
    return ClassPalette(classes=(PaletteClass(label=1, color=(255, 0, 0), threshold=100),))


@pytest.fixture
def rgb_palette() -> ClassPalette:
    return ClassPalette(classes=(
        PaletteClass(label=1, color=(255, 0, 0), threshold=100),
        PaletteClass(label=2, color=(0, 255, 0), threshold=100),
        PaletteClass(label=3, color=(0, 0, 255), threshold=100),
    ))
