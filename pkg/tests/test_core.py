import numpy as np
import pytest

from uvmark.core import (
    ClassPalette,
    Frame,
    FramePair,
    Homography,
    Image,
    LightKind,
    PaletteClass,
    absdiff,
    resize_bilinear,
)
from uvmark.errors import DegenerateInputError, DimensionMismatchError, InvalidArgumentError

from conftest import make_frame, make_image


class TestImage:
    def test_shape_properties(self):
        img = make_image(np.zeros((120, 160, 3)))
        assert (img.width, img.height, img.channels) == (160, 120, 3)

    def test_grayscale_shape(self):
        img = make_image(np.zeros((4, 5)))
        assert img.channels == 1

    def test_rejects_wrong_dtype(self):
        with pytest.raises(InvalidArgumentError):
            Image(np.zeros((4, 4), dtype=np.float64))

    def test_rejects_zero_dimension(self):
        with pytest.raises(InvalidArgumentError):
            Image(np.zeros((0, 4), dtype=np.uint8))

    def test_immutable(self):
        img = make_image(np.zeros((4, 4)))
        with pytest.raises(ValueError):
            img.pixels[0, 0] = 1


class TestResize:
    def test_target_shape_640x480_to_160x120(self):
        img = make_image(np.random.default_rng(0).integers(0, 256, (480, 640, 3)))
        out = resize_bilinear(img, 160, 120)
        assert (out.width, out.height) == (160, 120)

    def test_identity_resize_is_byte_identical(self):
        img = make_image(np.random.default_rng(1).integers(0, 256, (33, 47, 3)))
        out = resize_bilinear(img, 47, 33)
        assert np.array_equal(out.pixels, img.pixels)

    def test_checkerboard_average_rounds_half_away_from_zero(self):
        img = make_image([[0, 255], [255, 0]])
        out = resize_bilinear(img, 1, 1)
        assert out.pixels[0, 0] == 128  # (0+255+255+0)/4 = 127.5 rounds up

    def test_zero_target_dimension_rejected(self):
        img = make_image(np.zeros((4, 4)))
        with pytest.raises(InvalidArgumentError):
            resize_bilinear(img, 0, 4)

    def test_constant_round_trip(self):
        img = make_image(np.full((24, 32, 3), 77))
        down = resize_bilinear(img, 8, 6)
        back = resize_bilinear(down, 32, 24)
        assert np.array_equal(back.pixels, img.pixels)

    def test_input_unmodified(self):
        arr = np.random.default_rng(2).integers(0, 256, (16, 16, 3)).astype(np.uint8)
        img = Image(arr.copy())
        resize_bilinear(img, 4, 4)
        assert np.array_equal(img.pixels, arr)


class TestAbsdiff:
    def test_self_difference_is_zero(self):
        img = make_image(np.random.default_rng(3).integers(0, 256, (8, 8, 3)))
        assert not absdiff(img, img).pixels.any()

    def test_constant_images(self):
        a = make_image(np.full((5, 5, 3), 200))
        b = make_image(np.full((5, 5, 3), 50))
        assert (absdiff(a, b).pixels == 150).all()

    def test_matches_per_pixel_loop(self):
        rng = np.random.default_rng(4)
        a = rng.integers(0, 256, (8, 8, 3)).astype(np.uint8)
        b = rng.integers(0, 256, (8, 8, 3)).astype(np.uint8)
        expected = np.zeros_like(a)
        for y in range(8):
            for x in range(8):
                for c in range(3):
                    expected[y, x, c] = abs(int(a[y, x, c]) - int(b[y, x, c]))
        out = absdiff(Image(a), Image(b))
        assert np.array_equal(out.pixels, expected)

    def test_symmetry(self):
        rng = np.random.default_rng(5)
        a = make_image(rng.integers(0, 256, (8, 8, 3)))
        b = make_image(rng.integers(0, 256, (8, 8, 3)))
        assert np.array_equal(absdiff(a, b).pixels, absdiff(b, a).pixels)

    def test_dimension_mismatch_rejected(self):
        a = make_image(np.zeros((4, 4, 3)))
        b = make_image(np.zeros((4, 5, 3)))
        with pytest.raises(DimensionMismatchError):
            absdiff(a, b)


class TestHomography:
    def test_normalizes_bottom_right(self):
        h = Homography(2.0 * np.eye(3))
        assert h.h[2, 2] == 1.0

    def test_rejects_singular(self):
        m = np.eye(3)
        m[0, 0] = 0.0
        with pytest.raises(DegenerateInputError):
            Homography(m)

    def test_inverse_round_trip(self):
        h = Homography(np.array([[1.1, 0.02, 5.0], [-0.01, 0.97, -3.0], [1e-4, 0, 1.0]]))
        pts = np.array([[10.0, 20.0], [100.0, 40.0]])
        back = h.inverse().apply(h.apply(pts))
        assert np.allclose(back, pts, atol=1e-9)


class TestFramePair:
    def test_kind_validation(self):
        reg = make_frame(np.zeros((4, 4, 3)), LightKind.REGULAR, seq=0)
        uv = make_frame(np.zeros((4, 4, 3)), LightKind.UV, seq=1)
        FramePair(regular=reg, uv=uv)
        with pytest.raises(InvalidArgumentError):
            FramePair(regular=uv, uv=uv)

    def test_adjacency_required(self):
        reg = make_frame(np.zeros((4, 4, 3)), LightKind.REGULAR, seq=0)
        uv = make_frame(np.zeros((4, 4, 3)), LightKind.UV, seq=3)
        with pytest.raises(InvalidArgumentError):
            FramePair(regular=reg, uv=uv)


class TestClassPalette:
    def test_rejects_duplicate_labels(self):
        with pytest.raises(InvalidArgumentError):
            ClassPalette(classes=(
                PaletteClass(1, (255, 0, 0), 100),
                PaletteClass(1, (0, 255, 0), 100),
            ))

    def test_rejects_duplicate_colors(self):
        with pytest.raises(InvalidArgumentError):
            ClassPalette(classes=(
                PaletteClass(1, (255, 0, 0), 100),
                PaletteClass(2, (255, 0, 0), 100),
            ))

    def test_rejects_zero_label(self):
        with pytest.raises(InvalidArgumentError):
            ClassPalette(classes=(PaletteClass(0, (255, 0, 0), 100),))

    def test_dict_round_trip(self):
        pal = ClassPalette(classes=(PaletteClass(7, (10, 20, 30), 99),), min_area=4)
        assert ClassPalette.from_dict(pal.to_dict()) == pal
