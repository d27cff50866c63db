import json
import logging

import numpy as np
import pytest

from uvmark.core import LightKind
from uvmark.errors import (
    AlternationViolationError,
    DimensionMismatchError,
    ManifestError,
    MissingFileError,
)
from uvmark.ingest import load_manifest, load_stream, pair_stream, write_manifest
from uvmark.pngio import save_image

from conftest import make_frame, make_image


def write_stream_dir(tmp_path, kinds, size=(16, 12)):
    """Write PNGs + manifest for a stream of the given light kinds."""
    w, h = size
    rng = np.random.default_rng(0)
    entries = []
    for i, kind in enumerate(kinds):
        name = f"f{i:03d}.png"
        save_image(make_image(rng.integers(0, 256, (h, w, 3))), tmp_path / name)
        entries.append({"path": name, "kind": kind, "seq": i, "t_ms": i * 33})
    doc = {"mode": "dark", "width": w, "height": h, "frames": entries}
    path = tmp_path / "manifest.json"
    path.write_text(json.dumps(doc))
    return path


def test_load_valid_manifest(tmp_path):
    path = write_stream_dir(tmp_path, ["regular", "uv", "regular", "uv"])
    manifest, frames = load_stream(path)
    assert len(frames) == 4
    assert [f.seq for f in frames] == [0, 1, 2, 3]
    assert frames[1].kind is LightKind.UV


def test_missing_image_names_path(tmp_path):
    path = write_stream_dir(tmp_path, ["regular", "uv"])
    (tmp_path / "f001.png").unlink()
    with pytest.raises(MissingFileError, match="f001.png"):
        load_stream(path)


def test_dimension_mismatch(tmp_path):
    path = write_stream_dir(tmp_path, ["regular", "uv"])
    save_image(make_image(np.zeros((6, 8, 3))), tmp_path / "f001.png")
    with pytest.raises(DimensionMismatchError):
        load_stream(path)


def test_malformed_manifest(tmp_path):
    path = tmp_path / "manifest.json"
    path.write_text("{not json")
    with pytest.raises(ManifestError):
        load_manifest(path)


def test_manifest_missing_keys(tmp_path):
    path = tmp_path / "manifest.json"
    path.write_text(json.dumps({"mode": "dark", "frames": []}))
    with pytest.raises(ManifestError):
        load_manifest(path)


def test_manifest_unknown_mode(tmp_path):
    path = tmp_path / "manifest.json"
    path.write_text(json.dumps({"mode": "sunny", "width": 1, "height": 1, "frames": []}))
    with pytest.raises(ManifestError):
        load_manifest(path)


def test_manifest_round_trip(tmp_path):
    path = write_stream_dir(tmp_path, ["regular", "uv", "regular", "uv"])
    manifest = load_manifest(path)
    out = tmp_path / "copy.json"
    write_manifest(manifest, out)
    assert load_manifest(out) == manifest


def frames_of(kinds):
    return [
        make_frame(np.zeros((4, 4, 3)), LightKind(k), seq=i, t_ms=i)
        for i, k in enumerate(kinds)
    ]


def test_30_alternating_frames_give_15_pairs():
    pairs = pair_stream(frames_of(["regular", "uv"] * 15))
    assert len(pairs) == 15
    for i, p in enumerate(pairs):
        assert (p.regular.seq, p.uv.seq) == (2 * i, 2 * i + 1)


def test_single_frame_gives_no_pairs():
    assert pair_stream(frames_of(["regular"])) == []


def test_empty_input_gives_empty_output():
    assert pair_stream([]) == []


def test_alternation_violation_names_seq():
    with pytest.raises(AlternationViolationError) as exc:
        pair_stream(frames_of(["regular", "uv", "uv", "regular"]))
    assert exc.value.seq == 2


def test_trailing_unpaired_frame_dropped_with_warning(caplog):
    with caplog.at_level(logging.WARNING, logger="uvmark.ingest"):
        pairs = pair_stream(frames_of(["regular", "uv", "regular"]))
    assert len(pairs) == 1
    assert "unpaired" in caplog.text


def test_uv_first_stream_pairs_canonically():
    pairs = pair_stream(frames_of(["uv", "regular", "uv", "regular"]))
    assert len(pairs) == 2
    for p in pairs:
        assert p.regular.kind is LightKind.REGULAR
        assert p.uv.kind is LightKind.UV
    assert pairs[0].uv.seq == 0 and pairs[0].regular.seq == 1


def test_pairs_are_order_preserving():
    pairs = pair_stream(frames_of(["regular", "uv"] * 8))
    for a, b in zip(pairs, pairs[1:]):
        assert max(a.regular.seq, a.uv.seq) < min(b.regular.seq, b.uv.seq)
