"""Writers for annotation runs: images, masks, manifests, previews, debug dumps."""

from __future__ import annotations

import json
import os

import numpy as np

from .core import ClassPalette, Image
from .pngio import save_image, save_mask
from .segmentation import AnnotatedSample

__all__ = ["write_annotations", "overlay_preview"]


def overlay_preview(img: Image, mask, palette: ClassPalette) -> Image:
    """Blend class colors at 50% over the regular image where the mask is set."""
    out = img.pixels.astype(np.float64).copy()
    for cls in palette.classes:
        sel = mask.labels == cls.label
        color = np.array(cls.color, dtype=np.float64)
        out[sel] = 0.5 * out[sel] + 0.5 * color
    return Image(np.clip(np.floor(out + 0.5), 0, 255).astype(np.uint8))


def write_annotations(samples: list[AnnotatedSample], out_dir: str | os.PathLike,
                      palette: ClassPalette, preview: bool = False) -> dict:
    """Persist an annotation run; returns the summary also written as dataset.json."""
    out_dir = os.fspath(out_dir)
    os.makedirs(out_dir, exist_ok=True)
    entries = []
    n_failed = 0
    for s in samples:
        if s.error is not None or s.mask is None:
            n_failed += 1
            entries.append({"pair": s.pair_index, "error": s.error or "no mask produced"})
            continue
        img_name = f"image_{s.pair_index:04d}.png"
        mask_name = f"mask_{s.pair_index:04d}.png"
        save_image(s.regular.image, os.path.join(out_dir, img_name))
        save_mask(s.mask, os.path.join(out_dir, mask_name))
        entry = {
            "pair": s.pair_index,
            "image": img_name,
            "mask": mask_name,
            "alignment_failed": s.alignment_failed,
        }
        if s.alignment is not None:
            entry["h"] = [round(v, 12) for v in s.alignment.h.reshape(-1).tolist()]
        if preview:
            prev_name = f"preview_{s.pair_index:04d}.png"
            save_image(overlay_preview(s.regular.image, s.mask, palette),
                       os.path.join(out_dir, prev_name))
            entry["preview"] = prev_name
        entries.append(entry)
    summary = {
        "samples": len(samples),
        "failed": n_failed,
        "entries": entries,
        # fixed-exposure assumption across each pair is baked into the pipeline
        "assumptions": {"fixed_exposure_per_pair": True},
    }
    with open(os.path.join(out_dir, "dataset.json"), "w") as f:
        json.dump(summary, f, indent=2, sort_keys=True)
        f.write("\n")
    return summary
