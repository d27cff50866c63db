"""IoU and mask-agreement statistics."""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .core import LabelMask
from .errors import DimensionMismatchError, InvalidArgumentError

__all__ = ["iou", "agreement_stats", "reference_agreement"]


def iou(a: LabelMask, b: LabelMask, label: int) -> float:
    """Intersection over union of one label's regions; empty-vs-empty is 1.0."""
    if a.labels.shape != b.labels.shape:
        raise DimensionMismatchError(
            f"mask dimensions differ: {a.labels.shape} vs {b.labels.shape}"
        )
    sa = a.labels == label
    sb = b.labels == label
    union = int(np.count_nonzero(sa | sb))
    if union == 0:
        return 1.0
    inter = int(np.count_nonzero(sa & sb))
    return inter / union


def _mean_std(values: list[float]) -> dict[str, float]:
    arr = np.asarray(values, dtype=np.float64)
    # population std: n is the full set of comparisons, not a sample
    return {"mean": float(arr.mean()), "std": float(arr.std())}


def agreement_stats(masks: list[LabelMask], label: int) -> dict[str, float]:
    """Mean / population std of IoU over all unordered mask pairs."""
    if len(masks) < 2:
        raise InvalidArgumentError("need at least 2 masks")
    values = [iou(a, b, label) for a, b in combinations(masks, 2)]
    return _mean_std(values)


def reference_agreement(candidates: list[LabelMask], reference: LabelMask,
                        label: int) -> dict[str, float]:
    """Mean / population std of IoU of each candidate against one reference."""
    if not candidates:
        raise InvalidArgumentError("need at least 1 candidate mask")
    values = [iou(c, reference, label) for c in candidates]
    return _mean_std(values)
