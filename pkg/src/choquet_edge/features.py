"""Per-pixel 8-neighborhood difference features and their fusion.

The feature image stores, at every pixel, the eight absolute intensity
differences to the 3x3 neighbors, already sorted ascending.  Borders use
replicate padding so every pixel has a full neighborhood and constant
images yield all-zero features.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from .conditioning import as_gray_image

__all__ = ["NEIGHBOR_OFFSETS", "extract_features", "blend"]

NEIGHBOR_OFFSETS = ((-1, -1), (-1, 0), (-1, 1),
                    (0, -1), (0, 1),
                    (1, -1), (1, 0), (1, 1))


def extract_features(img) -> np.ndarray:
    """Sorted 8-vector of absolute neighbor differences at every pixel.

    Returns an array of shape ``(rows, cols, 8)`` with each per-pixel vector
    non-decreasing.  Requires an image of at least 3x3 pixels.
    """
    img = as_gray_image(img)
    rows, cols = img.shape
    if rows < 3 or cols < 3:
        raise ValueError("feature extraction needs an image of at least 3x3")
    padded = np.pad(img, 1, mode="edge")
    feats = np.empty((rows, cols, 8))
    for k, (dr, dc) in enumerate(NEIGHBOR_OFFSETS):
        neighbor = padded[1 + dr:1 + dr + rows, 1 + dc:1 + dc + cols]
        feats[:, :, k] = np.abs(img - neighbor)
    feats.sort(axis=-1)
    return feats


def blend(features, aggregate: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """Fuse each pixel's sorted feature vector into a scalar edge cue.

    ``aggregate`` maps arrays of shape (..., 8) to shape (...), e.g. one of
    the integrals produced by :func:`choquet_edge.aggregation.make_aggregator`.
    """
    features = np.asarray(features, dtype=float)
    if features.ndim != 3 or features.shape[-1] != 8:
        raise ValueError("feature image must have shape (rows, cols, 8)")
    if np.any(features < 0.0) or np.any(features > 1.0):
        raise ValueError("feature values must lie in [0,1]")
    if np.any(np.diff(features, axis=-1) < 0.0):
        raise ValueError("per-pixel feature vectors must be sorted ascending")
    blended = np.asarray(aggregate(features), dtype=float)
    if blended.shape != features.shape[:2]:
        raise ValueError("aggregator must reduce exactly the feature axis")
    return blended
