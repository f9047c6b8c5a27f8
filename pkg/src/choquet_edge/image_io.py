"""Reading and writing images for the pipeline.

Inputs are 8-bit grayscale or color PNG/PGM files; color is reduced to
grayscale by averaging the channels before normalizing to [0,1].  The
pipeline stays in double precision; quantization to 8 bits (or 1 bit for
edge maps) happens only when a stage is dumped to disk.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
from PIL import Image

__all__ = [
    "read_gray_image",
    "read_edge_map",
    "write_gray_image",
    "write_edge_map",
    "write_feature_planes",
]


def read_gray_image(path) -> np.ndarray:
    """Load an image as float64 in [0,1], averaging color channels."""
    path = Path(path)
    try:
        with Image.open(path) as handle:
            img = handle
            if img.mode in ("P", "RGBA", "LA"):
                img = img.convert("RGB" if img.mode == "P" else img.mode[:-1])
            arr = np.asarray(img, dtype=float)
    except FileNotFoundError:
        raise
    except OSError as exc:
        raise OSError(f"cannot read image {path}: {exc}") from exc
    if arr.ndim == 3:
        arr = arr.mean(axis=2)
    if arr.dtype != float:
        arr = arr.astype(float)
    peak = 65535.0 if arr.max() > 255.0 else 255.0
    if arr.max() <= 1.0:
        peak = 1.0
    return np.clip(arr / peak, 0.0, 1.0)


def read_edge_map(path) -> np.ndarray:
    """Load a binary edge/ground-truth map as a boolean array."""
    return read_gray_image(path) > 0.5


def write_gray_image(path, img) -> None:
    """Quantize to 8 bits with round(255*v) and save as PNG/PGM."""
    img = np.asarray(img, dtype=float)
    data = np.rint(255.0 * np.clip(img, 0.0, 1.0)).astype(np.uint8)
    Image.fromarray(data, mode="L").save(Path(path))


def write_edge_map(path, edges) -> None:
    """Save a boolean edge map as a 1-bit PNG/PBM."""
    edges = np.asarray(edges)
    if edges.dtype != bool:
        raise ValueError("edge maps must be boolean")
    Image.fromarray(edges).save(Path(path))


def write_feature_planes(path, features) -> None:
    """Dump a feature image as raw little-endian float64.

    Layout: row-major over pixels with the 8 planes varying fastest, i.e.
    the C order of the (rows, cols, 8) array.
    """
    features = np.ascontiguousarray(features, dtype="<f8")
    if features.ndim != 3 or features.shape[-1] != 8:
        raise ValueError("feature image must have shape (rows, cols, 8)")
    Path(path).write_bytes(features.tobytes())
