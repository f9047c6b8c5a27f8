"""Scaling phase: orientation-aware non-maxima suppression and hysteresis.

Turns a blended edge-cue image into thin binary edges.  Orientation is the
gradient direction of the conditioned image reduced modulo pi (the edge
normal); NMS quantizes it to four sectors and keeps only pixels that are
maxima along the normal; hysteresis binarizes with a strong/weak threshold
pair and 8-connectivity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .conditioning import as_gray_image

__all__ = [
    "HysteresisParams",
    "estimate_orientation",
    "nms",
    "hysteresis",
    "resolve_thresholds",
]

# Responses at float-noise level count as zero when pooling percentiles.
NOISE_FLOOR = 1e-9

_EIGHT_CONNECTED = np.ones((3, 3), dtype=bool)

# Edge-normal sector -> the two neighbor offsets compared by NMS.
_SECTOR_NEIGHBORS = (
    ((0, 1), (0, -1)),    # normal ~ 0: horizontal
    ((1, 1), (-1, -1)),   # normal ~ pi/4
    ((1, 0), (-1, 0)),    # normal ~ pi/2: vertical
    ((1, -1), (-1, 1)),   # normal ~ 3*pi/4
)


@dataclass(frozen=True)
class HysteresisParams:
    """Threshold pair for hysteresis binarization.

    In ``absolute`` mode ``low`` and ``high`` are intensity thresholds.  In
    ``percentile`` mode ``high`` is the quantile of the nonzero responses
    that becomes the strong threshold and ``low`` is the weak threshold as a
    fraction of the resolved strong one.
    """

    low: float = 0.4
    high: float = 0.95
    mode: str = "percentile"

    def __post_init__(self):
        if not 0.0 <= self.low <= self.high <= 1.0:
            raise ValueError("thresholds must satisfy 0 <= low <= high <= 1")
        if self.mode not in ("absolute", "percentile"):
            raise ValueError(f"unknown threshold mode {self.mode!r}")


def estimate_orientation(img) -> np.ndarray:
    """Edge-normal angles in [0, pi) from central-difference gradients."""
    img = as_gray_image(img)
    if img.shape[0] < 3 or img.shape[1] < 3:
        raise ValueError("orientation estimation needs an image of at least 3x3")
    p = np.pad(img, 1, mode="edge")
    gx = 0.5 * (p[1:-1, 2:] - p[1:-1, :-2])
    gy = 0.5 * (p[2:, 1:-1] - p[:-2, 1:-1])
    theta = np.mod(np.arctan2(gy, gx), np.pi)
    # mod of a tiny negative angle rounds up to pi itself; pi is 0 mod pi.
    theta[theta >= np.pi] = 0.0
    return theta


def nms(blended, orientation) -> np.ndarray:
    """Suppress pixels that are not maxima along their edge normal.

    The orientation is quantized to the sectors 0, pi/4, pi/2 and 3*pi/4;
    a pixel survives iff its value is >= both neighbors along the quantized
    normal (ties keep plateau ridges).  Out-of-image neighbors count as 0.
    """
    blended = as_gray_image(blended)
    orientation = np.asarray(orientation, dtype=float)
    if orientation.shape != blended.shape:
        raise ValueError("orientation field must match the image shape")
    if np.any(orientation < 0.0) or np.any(orientation >= np.pi):
        raise ValueError("orientation angles must lie in [0, pi)")

    rows, cols = blended.shape
    sector = np.rint(orientation / (np.pi / 4.0)).astype(int) % 4
    padded = np.pad(blended, 1)
    out = np.zeros_like(blended)
    for s, ((r1, c1), (r2, c2)) in enumerate(_SECTOR_NEIGHBORS):
        n1 = padded[1 + r1:1 + r1 + rows, 1 + c1:1 + c1 + cols]
        n2 = padded[1 + r2:1 + r2 + rows, 1 + c2:1 + c2 + cols]
        keep = (sector == s) & (blended >= n1) & (blended >= n2)
        out[keep] = blended[keep]
    return out


def resolve_thresholds(thin, params: HysteresisParams) -> tuple[float, float]:
    """Resolve ``params`` to an absolute ``(low, high)`` pair for ``thin``.

    Percentile mode returns ``(0, inf)`` when no response clears the noise
    floor, which makes the edge map empty.
    """
    if params.mode == "absolute":
        return params.low, params.high
    thin = np.asarray(thin, dtype=float)
    pool = thin[thin > NOISE_FLOOR]
    if pool.size == 0:
        return 0.0, np.inf
    high = float(np.quantile(pool, params.high))
    return params.low * high, high


def hysteresis(thin, params: HysteresisParams) -> np.ndarray:
    """Binarize a thinned response image with double thresholds.

    Pixels >= the strong threshold seed edges; pixels >= the weak threshold
    that are 8-connected (transitively) to a seed are kept as well.
    Returns a boolean edge map.
    """
    thin = as_gray_image(thin)
    low, high = resolve_thresholds(thin, params)
    seeds = thin >= high
    if not seeds.any():
        return np.zeros(thin.shape, dtype=bool)
    mask = thin >= low
    labels, _ = ndimage.label(mask, structure=_EIGHT_CONNECTED)
    kept = np.unique(labels[seeds])
    return np.isin(labels, kept[kept > 0])
