"""Comparison detectors: Canny, gravitational forces, and fuzzy morphology.

Each baseline produces a blended edge-cue image in [0,1] and shares the
scaling phase with the feature-fusion pipeline.  Normalization constants
are derived analytically from the filter or window definition so all
methods feed the scaling phase with a common range.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import ndimage

from .aggregation import FusionFunction, schweizer_sklar_conorm, schweizer_sklar_tnorm
from .conditioning import as_gray_image, gaussian_smooth

__all__ = [
    "gaussian_derivative_kernels",
    "canny_gradient_blend",
    "canny_blend",
    "gravitational_edge_blend",
    "fuzzy_morphology_blend",
    "GRAV_EDGE_NORM",
]

DEFAULT_CANNY_SIGMA_DERIV = 2.25

# Largest gradient-norm reachable by summing 3x3 inverse-square force
# vectors with weights in [0,1]: attained by activating the offsets in a
# half-plane, giving the vector (1 + 1/sqrt(2), 1) up to symmetry.
GRAV_EDGE_NORM = math.hypot(1.0 + 1.0 / math.sqrt(2.0), 1.0)

# Mirror-image offset pairs; summing each pair before accumulating makes
# the net force vanish exactly (not just approximately) on flat regions.
_MIRROR_PAIRS = (((-1, -1), (1, 1)), ((-1, 0), (1, 0)),
                 ((-1, 1), (1, -1)), ((0, -1), (0, 1)))

_WINDOW_3X3 = tuple((dr, dc) for dr in (-1, 0, 1) for dc in (-1, 0, 1))


def gaussian_derivative_kernels(sigma: float) -> tuple[np.ndarray, np.ndarray]:
    """First-order Gaussian-derivative kernels for the x and y partials.

    Separable products of a normalized Gaussian and its exact derivative,
    truncated at half-width ceil(3*sigma).
    """
    if not sigma > 0:
        raise ValueError("sigma must be positive")
    half = int(np.ceil(3.0 * sigma))
    xs = np.arange(-half, half + 1, dtype=float)
    g = np.exp(-(xs * xs) / (2.0 * sigma * sigma))
    g /= g.sum()
    dg = -(xs / (sigma * sigma)) * g
    kx = np.outer(g, dg)
    ky = np.outer(dg, g)
    return kx, ky


def canny_gradient_blend(img, sigma_deriv: float = DEFAULT_CANNY_SIGMA_DERIV) -> np.ndarray:
    """Euclidean gradient norm from Gaussian-derivative filters, in [0,1].

    Expects an already conditioned image; the classical combination with a
    preceding zero-th order smoothing lives in :func:`canny_blend`.
    """
    img = as_gray_image(img)
    kx, ky = gaussian_derivative_kernels(sigma_deriv)
    gx = ndimage.convolve(img, kx, mode="nearest")
    gy = ndimage.convolve(img, ky, mode="nearest")
    # Max response of a zero-sum kernel on [0,1] inputs is its positive part.
    peak = math.hypot(kx[kx > 0].sum(), ky[ky > 0].sum())
    return np.clip(np.hypot(gx, gy) / peak, 0.0, 1.0)


def canny_blend(img, sigma_smooth: float,
                sigma_deriv: float = DEFAULT_CANNY_SIGMA_DERIV) -> np.ndarray:
    """Zero-th order Gaussian smoothing followed by the gradient-norm blend."""
    return canny_gradient_blend(gaussian_smooth(img, sigma_smooth), sigma_deriv)


def gravitational_edge_blend(img, conorm: FusionFunction) -> np.ndarray:
    """Magnitude of the net 3x3 attraction with t-conorm mass coupling.

    Every neighbor attracts the center with magnitude S(center, neighbor)
    over squared distance, along the connecting direction; the blended cue
    is the Euclidean norm of the vector sum scaled by its analytic maximum.
    Homogeneous regions yield exactly zero.
    """
    if not conorm.is_tconorm:
        raise ValueError(f"{conorm.name!r} is not flagged as a t-conorm")
    img = as_gray_image(img)
    rows, cols = img.shape
    padded = np.pad(img, 1, mode="edge")

    fy = np.zeros_like(img)
    fx = np.zeros_like(img)
    for (r1, c1), (r2, c2) in _MIRROR_PAIRS:
        d3 = (r1 * r1 + c1 * c1) ** 1.5
        n1 = padded[1 + r1:1 + r1 + rows, 1 + c1:1 + c1 + cols]
        n2 = padded[1 + r2:1 + r2 + rows, 1 + c2:1 + c2 + cols]
        s1 = conorm.fn(img, n1)
        s2 = conorm.fn(img, n2)
        fy += s1 * (r1 / d3) + s2 * (r2 / d3)
        fx += s1 * (c1 / d3) + s2 * (c2 / d3)
    return np.clip(np.hypot(fy, fx) / GRAV_EDGE_NORM, 0.0, 1.0)


def _fold(op, layers) -> np.ndarray:
    acc = layers[0].copy()
    for layer in layers[1:]:
        acc = op(acc, layer)
    return acc


def fuzzy_morphology_blend(img, lam: float = -5.0) -> np.ndarray:
    """Background-corrected fuzzy morphological gradient, flat 3x3 element.

    Dilation folds the Schweizer-Sklar t-conorm over the window, erosion
    folds the dual t-norm.  The fold of an Archimedean pair is not
    idempotent, so the gradient of a flat patch at the pixel's own
    intensity is subtracted; this makes homogeneous regions exactly zero
    while binary transitions still respond with 1.  At lam = -inf the cue
    reduces exactly to the classical max-filter minus min-filter gradient.
    """
    img = as_gray_image(img)
    rows, cols = img.shape
    tnorm = schweizer_sklar_tnorm(lam)
    conorm = schweizer_sklar_conorm(lam)
    padded = np.pad(img, 1, mode="edge")

    layers = [padded[1 + dr:1 + dr + rows, 1 + dc:1 + dc + cols]
              for dr, dc in _WINDOW_3X3]
    gradient = _fold(conorm.fn, layers) - _fold(tnorm.fn, layers)
    flat = [img] * len(layers)
    bias = _fold(conorm.fn, flat) - _fold(tnorm.fn, flat)
    return np.clip(gradient - bias, 0.0, 1.0)
