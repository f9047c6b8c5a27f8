"""Image conditioning: Gaussian smoothing and iterative gravitational smoothing.

Images are 2-D float arrays with values in [0,1].  Gravitational smoothing
treats pixels as unit-mass particles in a 3-D space (row, column, scaled
intensity) and lets the intensity coordinate drift under inverse-square
attraction; the spatial coordinates stay on the grid so the result is again
an image.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy import ndimage

__all__ = [
    "GaussianConfig",
    "GravitationalConfig",
    "SmoothingConfig",
    "SMOOTHING_PRESETS",
    "as_gray_image",
    "gaussian_kernel",
    "gaussian_smooth",
    "gravitational_smooth",
    "smooth",
]


def as_gray_image(pixels) -> np.ndarray:
    """Validate and return a 2-D float64 image with values in [0,1]."""
    img = np.asarray(pixels, dtype=float)
    if img.ndim != 2 or img.size == 0:
        raise ValueError("image must be a non-empty 2-D array")
    if not np.all(np.isfinite(img)):
        raise ValueError("image contains non-finite values")
    if img.min() < 0.0 or img.max() > 1.0:
        raise ValueError("image values must lie in [0,1]")
    return img


@dataclass(frozen=True)
class GaussianConfig:
    sigma: float

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError("sigma must be positive")


@dataclass(frozen=True)
class GravitationalConfig:
    gravity: float = 0.05
    tonal_scale: float = 20.0
    iterations: int = 30
    window_radius: int = 5

    def __post_init__(self):
        if not self.gravity > 0:
            raise ValueError("gravity constant must be positive")
        if not self.tonal_scale > 0:
            raise ValueError("tonal scale must be positive")
        if self.iterations < 1:
            raise ValueError("iteration count must be >= 1")
        if self.window_radius < 1:
            raise ValueError("window radius must be >= 1")


SmoothingConfig = Union[GaussianConfig, GravitationalConfig]

SMOOTHING_PRESETS: dict[str, SmoothingConfig] = {
    "s1": GaussianConfig(sigma=1.0),
    "s2": GaussianConfig(sigma=2.0),
    "s3": GravitationalConfig(gravity=0.05, tonal_scale=20.0, iterations=30),
    "s4": GravitationalConfig(gravity=0.05, tonal_scale=70.0, iterations=50),
}


def gaussian_kernel(sigma: float) -> np.ndarray:
    """2-D Gaussian kernel, half-width ceil(3*sigma), renormalized to sum 1."""
    if not sigma > 0:
        raise ValueError("sigma must be positive")
    half = int(np.ceil(3.0 * sigma))
    xs = np.arange(-half, half + 1, dtype=float)
    g = np.exp(-(xs * xs) / (2.0 * sigma * sigma))
    kernel = np.outer(g, g)
    return kernel / kernel.sum()


def gaussian_smooth(img, sigma: float) -> np.ndarray:
    """Convolve with a normalized Gaussian kernel, replicating the border."""
    img = as_gray_image(img)
    out = ndimage.convolve(img, gaussian_kernel(sigma), mode="nearest")
    # Convex combination of inputs; clip only guards float rounding.
    return np.clip(out, 0.0, 1.0)


def _window_offsets(radius: int) -> list[tuple[int, int]]:
    return [(dr, dc)
            for dr in range(-radius, radius + 1)
            for dc in range(-radius, radius + 1)
            if (dr, dc) != (0, 0)]


def gravitational_smooth(img, cfg: GravitationalConfig) -> np.ndarray:
    """Iterative gravitational regularization of the intensity values.

    Per iteration (Jacobi semantics: all forces from the previous state),
    every pixel accumulates the tonal component of the inverse-square
    attraction exerted by the pixels inside its spatial window, computed in
    the (row, col, tonal_scale * intensity) space with unit masses.  The
    scaled tonal coordinate then takes one unit-time Euler step and is
    mapped back to an intensity in [0,1].
    """
    img = as_gray_image(img)
    rows, cols = img.shape
    g = cfg.gravity
    omega = cfg.tonal_scale
    offsets = _window_offsets(cfg.window_radius)

    values = img.copy()
    for _ in range(cfg.iterations):
        force = np.zeros_like(values)
        for dr, dc in offsets:
            ctr = (slice(max(0, -dr), rows - max(0, dr)),
                   slice(max(0, -dc), cols - max(0, dc)))
            nbr = (slice(max(0, dr), rows - max(0, -dr)),
                   slice(max(0, dc), cols - max(0, -dc)))
            dt = omega * (values[nbr] - values[ctr])
            d2 = float(dr * dr + dc * dc) + dt * dt
            # d2 >= 1 on the grid; the guard covers hypothetical coincident
            # particles, which must contribute no force.
            contrib = np.divide(g * dt, d2 ** 1.5,
                                out=np.zeros_like(dt), where=d2 > 0.0)
            force[ctr] += contrib
        values = np.clip(values + force / omega, 0.0, 1.0)
    return values


def smooth(img, cfg: SmoothingConfig) -> np.ndarray:
    """Apply the conditioning step described by ``cfg``."""
    if isinstance(cfg, GaussianConfig):
        return gaussian_smooth(img, cfg.sigma)
    if isinstance(cfg, GravitationalConfig):
        return gravitational_smooth(img, cfg)
    raise TypeError(f"unsupported smoothing config {cfg!r}")
