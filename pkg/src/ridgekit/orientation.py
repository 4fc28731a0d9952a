"""Block-wise ridge orientation from Sobel gradient moments."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from ridgekit.errors import ImageTooSmall
from ridgekit.imageio import as_gray


@dataclass(frozen=True)
class BlockGradients:
    block_size: int
    gxx: np.ndarray
    gyy: np.ndarray
    gxy: np.ndarray

    @property
    def shape(self) -> tuple[int, int]:
        return self.gxx.shape


@dataclass(frozen=True)
class OrientationField:
    """Per-block ridge angle in ``[0, pi)`` (image axes, y pointing down)."""

    block_size: int
    theta: np.ndarray
    coherence: np.ndarray

    @property
    def shape(self) -> tuple[int, int]:
        return self.theta.shape

    def angle_at(self, x: float, y: float) -> float:
        by = min(int(y) // self.block_size, self.theta.shape[0] - 1)
        bx = min(int(x) // self.block_size, self.theta.shape[1] - 1)
        return float(self.theta[by, bx])

    def per_pixel(self, height: int, width: int) -> np.ndarray:
        """Replicate block angles onto a ``height`` x ``width`` pixel grid."""
        rows = np.minimum(np.arange(height) // self.block_size, self.theta.shape[0] - 1)
        cols = np.minimum(np.arange(width) // self.block_size, self.theta.shape[1] - 1)
        return self.theta[np.ix_(rows, cols)]


def sobel_gradients(img) -> tuple[np.ndarray, np.ndarray]:
    x = as_gray(img).astype(np.float64)
    gx = ndimage.sobel(x, axis=1, mode="mirror")
    gy = ndimage.sobel(x, axis=0, mode="mirror")
    return gx, gy


def _block_sum(a: np.ndarray, block: int) -> np.ndarray:
    rows = np.arange(0, a.shape[0], block)
    cols = np.arange(0, a.shape[1], block)
    return np.add.reduceat(np.add.reduceat(a, rows, axis=0), cols, axis=1)


def block_gradients(img, block_size: int = 10) -> BlockGradients:
    if block_size < 3:
        raise ValueError("block_size must be >= 3")
    img = as_gray(img)
    if img.shape[0] < block_size or img.shape[1] < block_size:
        raise ImageTooSmall(f"image {img.shape} smaller than one {block_size}px block")
    gx, gy = sobel_gradients(img)
    return BlockGradients(
        block_size=block_size,
        gxx=_block_sum(gx * gx, block_size),
        gyy=_block_sum(gy * gy, block_size),
        gxy=_block_sum(gx * gy, block_size),
    )


def ridge_orientation(grads: BlockGradients) -> OrientationField:
    gxx, gyy, gxy = grads.gxx, grads.gyy, grads.gxy
    energy = gxx + gyy
    flat = energy <= 0
    # dominant gradient direction; ridges run perpendicular to it
    gradient_angle = 0.5 * np.arctan2(2.0 * gxy, gxx - gyy)
    theta = np.mod(gradient_angle + np.pi / 2, np.pi)
    coherence = np.sqrt((gxx - gyy) ** 2 + 4.0 * gxy**2) / np.where(flat, 1.0, energy)
    theta = np.where(flat, 0.0, _wrap(theta))
    coherence = np.where(flat, 0.0, np.clip(coherence, 0.0, 1.0))
    return OrientationField(grads.block_size, theta, coherence)


def _wrap(theta: np.ndarray) -> np.ndarray:
    theta = np.mod(theta, np.pi)
    # np.mod can return pi itself for tiny negative inputs
    return np.where(theta >= np.pi, 0.0, theta)


def smooth_orientation(field: OrientationField, sigma: float = 1.0) -> OrientationField:
    """Gaussian smoothing in the doubled-angle domain, weighted by coherence."""
    if sigma <= 0:
        raise ValueError("sigma must be > 0")
    c = field.coherence * np.cos(2 * field.theta)
    s = field.coherence * np.sin(2 * field.theta)
    c = ndimage.gaussian_filter(c, sigma, mode="nearest", truncate=3.0)
    s = ndimage.gaussian_filter(s, sigma, mode="nearest", truncate=3.0)
    magnitude = np.hypot(c, s)
    theta = np.where(magnitude > 0, _wrap(0.5 * np.arctan2(s, c)), 0.0)
    return OrientationField(field.block_size, theta, np.clip(magnitude, 0.0, 1.0))


def orientation_field(img, block_size: int = 10, sigma: float | None = 1.0) -> OrientationField:
    field = ridge_orientation(block_gradients(img, block_size))
    if sigma:
        field = smooth_orientation(field, sigma)
    return field
