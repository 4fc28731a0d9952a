"""Global histogram equalization and an adaptive (Wiener-style) local filter."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from ridgekit.errors import BadWindow
from ridgekit.imageio import as_gray

GRAY_LEVELS = 256


@dataclass(frozen=True)
class Histogram:
    counts: np.ndarray
    total: int


def histogram(img) -> Histogram:
    img = as_gray(img)
    counts = np.bincount(img.ravel(), minlength=GRAY_LEVELS).astype(np.int64)
    return Histogram(counts=counts, total=int(img.size))


def equalize(img, mask: np.ndarray | None = None) -> np.ndarray:
    """Remap intensities through the normalised cumulative histogram.

    With ``mask`` the histogram is taken over the masked pixels only and
    pixels outside the mask are returned unchanged.
    """
    img = as_gray(img)
    if mask is None:
        hist = histogram(img)
    else:
        mask = np.asarray(mask, dtype=bool)
        if not mask.any():
            return img.copy()
        hist = histogram(img[mask][None, :])
    cdf = np.cumsum(hist.counts) / hist.total
    lut = np.rint(255.0 * cdf).astype(np.uint8)
    out = lut[img]
    if mask is not None:
        out = np.where(mask, out, img)
    return out


def local_statistics(img, window: int) -> tuple[np.ndarray, np.ndarray]:
    """Window mean and (population) variance with mirror padding."""
    x = as_gray(img).astype(np.float64)
    mean = ndimage.uniform_filter(x, size=window, mode="mirror")
    mean_sq = ndimage.uniform_filter(x * x, size=window, mode="mirror")
    var = np.maximum(mean_sq - mean * mean, 0.0)
    return mean, var


def adaptive_denoise(img, window: int = 3) -> np.ndarray:
    """Adaptive local noise filter.

    The noise power is estimated as the mean of all local variances; each
    pixel is pulled toward its window mean by ``noise / local_variance``.
    """
    if window < 3 or window % 2 == 0:
        raise BadWindow(f"window must be odd and >= 3, got {window}")
    x = as_gray(img).astype(np.float64)
    mean, var = local_statistics(x, window)
    noise = var.mean()
    gain = np.maximum(var - noise, 0.0) / np.maximum(np.maximum(var, noise), 1e-12)
    out = mean + gain * (x - mean)
    return np.clip(np.rint(out), 0, 255).astype(np.uint8)


def enhance(img, window: int = 3) -> np.ndarray:
    return adaptive_denoise(equalize(img), window)
