"""Binarization, thinning and skeleton clean-up (clean, spur, H-break).

Binary images are 2-D boolean arrays; ``True`` marks a ridge pixel.
"""
from __future__ import annotations

import numpy as np

from ridgekit import kernels
from ridgekit.imageio import as_gray

_H_HORIZONTAL = np.array([[1, 1, 1], [0, 1, 0], [1, 1, 1]], dtype=bool)
_H_VERTICAL = _H_HORIZONTAL.T


def binarize(img, threshold: int = 160, mask: np.ndarray | None = None) -> np.ndarray:
    """Ridge pixels are the dark ones: ``intensity < threshold``."""
    if not 0 <= threshold <= 255:
        raise ValueError(f"threshold must lie in [0, 255], got {threshold}")
    out = as_gray(img) < threshold
    if mask is not None:
        out &= np.asarray(mask, dtype=bool)
    return out


def thin(binary) -> np.ndarray:
    return kernels.thin(np.asarray(binary, dtype=bool)).astype(bool)


def _as_binary(binary) -> np.ndarray:
    arr = np.asarray(binary)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D binary image, got shape {arr.shape}")
    return arr.astype(bool)


def neighbour_count(binary) -> np.ndarray:
    b = _as_binary(binary)
    p = np.pad(b, 1).astype(np.uint8)
    h, w = b.shape
    total = np.zeros((h, w), dtype=np.uint8)
    for dy in (-1, 0, 1):
        for dx in (-1, 0, 1):
            if dy or dx:
                total += p[1 + dy : 1 + dy + h, 1 + dx : 1 + dx + w]
    return total


def clean(binary) -> np.ndarray:
    """Remove isolated ridge pixels."""
    b = _as_binary(binary)
    return b & (neighbour_count(b) > 0)


def _spur_once(b: np.ndarray) -> np.ndarray:
    counts = neighbour_count(b)
    ends = b & (counts == 1)
    if not ends.any():
        return b
    # An endpoint whose only neighbour is itself an endpoint belongs to an
    # isolated two-pixel piece; keep the later pixel (raster order) so the
    # piece survives as a single dot instead of vanishing.
    p = np.pad(ends, 1)
    h, w = b.shape
    keep = np.zeros_like(ends)
    for dy, dx in ((-1, -1), (-1, 0), (-1, 1), (0, -1)):
        earlier_end = p[1 + dy : 1 + dy + h, 1 + dx : 1 + dx + w]
        keep |= ends & earlier_end
    return b & ~(ends & ~keep)


def spur(binary, n: int = 8) -> np.ndarray:
    """Peel endpoint pixels ``n`` times; isolated pixels are left alone."""
    if n < 1:
        raise ValueError(f"spur iterations must be >= 1, got {n}")
    b = _as_binary(binary)
    for _ in range(n):
        nxt = _spur_once(b)
        if nxt is b or np.array_equal(nxt, b):
            break
        b = nxt
    return b


def hbreak(binary) -> np.ndarray:
    """Delete the centre of every exact 3x3 H pattern (either orientation)."""
    b = _as_binary(binary)
    h, w = b.shape
    p = np.pad(b, 1)
    horiz = np.ones((h, w), dtype=bool)
    vert = np.ones((h, w), dtype=bool)
    for dy in range(3):
        for dx in range(3):
            win = p[dy : dy + h, dx : dx + w]
            horiz &= win == _H_HORIZONTAL[dy, dx]
            vert &= win == _H_VERTICAL[dy, dx]
    return b & ~(horiz | vert)


def has_thick_block(binary) -> bool:
    b = _as_binary(binary)
    return bool((b[:-1, :-1] & b[1:, :-1] & b[:-1, 1:] & b[1:, 1:]).any())


def ridge_skeleton(binary, spur_iterations: int = 8) -> tuple[np.ndarray, np.ndarray]:
    """Thin, then clean -> H-break -> spur. Returns ``(thinned, cleaned)``."""
    thinned = thin(binary)
    cleaned = hbreak(clean(thinned))
    if spur_iterations > 0:
        cleaned = spur(cleaned, spur_iterations)
    return thinned, cleaned
