"""Core (singular point) detection and circular region-of-interest extraction."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from ridgekit.config import PipelineConfig
from ridgekit.errors import BadRadius, FieldTooSmall, NoCoreFound
from ridgekit.imageio import as_gray
from ridgekit.orientation import (
    OrientationField,
    block_gradients,
    ridge_orientation,
    smooth_orientation,
)

BACKGROUND = 255


@dataclass(frozen=True)
class CorePoint:
    x: int
    y: int
    strength: float


@dataclass(frozen=True)
class RoiMask:
    center: CorePoint
    radius: int
    inside: np.ndarray
    clipped: bool

    @property
    def area(self) -> int:
        return int(self.inside.sum())


@dataclass(frozen=True)
class CoreDetection:
    """Everything computed on the way to the core, kept for inspection."""

    core: CorePoint | None
    field: OrientationField
    strength: np.ndarray
    search: np.ndarray


def curvature_strength(field: OrientationField) -> np.ndarray:
    """1 - |mean doubled-angle unit vector| over each 3x3 block neighbourhood.

    Border blocks have no full neighbourhood and are left at 0.
    """
    rows, cols = field.shape
    if rows < 3 or cols < 3:
        raise FieldTooSmall(f"orientation field {field.shape} is smaller than 3x3 blocks")
    c = np.cos(2 * field.theta)
    s = np.sin(2 * field.theta)
    sum_c = sum(c[dy : rows - 2 + dy, dx : cols - 2 + dx] for dy in range(3) for dx in range(3))
    sum_s = sum(s[dy : rows - 2 + dy, dx : cols - 2 + dx] for dy in range(3) for dx in range(3))
    strength = np.zeros(field.shape)
    strength[1:-1, 1:-1] = 1.0 - np.hypot(sum_c, sum_s) / 9.0
    return np.clip(strength, 0.0, 1.0)


def foreground_blocks(energy: np.ndarray, coherence: np.ndarray, fraction: float,
                      min_coherence: float) -> np.ndarray:
    """Blocks carrying oriented ridge texture, shrunk by one block.

    Equalization amplifies sensor noise in the background, so gradient
    energy alone does not separate it; noise is also incoherent.
    """
    fg = (energy > max(fraction * energy.mean(), 0.0)) & (coherence > min_coherence)
    fg = ndimage.binary_opening(fg, structure=np.ones((3, 3)), border_value=0)
    fg = ndimage.binary_fill_holes(fg)
    return ndimage.binary_erosion(fg, structure=np.ones((3, 3)), border_value=0)


def locate_core(img, cfg: PipelineConfig = PipelineConfig()) -> CoreDetection:
    img = as_gray(img)
    grads = block_gradients(img, cfg.block_size)
    raw = ridge_orientation(grads)
    field = smooth_orientation(raw, cfg.smoothing_sigma)
    strength = curvature_strength(field)
    search = foreground_blocks(grads.gxx + grads.gyy, raw.coherence,
                               cfg.foreground_fraction, cfg.foreground_coherence)
    search[0, :] = search[-1, :] = False
    search[:, 0] = search[:, -1] = False
    candidates = np.where(search, strength, 0.0)
    # np.argmax returns the first maximum in row-major order: smaller y, then x
    by, bx = np.unravel_index(np.argmax(candidates), candidates.shape)
    peak = float(candidates[by, bx])
    if peak < cfg.core_threshold or peak <= 0:
        return CoreDetection(None, field, strength, search)
    x, y = _refine(candidates, by, bx, cfg.block_size)
    h, w = img.shape
    core = CorePoint(int(min(max(round(x), 0), w - 1)), int(min(max(round(y), 0), h - 1)), peak)
    return CoreDetection(core, field, strength, search)


def _refine(strength: np.ndarray, by: int, bx: int, block: int) -> tuple[float, float]:
    """Sub-block peak position: strength-weighted centroid of the 3x3 around the peak."""
    win = strength[by - 1 : by + 2, bx - 1 : bx + 2]
    weights = win - win.min()
    total = weights.sum()
    if total <= 0:
        dy = dx = 0.0
    else:
        offsets = np.array([-1.0, 0.0, 1.0])
        dy = float((weights.sum(axis=1) * offsets).sum() / total)
        dx = float((weights.sum(axis=0) * offsets).sum() / total)
    centre = (block - 1) / 2.0
    return (bx + dx) * block + centre, (by + dy) * block + centre


def detect_core(img, cfg: PipelineConfig = PipelineConfig()) -> CorePoint:
    found = locate_core(img, cfg).core
    if found is None:
        raise NoCoreFound("no orientation singularity above the core threshold")
    return found


def roi_mask(shape: tuple[int, int], core: CorePoint, radius: int) -> RoiMask:
    if radius <= 0:
        raise BadRadius(f"radius must be > 0, got {radius}")
    h, w = shape
    yy, xx = np.ogrid[:h, :w]
    inside = (xx - core.x) ** 2 + (yy - core.y) ** 2 <= radius * radius
    clipped = (
        core.x - radius < 0 or core.y - radius < 0 or core.x + radius > w - 1 or core.y + radius > h - 1
    )
    return RoiMask(core, radius, inside, bool(clipped))


def extract_roi(img, core: CorePoint, radius: int) -> tuple[np.ndarray, RoiMask]:
    img = as_gray(img)
    mask = roi_mask(img.shape, core, radius)
    out = np.where(mask.inside, img, np.uint8(BACKGROUND)).astype(np.uint8)
    return out, mask
