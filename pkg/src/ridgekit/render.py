"""Grayscale overlays for the ``inspect`` stage dumps."""
from __future__ import annotations

import numpy as np

from ridgekit.corepoint import CorePoint
from ridgekit.minutiae import Kind, MinutiaeSet
from ridgekit.orientation import OrientationField


def faded(img: np.ndarray) -> np.ndarray:
    """Compress intensities into [128, 255] so black markings stand out."""
    return (128 + img.astype(np.uint16) // 2).astype(np.uint8)


def binary_image(b: np.ndarray) -> np.ndarray:
    """Ridge pixels black on white."""
    return np.where(np.asarray(b, dtype=bool), 0, 255).astype(np.uint8)


def draw_line(canvas: np.ndarray, x0: float, y0: float, x1: float, y1: float, value: int = 0) -> None:
    n = int(max(abs(x1 - x0), abs(y1 - y0))) + 1
    xs = np.rint(np.linspace(x0, x1, n)).astype(int)
    ys = np.rint(np.linspace(y0, y1, n)).astype(int)
    ok = (xs >= 0) & (xs < canvas.shape[1]) & (ys >= 0) & (ys < canvas.shape[0])
    canvas[ys[ok], xs[ok]] = value


def orientation_overlay(img: np.ndarray, field: OrientationField) -> np.ndarray:
    canvas = faded(img)
    half = 0.4 * field.block_size
    for by in range(field.shape[0]):
        for bx in range(field.shape[1]):
            if field.coherence[by, bx] <= 0:
                continue
            cx = (bx + 0.5) * field.block_size
            cy = (by + 0.5) * field.block_size
            dx, dy = half * np.cos(field.theta[by, bx]), half * np.sin(field.theta[by, bx])
            draw_line(canvas, cx - dx, cy - dy, cx + dx, cy + dy)
    return canvas


def strength_map(strength: np.ndarray, block_size: int, shape, core: CorePoint | None) -> np.ndarray:
    big = np.kron(strength, np.ones((block_size, block_size)))[: shape[0], : shape[1]]
    canvas = np.zeros(shape, dtype=np.uint8)
    canvas[: big.shape[0], : big.shape[1]] = np.rint(255 * np.clip(big, 0, 1)).astype(np.uint8)
    if core is not None:
        mark_cross(canvas, core.x, core.y, 6, value=0)
        mark_cross(canvas, core.x, core.y, 5, value=255)
    return canvas


def mark_cross(canvas: np.ndarray, x: int, y: int, size: int, value: int = 0) -> None:
    draw_line(canvas, x - size, y, x + size, y, value)
    draw_line(canvas, x, y - size, x, y + size, value)


def mark_square(canvas: np.ndarray, x: int, y: int, size: int, value: int = 0) -> None:
    for a, b, c, d in ((-1, -1, 1, -1), (1, -1, 1, 1), (1, 1, -1, 1), (-1, 1, -1, -1)):
        draw_line(canvas, x + a * size, y + b * size, x + c * size, y + d * size, value)


def minutiae_overlay(skeleton: np.ndarray, mset: MinutiaeSet) -> np.ndarray:
    """Terminations as squares, bifurcations as crosses, the core as a large cross."""
    canvas = np.where(np.asarray(skeleton, dtype=bool), 160, 255).astype(np.uint8)
    for m in mset:
        if m.kind is Kind.TERMINATION:
            mark_square(canvas, m.x, m.y, 3)
        else:
            mark_cross(canvas, m.x, m.y, 4)
    mark_cross(canvas, mset.core.x, mset.core.y, 8)
    return canvas
