"""Pure Python / numpy implementations of the pixel-neighbourhood kernels.

Semantics must match ``_ckernels.pyx`` exactly; the test suite compares them.
"""
from __future__ import annotations

import numpy as np

# Neighbour offsets (dy, dx) in circular order starting north, clockwise:
# P2=N, P3=NE, P4=E, P5=SE, P6=S, P7=SW, P8=W, P9=NW.
RING = ((-1, 0), (-1, 1), (0, 1), (1, 1), (1, 0), (1, -1), (0, -1), (-1, -1))


def _neighbour_stack(img: np.ndarray) -> np.ndarray:
    p = np.pad(img.astype(np.uint8, copy=False), 1)
    h, w = img.shape
    return np.stack([p[1 + dy : 1 + dy + h, 1 + dx : 1 + dx + w] for dy, dx in RING])


def crossing_numbers(skel: np.ndarray) -> np.ndarray:
    """Crossing number of every ridge pixel (0 elsewhere); outside pixels are 0."""
    n = _neighbour_stack(skel).astype(np.int16)
    diffs = np.abs(n - np.roll(n, -1, axis=0)).sum(axis=0)
    return np.where(skel.astype(bool), diffs // 2, 0).astype(np.int8)


def _zs_candidates(img: np.ndarray, first: bool) -> np.ndarray:
    n = _neighbour_stack(img)
    count = n.sum(axis=0)
    transitions = ((n == 0) & (np.roll(n, -1, axis=0) == 1)).sum(axis=0)
    p2, p4, p6, p8 = n[0], n[2], n[4], n[6]
    if first:
        directional = (p2 * p4 * p6 == 0) & (p4 * p6 * p8 == 0)
    else:
        directional = (p2 * p4 * p8 == 0) & (p2 * p6 * p8 == 0)
    return (img == 1) & (count >= 2) & (count <= 6) & (transitions == 1) & directional


class _Grid:
    """Zero-padded flat bytearray view for fast scalar neighbour access."""

    def __init__(self, img: np.ndarray):
        h, w = img.shape
        self.h, self.w, self.stride = h, w, w + 2
        padded = np.pad(img.astype(np.uint8), 1)
        self.buf = bytearray(padded.tobytes())
        s = self.stride
        self.offsets = [dy * s + dx for dy, dx in RING]

    def index(self, y: int, x: int) -> int:
        return (y + 1) * self.stride + x + 1

    def ring(self, i: int) -> list[int]:
        buf = self.buf
        return [buf[i + o] for o in self.offsets]

    def to_array(self) -> np.ndarray:
        arr = np.frombuffer(bytes(self.buf), dtype=np.uint8).reshape(self.h + 2, self.w + 2)
        return arr[1:-1, 1:-1].copy()


def _simple_ring(ring: list[int]) -> bool:
    count = sum(ring)
    if count < 2 or count > 6:
        return False
    transitions = 0
    for k in range(8):
        if ring[k] == 0 and ring[(k + 1) % 8] == 1:
            transitions += 1
    return transitions == 1


def _eight_components(ring: list[int]) -> int:
    m = list(ring)
    for k in (1, 3, 5, 7):  # corners bridge two adjacent edge neighbours
        if not m[k] and ring[k - 1] and ring[(k + 1) % 8]:
            m[k] = 1
    if all(m):
        return 1
    return sum(1 for k in range(8) if m[k] == 0 and m[(k + 1) % 8] == 1)


def _zs_pass(grid: _Grid, img: np.ndarray, first: bool) -> bool:
    ys, xs = np.nonzero(_zs_candidates(img, first))
    changed = False
    buf = grid.buf
    for y, x in zip(ys.tolist(), xs.tolist()):
        i = grid.index(y, x)
        if _simple_ring(grid.ring(i)):
            buf[i] = 0
            changed = True
    return changed


def _block_pass(grid: _Grid, img: np.ndarray) -> bool:
    blocks = (img[:-1, :-1] & img[1:, :-1] & img[:-1, 1:] & img[1:, 1:]).astype(bool)
    if not blocks.any():
        return False
    member = np.zeros(img.shape, dtype=bool)
    member[:-1, :-1] |= blocks
    member[1:, :-1] |= blocks
    member[:-1, 1:] |= blocks
    member[1:, 1:] |= blocks
    buf, s = grid.buf, grid.stride
    changed = False
    for y, x in zip(*(a.tolist() for a in np.nonzero(member))):
        i = grid.index(y, x)
        if not buf[i]:
            continue
        in_block = (
            (buf[i - s] and buf[i - s + 1] and buf[i + 1])
            or (buf[i + 1] and buf[i + s + 1] and buf[i + s])
            or (buf[i + s] and buf[i + s - 1] and buf[i - 1])
            or (buf[i - 1] and buf[i - s - 1] and buf[i - s])
        )
        if not in_block:
            continue
        ring = grid.ring(i)
        if sum(ring) >= 2 and _eight_components(ring) == 1:
            buf[i] = 0
            changed = True
    return changed


def thin(binary: np.ndarray) -> np.ndarray:
    """Zhang-Suen thinning with topology re-check and 2x2 block breaking."""
    img = (np.asarray(binary) != 0).astype(np.uint8)
    if not img.any():
        return img
    grid = _Grid(img)
    while True:
        changed = False
        for first in (True, False):
            if _zs_pass(grid, img, first):
                changed = True
                img = grid.to_array()
        if not changed:
            if not _block_pass(grid, img):
                break
            img = grid.to_array()
    return img
