"""Crossing-number minutiae extraction and distance-based pruning."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import ndimage

from ridgekit import kernels
from ridgekit.corepoint import CorePoint, RoiMask
from ridgekit.errors import NotThinned
from ridgekit.orientation import OrientationField
from ridgekit.ridgemap import has_thick_block


class Kind(enum.Enum):
    TERMINATION = "termination"
    BIFURCATION = "bifurcation"


@dataclass(frozen=True)
class Minutia:
    x: int
    y: int
    kind: Kind
    angle: float = 0.0


@dataclass(frozen=True)
class MinutiaeSet:
    items: tuple[Minutia, ...]
    core: CorePoint
    radius: int

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def count(self, kind: Kind) -> int:
        return sum(1 for m in self.items if m.kind is kind)

    def to_csv(self) -> str:
        rows = ["x,y,kind,angle"]
        rows += [f"{m.x},{m.y},{m.kind.value},{m.angle:.6f}" for m in self.items]
        return "\n".join(rows) + "\n"


def crossing_number(neighbours: Sequence[int | bool]) -> int:
    """Half the summed absolute differences around the circular 8-neighbourhood.

    ``neighbours`` is P1..P8 in circular order; P9 wraps to P1.
    """
    p = [int(bool(v)) for v in neighbours]
    if len(p) != 8:
        raise ValueError("need exactly eight neighbour values")
    return sum(abs(p[i] - p[(i + 1) % 8]) for i in range(8)) // 2


def interior(mask: np.ndarray, margin: int) -> np.ndarray:
    """Mask pixels farther than ``margin`` from anything outside the mask."""
    mask = np.asarray(mask, dtype=bool)
    if margin <= 0:
        return mask
    dist = ndimage.distance_transform_edt(np.pad(mask, 1))[1:-1, 1:-1]
    return dist > margin


def extract_minutiae(
    skeleton: np.ndarray,
    mask: RoiMask,
    field: OrientationField,
    margin: int = 10,
) -> MinutiaeSet:
    skel = np.asarray(skeleton, dtype=bool)
    if has_thick_block(skel):
        raise NotThinned("skeleton contains a 2x2 block of ridge pixels")
    cn = kernels.crossing_numbers(skel)
    usable = interior(mask.inside, margin)
    items = []
    for kind, value in ((Kind.TERMINATION, 1), (Kind.BIFURCATION, 3)):
        ys, xs = np.nonzero((cn == value) & usable)
        items += [Minutia(int(x), int(y), kind, field.angle_at(x, y)) for y, x in zip(ys, xs)]
    items.sort(key=lambda m: (m.y, m.x))
    return MinutiaeSet(tuple(items), mask.center, mask.radius)


def remove_spurious(mset: MinutiaeSet, distance: float = 6.0) -> MinutiaeSet:
    """Drop both members of every pair closer than ``distance``; repeat to a fixpoint."""
    if distance <= 0:
        raise ValueError("distance must be > 0")
    items = list(mset.items)
    while len(items) > 1:
        pts = np.array([(m.x, m.y) for m in items], dtype=np.float64)
        d2 = ((pts[:, None, :] - pts[None, :, :]) ** 2).sum(axis=2)
        np.fill_diagonal(d2, np.inf)
        close = (d2 < distance * distance).any(axis=1)
        if not close.any():
            break
        items = [m for m, bad in zip(items, close) if not bad]
    return MinutiaeSet(tuple(items), mset.core, mset.radius)
