"""Polar complex signature of the minutiae around the core, and its Fourier template."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ridgekit.corepoint import CorePoint
from ridgekit.errors import BadDescriptorCount, EmptyMinutiaeSet
from ridgekit.minutiae import Minutia, MinutiaeSet


@dataclass(frozen=True)
class ComplexSignature:
    values: np.ndarray  # complex128, ordered by (angle, radius)

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class Template:
    descriptors: np.ndarray
    signature_length: int
    radius: int
    finger_id: int = 0
    impression_id: int = 0

    @property
    def count(self) -> int:
        return len(self.descriptors)

    @property
    def id(self) -> str:
        return f"{self.finger_id}_{self.impression_id}"

    @property
    def sort_key(self) -> tuple[int, int]:
        return (self.finger_id, self.impression_id)

    def with_ids(self, finger_id: int, impression_id: int) -> "Template":
        return Template(self.descriptors, self.signature_length, self.radius, finger_id, impression_id)


def to_polar(core: CorePoint, m: Minutia) -> tuple[float, float]:
    dx = m.x - core.x
    dy = m.y - core.y
    r = math.hypot(dx, dy)
    if r == 0:
        return 0.0, 0.0
    return r, math.atan2(dy, dx)


def build_signature(mset: MinutiaeSet) -> ComplexSignature:
    if len(mset) == 0:
        raise EmptyMinutiaeSet("cannot build a signature from zero minutiae")
    polar = sorted((theta, r) for r, theta in (to_polar(mset.core, m) for m in mset))
    values = np.array([r * complex(math.cos(t), math.sin(t)) for t, r in polar], dtype=np.complex128)
    return ComplexSignature(values)


def fourier_coefficients(sig: ComplexSignature, length: int) -> tuple[np.ndarray, int]:
    """Zero-padded DFT of the signature; returns ``(coefficients, entries_used)``."""
    values = np.asarray(sig.values, dtype=np.complex128)
    if len(values) > length:
        # keep the entries nearest the core, preserving the angular order
        keep = np.sort(np.argsort(np.abs(values), kind="stable")[:length])
        values = values[keep]
    padded = np.zeros(length, dtype=np.complex128)
    padded[: len(values)] = values
    return np.fft.fft(padded), len(values)


def fourier_template(
    sig: ComplexSignature,
    length: int = 128,
    count: int = 80,
    mode: str = "real",
    radius: int = 0,
    normalize: bool = True,
) -> Template:
    """First ``count`` DFT coefficients of the padded signature.

    ``mode="real"`` keeps their real parts; ``mode="magnitude"`` their moduli,
    which are unchanged when every minutia is rotated about the core.
    """
    if count > length or count < 1:
        raise BadDescriptorCount(f"descriptor count {count} must lie in [1, {length}]")
    coeffs, used = fourier_coefficients(sig, length)
    head = coeffs[:count]
    if mode == "real":
        desc = head.real.copy()
    elif mode == "magnitude":
        desc = np.abs(head)
    else:
        raise ValueError(f"unknown descriptor mode {mode!r}")
    if normalize:
        desc = desc / max(1, used)
    return Template(desc.astype(np.float64), length, radius)


def template_from_minutiae(mset: MinutiaeSet, length: int, count: int, mode: str = "real") -> Template:
    return fourier_template(build_signature(mset), length, count, mode, radius=mset.radius)
