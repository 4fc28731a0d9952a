"""Synthetic test imagery: oriented stripes, concentric rings and fingerprints.

Fingerprints are grown by iterated Gabor filtering of noise along an
orientation field built from core/delta singularities. Impressions of one
finger share the master ridge pattern and differ in placement, rotation,
contact area, pressure and sensor noise. Everything is seeded and
deterministic.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy import fft, ndimage

RIDGE_PERIOD = 9.0
IMPRESSION_SHAPE = (374, 388)  # rows, cols of an FVC2002 DB1 image


def stripes(shape, angle: float, period: float = RIDGE_PERIOD, phase: float = 0.0) -> np.ndarray:
    """Sinusoidal ridges running along ``angle`` (radians, image axes, y down)."""
    h, w = shape
    yy, xx = np.mgrid[:h, :w].astype(np.float64)
    across = -xx * np.sin(angle) + yy * np.cos(angle)
    return _to_gray(np.cos(2 * np.pi * across / period + phase))


def concentric_rings(shape, center, period: float = RIDGE_PERIOD) -> np.ndarray:
    h, w = shape
    cx, cy = center
    yy, xx = np.mgrid[:h, :w].astype(np.float64)
    r = np.hypot(xx - cx, yy - cy)
    return _to_gray(np.cos(2 * np.pi * r / period))


def _to_gray(wave: np.ndarray) -> np.ndarray:
    return np.clip(np.rint(127.5 + 127.5 * wave), 0, 255).astype(np.uint8)


def singularity_orientation(shape, cores, deltas, base: float = 0.0) -> np.ndarray:
    """Ridge orientation of the zero-pole model: +1/2 turn per core, -1/2 per delta."""
    h, w = shape
    yy, xx = np.mgrid[:h, :w].astype(np.float64)
    z = xx + 1j * yy
    theta = np.full(shape, base)
    for c in cores:
        theta += 0.5 * np.angle(z - complex(*c))
    for d in deltas:
        theta -= 0.5 * np.angle(z - complex(*d))
    return np.mod(theta, np.pi)


def _gabor_bank(shape, bins: int, period: float, sigma: float) -> np.ndarray:
    h, w = shape
    half = int(3 * sigma)
    yy, xx = np.mgrid[-half : half + 1, -half : half + 1].astype(np.float64)
    envelope = np.exp(-(xx**2 + yy**2) / (2 * sigma**2))
    bank = []
    for b in range(bins):
        phi = np.pi * b / bins
        across = -xx * np.sin(phi) + yy * np.cos(phi)
        kernel = envelope * np.cos(2 * np.pi * across / period)
        kernel -= kernel.mean()
        kernel /= np.abs(kernel).sum()
        padded = np.zeros(shape)
        padded[: kernel.shape[0], : kernel.shape[1]] = kernel
        padded = np.roll(padded, (-half, -half), axis=(0, 1))
        bank.append(fft.rfft2(padded))
    return np.array(bank)


def grow_ridges(theta: np.ndarray, rng: np.random.Generator, period: float = RIDGE_PERIOD,
                iterations: int = 7, bins: int = 24) -> np.ndarray:
    """Ridge pattern in [-1, 1] following ``theta`` (ridges where the value is > 0)."""
    shape = theta.shape
    bank = _gabor_bank(shape, bins, period, sigma=period / 2.2)
    which = np.rint(theta / np.pi * bins).astype(int) % bins
    img = rng.standard_normal(shape)
    for _ in range(iterations):
        spectrum = fft.rfft2(img)
        out = np.zeros(shape)
        for b in range(bins):
            sel = which == b
            if sel.any():
                out[sel] = fft.irfft2(spectrum * bank[b], s=shape)[sel]
        img = np.tanh(3.0 * out / (out.std() + 1e-12))
    return img


@dataclass(frozen=True)
class Finger:
    pattern: np.ndarray
    core: tuple[float, float]
    kind: str


def make_finger(seed: int, size: int = 560, kind: str | None = None) -> Finger:
    rng = np.random.default_rng(seed)
    kind = kind or rng.choice(["left_loop", "right_loop", "whorl"], p=[0.4, 0.4, 0.2])
    c = np.array([size / 2, size / 2 - 20.0]) + rng.uniform(-12, 12, 2)
    drop = rng.uniform(140, 180)
    spread = rng.uniform(90, 140)
    if kind == "whorl":
        gap = rng.uniform(12, 22)
        cores = [tuple(c + (-gap / 2, 0)), tuple(c + (gap / 2, 0))]
        deltas = [tuple(c + (-spread, drop)), tuple(c + (spread, drop))]
    elif kind == "left_loop":
        cores, deltas = [tuple(c)], [tuple(c + (spread, drop))]
    elif kind == "right_loop":
        cores, deltas = [tuple(c)], [tuple(c + (-spread, drop))]
    else:
        raise ValueError(f"unknown finger kind {kind!r}")
    theta = singularity_orientation((size, size), cores, deltas, base=rng.uniform(-0.15, 0.15))
    period = rng.uniform(8.0, 10.0)
    return Finger(grow_ridges(theta, rng, period), (float(c[0]), float(c[1])), str(kind))


def impression(finger: Finger, seed: int, shape=IMPRESSION_SHAPE, max_rotation: float = 6.0,
               max_shift: float = 12.0, noise: float = 8.0) -> np.ndarray:
    """One sensor impression of ``finger`` as a uint8 image (dark ridges, light background)."""
    rng = np.random.default_rng(seed)
    h, w = shape
    alpha = np.deg2rad(rng.uniform(-max_rotation, max_rotation))
    shift = rng.uniform(-max_shift, max_shift, 2)
    # output pixel (row, col) -> master pixel; core lands near the image centre
    rot = np.array([[np.cos(alpha), -np.sin(alpha)], [np.sin(alpha), np.cos(alpha)]])
    out_center = np.array([h / 2 - 10.0, w / 2]) + shift
    master_core = np.array([finger.core[1], finger.core[0]])
    offset = master_core - rot @ out_center
    pattern = ndimage.affine_transform(finger.pattern, rot, offset=offset, output_shape=shape,
                                       order=1, mode="constant", cval=-1.0)
    pressure = rng.uniform(-0.25, 0.25)
    ridges = np.tanh(2.5 * (pattern + pressure))
    yy, xx = np.mgrid[:h, :w].astype(np.float64)
    ey, ex = h / 2 + rng.uniform(-10, 10), w / 2 + rng.uniform(-10, 10)
    ay, ax = rng.uniform(165, 200), rng.uniform(135, 160)
    contact = np.clip((1.0 - np.hypot((yy - ey) / ay, (xx - ex) / ax)) * 12.0, 0.0, 1.0)
    contrast = rng.uniform(85, 110)
    gray = 235.0 - contact * (95.0 + contrast * ridges)
    gray = ndimage.gaussian_filter(gray, rng.uniform(0.5, 0.9))
    gray += rng.normal(0.0, noise, shape)
    return np.clip(np.rint(gray), 0, 255).astype(np.uint8)


def write_corpus(out_dir: str | os.PathLike, fingers: int = 10, impressions: int = 8,
                 seed: int = 2002, first_id: int = 101, ext: str = "png") -> list[Path]:
    """Write ``<finger>_<impression>.<ext>`` files in the FVC naming layout."""
    from PIL import Image

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for f in range(fingers):
        finger = make_finger(seed * 1000 + f)
        for i in range(1, impressions + 1):
            img = impression(finger, seed * 100000 + f * 100 + i)
            path = out_dir / f"{first_id + f}_{i}.{ext}"
            Image.fromarray(img).save(path)
            paths.append(path)
    return paths


if __name__ == "__main__":
    import argparse

    parser = argparse.ArgumentParser(description="Write a synthetic FVC-style corpus.")
    parser.add_argument("out_dir")
    parser.add_argument("--fingers", type=int, default=10)
    parser.add_argument("--impressions", type=int, default=8)
    parser.add_argument("--seed", type=int, default=2002)
    args = parser.parse_args()
    write_corpus(args.out_dir, args.fingers, args.impressions, args.seed)
