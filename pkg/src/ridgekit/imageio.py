"""Raster loading, grayscale conversion, resizing and PGM output.

Images travel through the pipeline as 2-D ``uint8`` numpy arrays indexed
``[row, col]`` (``[y, x]``).
"""
from __future__ import annotations

import os
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from ridgekit.errors import CorruptImage, UnsupportedFormat, ZeroDimension

SUPPORTED_FORMATS = {"PPM", "TIFF", "PNG", "BMP"}


def as_gray(img) -> np.ndarray:
    """Validate and return ``img`` as a 2-D uint8 array."""
    arr = np.asarray(img)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D grayscale array, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ZeroDimension("image has a zero dimension")
    if arr.dtype != np.uint8:
        if arr.size and (arr.min() < 0 or arr.max() > 255):
            raise ValueError("intensities must lie in [0, 255]")
        arr = arr.astype(np.uint8)
    return arr


def load_grayscale(path: str | os.PathLike) -> np.ndarray:
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(path)
    try:
        with Image.open(path) as im:
            if im.format not in SUPPORTED_FORMATS:
                raise UnsupportedFormat(f"{path}: {im.format} is not a supported lossless format")
            im.load()
            return _to_gray(im)
    except UnidentifiedImageError:
        raise UnsupportedFormat(f"{path}: unrecognised image format") from None
    except (OSError, SyntaxError, ValueError) as exc:
        if isinstance(exc, UnsupportedFormat):
            raise
        raise CorruptImage(f"{path}: {exc}") from exc


def _to_gray(im: Image.Image) -> np.ndarray:
    if im.mode == "P":
        im = im.convert("RGBA" if "transparency" in im.info else "RGB")
    if im.mode == "1":
        im = im.convert("L")
    arr = np.asarray(im)
    if im.mode.startswith("I;16") or arr.dtype == np.uint16:
        return (arr.astype(np.uint32) >> 8).astype(np.uint8)
    if im.mode in ("I", "F"):
        return np.clip(np.rint(arr), 0, 255).astype(np.uint8)
    if arr.ndim == 3:
        channels = arr.shape[2]
        if channels in (2, 4):  # drop alpha
            arr = arr[..., : channels - 1]
        return np.rint(arr.astype(np.float64).mean(axis=2)).astype(np.uint8)
    return arr.astype(np.uint8, copy=False)


def resize(img, w: int, h: int) -> np.ndarray:
    """Bilinear resize to exactly ``w`` x ``h`` (pixel-centre aligned)."""
    img = as_gray(img)
    if w < 1 or h < 1:
        raise ZeroDimension(f"target size {w}x{h}")
    in_h, in_w = img.shape
    if (in_w, in_h) == (w, h):
        return img.copy()
    src = img.astype(np.float64)
    ys = _sample_coords(in_h, h)
    xs = _sample_coords(in_w, w)
    y0 = np.floor(ys).astype(int)
    x0 = np.floor(xs).astype(int)
    y1 = np.minimum(y0 + 1, in_h - 1)
    x1 = np.minimum(x0 + 1, in_w - 1)
    fy = (ys - y0)[:, None]
    fx = (xs - x0)[None, :]
    top = src[y0][:, x0] * (1 - fx) + src[y0][:, x1] * fx
    bottom = src[y1][:, x0] * (1 - fx) + src[y1][:, x1] * fx
    out = top * (1 - fy) + bottom * fy
    return np.clip(np.rint(out), 0, 255).astype(np.uint8)


def _sample_coords(n_in: int, n_out: int) -> np.ndarray:
    scale = n_in / n_out
    coords = (np.arange(n_out) + 0.5) * scale - 0.5
    return np.clip(coords, 0, n_in - 1)


def save_pgm(img, path: str | os.PathLike) -> None:
    """Write a binary (P5) portable graymap."""
    img = as_gray(img)
    h, w = img.shape
    with open(path, "wb") as fh:
        fh.write(f"P5\n{w} {h}\n255\n".encode("ascii"))
        fh.write(np.ascontiguousarray(img).tobytes())
