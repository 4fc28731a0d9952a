"""End-to-end feature extraction: raster in, template out.

The work splits in two: everything up to the core point is independent of
the ROI radius and is computed once per image (:func:`prepare`); the ROI
dependent tail (:func:`features_for_radius`) is then cheap to repeat for
several radii.
"""
from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from ridgekit.config import PipelineConfig
from ridgekit.corepoint import CoreDetection, CorePoint, RoiMask, extract_roi, locate_core
from ridgekit.descriptor import Template, build_signature, fourier_template
from ridgekit.enhance import adaptive_denoise, equalize
from ridgekit.errors import NoCoreFound
from ridgekit.imageio import as_gray, load_grayscale, resize
from ridgekit.minutiae import MinutiaeSet, extract_minutiae, remove_spurious
from ridgekit.orientation import OrientationField
from ridgekit.ridgemap import binarize, ridge_skeleton


@dataclass(frozen=True)
class Prepared:
    resized: np.ndarray
    enhanced: np.ndarray
    detection: CoreDetection

    @property
    def core(self) -> CorePoint:
        if self.detection.core is None:
            raise NoCoreFound("no orientation singularity above the core threshold")
        return self.detection.core

    @property
    def field(self) -> OrientationField:
        return self.detection.field


@dataclass(frozen=True)
class RoiFeatures:
    roi: np.ndarray
    mask: RoiMask
    binary: np.ndarray
    thinned: np.ndarray
    cleaned: np.ndarray
    minutiae: MinutiaeSet


def prepare(img, cfg: PipelineConfig) -> Prepared:
    """Resize, enhance and locate the core (never raises NoCoreFound)."""
    size = cfg.working_size
    resized = resize(as_gray(img), size, size)
    enhanced = adaptive_denoise(equalize(resized), cfg.denoise_window)
    return Prepared(resized, enhanced, locate_core(enhanced, cfg))


def features_for_radius(prep: Prepared, cfg: PipelineConfig, radius: int | None = None) -> RoiFeatures:
    radius = cfg.roi_radius if radius is None else radius
    roi, mask = extract_roi(prep.enhanced, prep.core, radius)
    if cfg.roi_equalize:
        roi = equalize(roi, mask.inside)
    binary = binarize(roi, cfg.binarize_threshold, mask.inside)
    thinned, cleaned = ridge_skeleton(binary, cfg.spur_iterations)
    raw = extract_minutiae(cleaned, mask, prep.field, cfg.boundary_margin)
    return RoiFeatures(roi, mask, binary, thinned, cleaned, remove_spurious(raw, cfg.prune_distance))


def make_template(mset: MinutiaeSet, cfg: PipelineConfig, count: int | None = None,
                  finger_id: int = 0, impression_id: int = 0) -> Template:
    count = cfg.descriptor_count if count is None else count
    t = fourier_template(build_signature(mset), cfg.signature_length, count,
                         cfg.descriptor_mode, radius=mset.radius)
    return t.with_ids(finger_id, impression_id)


def template_from_image(img, cfg: PipelineConfig, finger_id: int = 0, impression_id: int = 0) -> Template:
    feats = features_for_radius(prepare(img, cfg), cfg)
    return make_template(feats.minutiae, cfg, finger_id=finger_id, impression_id=impression_id)


def template_from_path(path: str | os.PathLike, cfg: PipelineConfig,
                       finger_id: int = 0, impression_id: int = 0) -> Template:
    return template_from_image(load_grayscale(path), cfg, finger_id, impression_id)
