"""Euclidean template comparison, verification and identification."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from ridgekit.descriptor import Template
from ridgekit.errors import EmptyDatabase, IncompatibleTemplates


@dataclass(frozen=True)
class MatchDecision:
    distance: float
    threshold: float
    matched: bool
    probe_id: str
    gallery_id: str

    def line(self) -> str:
        decision = "match" if self.matched else "no-match"
        return f"{self.probe_id}\t{self.gallery_id}\t{self.distance:.6f}\t{decision}"


def check_compatible(a: Template, b: Template) -> None:
    if a.count != b.count or a.radius != b.radius:
        raise IncompatibleTemplates(
            f"templates differ: K={a.count}/{b.count}, R={a.radius}/{b.radius}"
        )


def template_distance(a: Template, b: Template) -> float:
    check_compatible(a, b)
    diff = np.asarray(a.descriptors) - np.asarray(b.descriptors)
    # hypot rescales internally, so tiny or huge differences neither underflow nor overflow
    return math.hypot(*diff.tolist())


def verify(probe: Template, gallery: Template, threshold: float) -> MatchDecision:
    if threshold < 0:
        raise ValueError("threshold must be >= 0")
    d = template_distance(probe, gallery)
    return MatchDecision(d, threshold, d <= threshold, probe.id, gallery.id)


def identify(
    probe: Template, db: Iterable[Template], threshold: float
) -> tuple[str, float, MatchDecision]:
    """One-to-many search; ties go to the smallest (finger id, impression id)."""
    gallery = list(db)
    if not gallery:
        raise EmptyDatabase("template database is empty")
    scored = [(template_distance(probe, g), g.sort_key, g) for g in gallery]
    d_min, _, best = min(scored, key=lambda item: (item[0], item[1]))
    decision = MatchDecision(d_min, threshold, d_min <= threshold, probe.id, best.id)
    return best.id, d_min, decision
