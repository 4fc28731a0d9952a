"""Genuine/impostor scoring, FAR/FRR sweeps, EER and accuracy reporting."""
from __future__ import annotations

import itertools
import os
from collections import defaultdict
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from ridgekit.descriptor import Template
from ridgekit.errors import InsufficientData
from ridgekit.matcher import template_distance


@dataclass(frozen=True)
class ScoreSet:
    genuine: np.ndarray
    impostor: np.ndarray

    def __post_init__(self):
        for name in ("genuine", "impostor"):
            arr = np.asarray(getattr(self, name), dtype=np.float64)
            if arr.size and arr.min() < 0:
                raise ValueError(f"{name} scores must be >= 0")
            object.__setattr__(self, name, arr)


@dataclass(frozen=True)
class ErrorCurve:
    thresholds: np.ndarray
    far: np.ndarray
    frr: np.ndarray


@dataclass(frozen=True)
class EqualErrorRate:
    eer: float  # percent
    threshold: float
    degenerate: bool = False


@dataclass(frozen=True)
class EvalReport:
    radius: int
    descriptor_count: int
    eer: float
    threshold_at_eer: float
    dmin_at_eer: float
    accuracy: float
    degenerate: bool = False
    genuine_pairs: int = 0
    impostor_pairs: int = 0
    enrolled: int = 0


def collect_scores(db: Iterable[Template]) -> ScoreSet:
    """All within-finger pairs as genuine; first impressions across fingers as impostor."""
    by_finger: dict[int, list[Template]] = defaultdict(list)
    for t in db:
        by_finger[t.finger_id].append(t)
    for items in by_finger.values():
        items.sort(key=lambda t: t.impression_id)
    fingers = sorted(by_finger)
    if len(fingers) < 2 or not any(len(v) >= 2 for v in by_finger.values()):
        raise InsufficientData("need >= 2 fingers and >= 2 impressions of some finger")
    genuine = [
        template_distance(a, b)
        for f in fingers
        for a, b in itertools.combinations(by_finger[f], 2)
    ]
    firsts = [by_finger[f][0] for f in fingers]
    impostor = [template_distance(a, b) for a, b in itertools.combinations(firsts, 2)]
    return ScoreSet(np.array(genuine), np.array(impostor))


def rates_at(scores: ScoreSet, threshold: float) -> tuple[float, float]:
    """``(FAR, FRR)`` when a comparison is accepted iff distance <= threshold."""
    far = float(np.mean(scores.impostor <= threshold))
    frr = float(np.mean(scores.genuine > threshold))
    return far, frr


def error_curve(scores: ScoreSet, steps: int = 200) -> ErrorCurve:
    if steps < 2:
        raise ValueError("steps must be >= 2")
    if scores.genuine.size == 0 or scores.impostor.size == 0:
        raise InsufficientData("both genuine and impostor scores are required")
    pooled = np.concatenate([scores.genuine, scores.impostor])
    thresholds = np.linspace(pooled.min(), pooled.max(), steps)
    imp = np.sort(scores.impostor)
    gen = np.sort(scores.genuine)
    far = np.searchsorted(imp, thresholds, side="right") / imp.size
    frr = (gen.size - np.searchsorted(gen, thresholds, side="right")) / gen.size
    return ErrorCurve(thresholds, far, frr)


def equal_error_rate(curve: ErrorCurve) -> EqualErrorRate:
    """First crossing of FAR and FRR, linearly interpolated between samples."""
    t, far, frr = curve.thresholds, curve.far, curve.frr
    diff = far - frr
    for i in range(len(t)):
        if diff[i] == 0:
            return EqualErrorRate(100.0 * far[i], float(t[i]))
        if i + 1 < len(t) and diff[i] * diff[i + 1] < 0:
            frac = diff[i] / (diff[i] - diff[i + 1])
            rate = far[i] + frac * (far[i + 1] - far[i])
            return EqualErrorRate(100.0 * float(rate), float(t[i] + frac * (t[i + 1] - t[i])))
    worst = np.maximum(far, frr)
    i = int(np.argmin(worst))
    return EqualErrorRate(100.0 * float(worst[i]), float(t[i]), degenerate=True)


def accuracy(curve: ErrorCurve) -> float:
    """Best half-total-error operating point, as a percentage."""
    return 100.0 * (1.0 - float(np.min((curve.far + curve.frr) / 2.0)))


def nearest_score(scores: ScoreSet, threshold: float) -> float:
    pooled = np.concatenate([scores.genuine, scores.impostor])
    return float(pooled[np.argmin(np.abs(pooled - threshold))])


def evaluate_scores(scores: ScoreSet, radius: int, count: int, steps: int = 200,
                    enrolled: int = 0) -> tuple[EvalReport, ErrorCurve]:
    curve = error_curve(scores, steps)
    eer = equal_error_rate(curve)
    report = EvalReport(
        radius=radius,
        descriptor_count=count,
        eer=eer.eer,
        threshold_at_eer=eer.threshold,
        dmin_at_eer=nearest_score(scores, eer.threshold),
        accuracy=accuracy(curve),
        degenerate=eer.degenerate,
        genuine_pairs=int(scores.genuine.size),
        impostor_pairs=int(scores.impostor.size),
        enrolled=enrolled,
    )
    return report, curve


REPORT_COLUMNS = (
    "radius", "descriptors", "eer", "dmin_at_eer", "accuracy", "threshold",
    "accuracy_100_minus_eer", "accuracy_100_minus_2eer", "degenerate",
    "genuine_pairs", "impostor_pairs", "enrolled",
)


def report_row(r: EvalReport) -> str:
    cells = [
        str(r.radius), str(r.descriptor_count), f"{r.eer:.4f}", f"{r.dmin_at_eer:.4f}",
        f"{r.accuracy:.4f}", f"{r.threshold_at_eer:.4f}", f"{100.0 - r.eer:.4f}",
        f"{100.0 - 2.0 * r.eer:.4f}", str(int(r.degenerate)), str(r.genuine_pairs),
        str(r.impostor_pairs), str(r.enrolled),
    ]
    return "\t".join(cells)


def write_report(reports: Sequence[EvalReport], path: str | os.PathLike) -> Path:
    path = Path(path)
    lines = ["\t".join(REPORT_COLUMNS)] + [report_row(r) for r in reports]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def write_curve(curve: ErrorCurve, path: str | os.PathLike) -> Path:
    path = Path(path)
    lines = ["threshold,far,frr"]
    lines += [f"{t:.6f},{a:.4f},{r:.4f}" for t, a, r in zip(curve.thresholds, curve.far, curve.frr)]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def emit_report(report: EvalReport | Sequence[EvalReport], curve: ErrorCurve | None,
                out_dir: str | os.PathLike) -> list[Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    reports = [report] if isinstance(report, EvalReport) else list(report)
    written = [write_report(reports, out_dir / "report.tsv")]
    if curve is not None:
        written.append(write_curve(curve, out_dir / "curve.csv"))
    return written
