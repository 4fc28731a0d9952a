"""Command-line interface: enroll, verify, identify, evaluate, inspect.

Exit codes: 0 success or match, 1 no match, 2 usage or data error.
"""
from __future__ import annotations

import argparse
import logging
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from ridgekit import render
from ridgekit.config import PipelineConfig, default_config
from ridgekit.errors import InsufficientData, NoCoreFound, RidgekitError
from ridgekit.evaluation import collect_scores, evaluate_scores, write_curve, write_report
from ridgekit.imageio import load_grayscale, save_pgm
from ridgekit.matcher import identify, verify
from ridgekit.pipeline import features_for_radius, make_template, prepare
from ridgekit.templatefile import add_to_database, load_database, load_template

log = logging.getLogger("ridgekit")

EXIT_OK, EXIT_NO_MATCH, EXIT_ERROR = 0, 1, 2
IMAGE_SUFFIXES = {".tif", ".tiff", ".png", ".pgm", ".bmp"}
FVC_NAME = re.compile(r"^(\d+)_(\d+)$")
STAGES = ("enhanced", "orientation", "strength", "roi", "binary", "thin", "morphology", "minutiae")


def parse_ids(path: Path) -> tuple[int, int]:
    m = FVC_NAME.match(path.stem)
    if not m:
        raise ValueError(f"{path.name}: expected '<finger>_<impression>.<ext>'")
    return int(m.group(1)), int(m.group(2))


def image_id(path: Path) -> str:
    try:
        f, i = parse_ids(path)
        return f"{f}_{i}"
    except ValueError:
        return path.stem


def dataset_images(root: Path) -> list[tuple[int, int, Path]]:
    found = []
    for p in sorted(root.iterdir()):
        if p.suffix.lower() in IMAGE_SUFFIXES and FVC_NAME.match(p.stem):
            f, i = parse_ids(p)
            found.append((f, i, p))
    return sorted(found)


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value config file (default: $RIDGEKIT_CONFIG)")
    common.add_argument("--radius", type=int, help="ROI radius R in pixels")
    common.add_argument("--descriptors", type=int, help="descriptor count K")
    common.add_argument("--threshold", type=float, help="match distance threshold")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="ridgekit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enroll", parents=[common], help="build templates from images")
    p.add_argument("images", nargs="+", type=Path)
    p.add_argument("--db", type=Path, required=True)
    p.add_argument("--finger", type=int, help="finger id (single image only)")
    p.add_argument("--impression", type=int, help="impression id (single image only)")

    p = sub.add_parser("verify", parents=[common], help="one-to-one comparison")
    p.add_argument("probe", type=Path)
    p.add_argument("gallery", type=Path, help="gallery template file")

    p = sub.add_parser("identify", parents=[common], help="one-to-many search")
    p.add_argument("probe", type=Path)
    p.add_argument("--db", type=Path, required=True)

    p = sub.add_parser("evaluate", parents=[common], help="FAR/FRR/EER over an FVC-layout dataset")
    p.add_argument("dataset", type=Path)
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--grid-radius", type=_int_list, default=None)
    p.add_argument("--grid-descriptors", type=_int_list, default=None)
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("inspect", parents=[common], help="dump every pipeline stage as PGM")
    p.add_argument("image", type=Path)
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--stage", choices=STAGES, default="minutiae", help="last stage to produce")
    return parser


def load_config(args) -> PipelineConfig:
    cfg = default_config(args.config)
    return cfg.replace(
        roi_radius=args.radius, descriptor_count=args.descriptors, match_threshold=args.threshold
    )


def cmd_enroll(args, cfg: PipelineConfig) -> int:
    if (args.finger is not None or args.impression is not None) and len(args.images) != 1:
        log.error("--finger/--impression apply to a single image")
        return EXIT_ERROR
    templates = []
    for path in args.images:
        try:
            if args.finger is not None or args.impression is not None:
                ids = (args.finger or 0, args.impression or 0)
            else:
                ids = parse_ids(path)
            feats = features_for_radius(prepare(load_grayscale(path), cfg), cfg)
            templates.append(make_template(feats.minutiae, cfg, finger_id=ids[0], impression_id=ids[1]))
        except (RidgekitError, OSError, ValueError) as exc:
            log.warning("skipping %s: %s: %s", path, type(exc).__name__, exc)
    if not templates:
        log.error("no image could be enrolled")
        return EXIT_ERROR
    for written in add_to_database(args.db, templates):
        print(written)
    return EXIT_OK


def _probe_template(path: Path, cfg: PipelineConfig):
    feats = features_for_radius(prepare(load_grayscale(path), cfg), cfg)
    t = make_template(feats.minutiae, cfg)
    try:
        f, i = parse_ids(path)
        t = t.with_ids(f, i)
    except ValueError:
        pass
    return t


def cmd_verify(args, cfg: PipelineConfig) -> int:
    gallery = load_template(args.gallery)
    probe = _probe_template(args.probe, cfg.replace(roi_radius=args.radius or gallery.radius))
    decision = verify(probe, gallery, cfg.match_threshold)
    print(decision.line().replace(probe.id, image_id(args.probe), 1))
    return EXIT_OK if decision.matched else EXIT_NO_MATCH


def cmd_identify(args, cfg: PipelineConfig) -> int:
    db = load_database(args.db)
    probe = _probe_template(args.probe, cfg)
    _, _, decision = identify(probe, db, cfg.match_threshold)
    print(decision.line().replace(probe.id, image_id(args.probe), 1))
    return EXIT_OK if decision.matched else EXIT_NO_MATCH


def _prepare_one(item):
    finger, impression, path, cfg = item
    try:
        return finger, impression, prepare(load_grayscale(path), cfg), None
    except (RidgekitError, OSError, ValueError) as exc:
        return finger, impression, None, f"{type(exc).__name__}: {exc}"


def run_evaluation(dataset: Path, out: Path, cfg: PipelineConfig, radii, counts, workers: int = 1):
    images = dataset_images(dataset)
    if not images:
        raise InsufficientData(f"no '<finger>_<impression>' images in {dataset}")
    jobs = [(f, i, p, cfg) for f, i, p in images]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            prepared = list(pool.map(_prepare_one, jobs, chunksize=4))
    else:
        prepared = [_prepare_one(job) for job in jobs]
    prepared.sort(key=lambda item: (item[0], item[1]))
    usable = []
    for f, i, prep, err in prepared:
        if err:
            log.warning("excluding %d_%d: %s", f, i, err)
        elif prep.detection.core is None:
            log.warning("excluding %d_%d: NoCoreFound", f, i)
        else:
            usable.append((f, i, prep))
    out.mkdir(parents=True, exist_ok=True)
    reports = []
    for radius in radii:
        minutiae = []
        for f, i, prep in usable:
            try:
                mset = features_for_radius(prep, cfg, radius).minutiae
            except RidgekitError as exc:
                log.warning("excluding %d_%d at R=%d: %s", f, i, radius, exc)
                continue
            if len(mset) == 0:
                log.warning("excluding %d_%d at R=%d: no minutiae", f, i, radius)
                continue
            minutiae.append((f, i, mset))
        for count in counts:
            templates = [make_template(m, cfg, count, f, i) for f, i, m in minutiae]
            report, curve = evaluate_scores(collect_scores(templates), radius, count,
                                            cfg.eval_steps, enrolled=len(templates))
            reports.append(report)
            sub = out / f"R{radius}_K{count}"
            sub.mkdir(exist_ok=True)
            write_curve(curve, sub / "curve.csv")
            log.info("R=%d K=%d EER=%.2f%% accuracy=%.2f%%", radius, count, report.eer, report.accuracy)
    write_report(reports, out / "report.tsv")
    return reports


def cmd_evaluate(args, cfg: PipelineConfig) -> int:
    radii = args.grid_radius or [cfg.roi_radius]
    counts = args.grid_descriptors or [cfg.descriptor_count]
    bad = [k for k in counts if k > cfg.signature_length]
    if bad:
        raise RidgekitError(f"descriptor counts {bad} exceed signature length {cfg.signature_length}")
    reports = run_evaluation(args.dataset, args.out, cfg, radii, counts, args.workers)
    print((args.out / "report.tsv").read_text(encoding="utf-8"), end="")
    return EXIT_OK if reports else EXIT_ERROR


def cmd_inspect(args, cfg: PipelineConfig) -> int:
    out: Path = args.out
    out.mkdir(parents=True, exist_ok=True)
    last = STAGES.index(args.stage)

    def dump(stage: str, img) -> bool:
        save_pgm(img, out / f"{STAGES.index(stage) + 1:02d}_{stage}.pgm")
        return STAGES.index(stage) >= last

    prep = prepare(load_grayscale(args.image), cfg)
    det = prep.detection
    if dump("enhanced", prep.enhanced):
        return EXIT_OK
    if dump("orientation", render.orientation_overlay(prep.enhanced, det.field)):
        return EXIT_OK
    strength = render.strength_map(det.strength, cfg.block_size, prep.enhanced.shape, det.core)
    if dump("strength", strength):
        return EXIT_OK
    if det.core is None:
        raise NoCoreFound("no orientation singularity above the core threshold")
    feats = features_for_radius(prep, cfg)
    if dump("roi", feats.roi) or dump("binary", render.binary_image(feats.binary)):
        return EXIT_OK
    if dump("thin", render.binary_image(feats.thinned)):
        return EXIT_OK
    if dump("morphology", render.binary_image(feats.cleaned)):
        return EXIT_OK
    dump("minutiae", render.minutiae_overlay(feats.cleaned, feats.minutiae))
    (out / "minutiae.csv").write_text(feats.minutiae.to_csv(), encoding="utf-8")
    return EXIT_OK


COMMANDS = {
    "enroll": cmd_enroll,
    "verify": cmd_verify,
    "identify": cmd_identify,
    "evaluate": cmd_evaluate,
    "inspect": cmd_inspect,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        cfg = load_config(args)
        return COMMANDS[args.command](args, cfg)
    except (RidgekitError, OSError, ValueError) as exc:
        print(f"ridgekit: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
