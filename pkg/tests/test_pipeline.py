import numpy as np
import pytest

from ridgekit import synthetic
from ridgekit.config import PipelineConfig
from ridgekit.errors import NoCoreFound
from ridgekit.matcher import template_distance
from ridgekit.pipeline import features_for_radius, prepare, template_from_image
from ridgekit.templatefile import encode_template

CFG = PipelineConfig()


def test_template_shape(print_images):
    t = template_from_image(print_images[0], CFG, 1, 1)
    assert t.count == 80 and t.radius == 100 and t.signature_length == 128
    assert np.isfinite(t.descriptors).all()


def test_deterministic_bytes(print_images):
    a = encode_template(template_from_image(print_images[1], CFG))
    b = encode_template(template_from_image(print_images[1].copy(), CFG))
    assert a == b


def test_self_match_zero(print_images):
    for img in print_images[:3]:
        assert template_distance(template_from_image(img, CFG), template_from_image(img, CFG)) == 0.0


def test_stages_consistent(print_images):
    prep = prepare(print_images[2], CFG)
    assert prep.resized.shape == (400, 400) and prep.enhanced.dtype == np.uint8
    feats = features_for_radius(prep, CFG)
    assert not (feats.thinned & ~feats.binary).any()
    assert not (feats.cleaned & ~feats.thinned).any()
    assert not (feats.binary & ~feats.mask.inside).any()
    core = prep.core
    for m in feats.minutiae:
        assert feats.cleaned[m.y, m.x]
        assert (m.x - core.x) ** 2 + (m.y - core.y) ** 2 <= CFG.roi_radius ** 2


def test_blank_image_has_no_core():
    with pytest.raises(NoCoreFound):
        template_from_image(np.full((300, 300), 200, np.uint8), CFG)


def test_minutiae_grow_with_radius(print_images):
    prep = prepare(print_images[3], CFG)
    counts = [len(features_for_radius(prep, CFG, r).minutiae) for r in (90, 100, 150)]
    assert counts[0] <= counts[2]


def test_same_finger_closer_than_other_finger_on_average():
    cfg = PipelineConfig()
    fingers = [synthetic.make_finger(40 + k) for k in range(4)]
    ts = [[template_from_image(synthetic.impression(f, s), cfg) for s in (1, 2)] for f in fingers]
    genuine = np.mean([template_distance(a, b) for a, b in ts])
    impostor = np.mean([template_distance(ts[i][0], ts[j][0]) for i in range(4) for j in range(i + 1, 4)])
    assert genuine < impostor
