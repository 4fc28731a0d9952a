import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ridgekit.corepoint import CorePoint
from ridgekit.descriptor import (
    ComplexSignature,
    build_signature,
    fourier_coefficients,
    fourier_template,
    template_from_minutiae,
    to_polar,
)
from ridgekit.errors import BadDescriptorCount, EmptyMinutiaeSet
from ridgekit.minutiae import Kind, Minutia, MinutiaeSet

offsets = st.lists(
    st.tuples(st.integers(-80, 80), st.integers(-80, 80)), min_size=1, max_size=60, unique=True
)


def mset(core, offsets, radius=100):
    items = tuple(Minutia(core.x + dx, core.y + dy, Kind.TERMINATION) for dx, dy in offsets)
    return MinutiaeSet(items, core, radius)


def test_to_polar_345():
    r, t = to_polar(CorePoint(0, 0, 1), Minutia(3, 4, Kind.TERMINATION))
    assert r == 5.0 and t == pytest.approx(0.9273, abs=1e-4)


def test_to_polar_degenerate():
    assert to_polar(CorePoint(10, 10, 1), Minutia(10, 10, Kind.BIFURCATION)) == (0.0, 0.0)


def test_to_polar_diagonal():
    r, t = to_polar(CorePoint(0, 0, 1), Minutia(1, 1, Kind.TERMINATION))
    assert r == pytest.approx(math.sqrt(2)) and t == pytest.approx(math.pi / 4)


def test_to_polar_angle_range():
    r, t = to_polar(CorePoint(0, 0, 1), Minutia(-3, 0, Kind.TERMINATION))
    assert r == 3 and t == pytest.approx(math.pi)


def test_single_minutia_signature():
    sig = build_signature(mset(CorePoint(20, 20, 1), [(5, 0)]))
    assert list(sig.values) == [5 + 0j]


def test_signature_sorted_by_angle():
    sig = build_signature(mset(CorePoint(50, 50, 1), [(3, 3), (3, -3)]))
    angles = np.angle(sig.values)
    assert angles[0] == pytest.approx(-math.pi / 4) and angles[1] == pytest.approx(math.pi / 4)


def test_signature_ties_sorted_by_radius():
    sig = build_signature(mset(CorePoint(50, 50, 1), [(9, 0), (4, 0)]))
    assert list(np.abs(sig.values)) == [4.0, 9.0]


def test_empty_signature_rejected():
    with pytest.raises(EmptyMinutiaeSet):
        build_signature(MinutiaeSet((), CorePoint(0, 0, 1), 100))


def test_impulse_gives_flat_descriptors():
    t = fourier_template(ComplexSignature(np.array([5 + 0j])), 128, 80)
    assert t.count == 80
    assert np.all(t.descriptors == 5.0)


def test_zero_signature_gives_zero_descriptors():
    t = fourier_template(ComplexSignature(np.zeros(3, complex)), 128, 80)
    assert not t.descriptors.any()


def test_count_above_length_rejected():
    with pytest.raises(BadDescriptorCount):
        fourier_template(ComplexSignature(np.array([1 + 0j])), 64, 80)


def test_dft_matches_direct_sum():
    rng = np.random.default_rng(3)
    z = rng.normal(size=20) + 1j * rng.normal(size=20)
    coeffs, used = fourier_coefficients(ComplexSignature(z), 32)
    k = np.arange(32)
    direct = [sum(z[n] * np.exp(-2j * np.pi * kk * n / 32) for n in range(20)) for kk in k]
    assert used == 20
    assert np.allclose(coeffs, direct, atol=1e-10)


def test_truncation_keeps_entries_nearest_core():
    z = np.array([10, 1j, 3, -2, 7j], dtype=complex)
    coeffs, used = fourier_coefficients(ComplexSignature(z), 3)
    expected = np.fft.fft(np.array([1j, 3, -2]))
    assert used == 3 and np.allclose(coeffs, expected)


@settings(max_examples=50, deadline=None)
@given(offsets, st.integers(-200, 200), st.integers(-200, 200))
def test_translation_bitwise_identical(offs, dx, dy):
    a = template_from_minutiae(mset(CorePoint(300, 300, 1), offs), 128, 80)
    b = template_from_minutiae(mset(CorePoint(300 + dx, 300 + dy, 1), offs), 128, 80)
    assert a.descriptors.tobytes() == b.descriptors.tobytes()


def rotated_signature(sig, delta):
    """Rotate every entry about the core, then restore the canonical ordering."""
    z = sig.values * np.exp(1j * delta)
    order = np.lexsort((np.abs(z), np.angle(z)))
    return ComplexSignature(z[order]), z


@settings(max_examples=50, deadline=None)
@given(offsets, st.floats(-3.0, 3.0))
def test_rotation_preserves_magnitudes_of_unsorted_signature(offs, delta):
    sig = build_signature(mset(CorePoint(0, 0, 1), offs))
    _, z = rotated_signature(sig, delta)
    a = fourier_template(sig, 128, 80, mode="magnitude").descriptors
    b = fourier_template(ComplexSignature(z), 128, 80, mode="magnitude").descriptors
    assert np.allclose(a, b, rtol=1e-9, atol=1e-9 * max(1.0, np.abs(a).max()))


def test_rotation_changes_real_parts():
    sig = build_signature(mset(CorePoint(0, 0, 1), [(10, 0), (0, 7), (-4, -9)]))
    z = sig.values * np.exp(1j * 0.7)
    a = fourier_template(sig, 128, 80).descriptors
    b = fourier_template(ComplexSignature(z), 128, 80).descriptors
    assert not np.allclose(a, b)


@settings(max_examples=40, deadline=None)
@given(offsets, st.floats(-5, 5).filter(lambda a: abs(a) > 1e-3))
def test_linearity_in_real_scale(offs, a):
    sig = build_signature(mset(CorePoint(0, 0, 1), offs))
    t = fourier_template(sig, 128, 80).descriptors
    ts = fourier_template(ComplexSignature(sig.values * a), 128, 80).descriptors
    assert np.allclose(ts, a * t, rtol=1e-9, atol=1e-9 * (1 + abs(a) * np.abs(t).max()))


@settings(max_examples=40, deadline=None)
@given(offsets, st.randoms())
def test_permutation_invariance(offs, rnd):
    shuffled = list(offs)
    rnd.shuffle(shuffled)
    core = CorePoint(100, 100, 1)
    a = template_from_minutiae(mset(core, offs), 128, 80)
    b = template_from_minutiae(mset(core, shuffled), 128, 80)
    assert a.descriptors.tobytes() == b.descriptors.tobytes()


def test_template_metadata():
    t = template_from_minutiae(mset(CorePoint(0, 0, 1), [(1, 2)], radius=90), 128, 120)
    assert (t.count, t.signature_length, t.radius) == (120, 128, 90)
    assert t.with_ids(3, 4).id == "3_4"
