import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from ridgekit import _pykernels, kernels
from ridgekit.ridgemap import binarize
from ridgekit.corepoint import extract_roi, CorePoint


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")


@settings(max_examples=60, deadline=None)
@given(arrays(bool, st.tuples(st.integers(1, 20), st.integers(1, 20))))
def test_crossing_numbers_match_loop(b):
    cn = kernels.crossing_numbers(b)
    p = np.pad(b, 1).astype(int)
    ring = [(-1, 0), (-1, 1), (0, 1), (1, 1), (1, 0), (1, -1), (0, -1), (-1, -1)]
    for y, x in itertools.product(range(b.shape[0]), range(b.shape[1])):
        vals = [p[y + 1 + dy, x + 1 + dx] for dy, dx in ring]
        expected = sum(abs(vals[i] - vals[(i + 1) % 8]) for i in range(8)) // 2 if b[y, x] else 0
        assert cn[y, x] == expected


@pytest.mark.skipif(kernels.compiled_backend is None, reason="compiled extension not built")
@settings(max_examples=150, deadline=None)
@given(arrays(bool, st.tuples(st.integers(1, 40), st.integers(1, 40))), st.floats(0.2, 0.9))
def test_backends_agree_on_random(b, _):
    c = kernels.compiled_backend
    assert np.array_equal(c.thin(b), _pykernels.thin(b))
    assert np.array_equal(c.crossing_numbers(b), _pykernels.crossing_numbers(b))


@pytest.mark.skipif(kernels.compiled_backend is None, reason="compiled extension not built")
def test_backends_agree_on_prints(print_images):
    c = kernels.compiled_backend
    for img in print_images[:4]:
        roi, mask = extract_roi(img, CorePoint(190, 180, 1.0), 150)
        b = binarize(roi, 160, mask.inside)
        assert np.array_equal(c.thin(b), _pykernels.thin(b))


def test_thin_backend_fixture(backend):
    b = np.zeros((10, 10), np.uint8)
    b[3:7, 2:8] = 1
    out = backend.thin(b)
    assert out.dtype == np.uint8 and 0 < out.sum() < b.sum()


def test_env_var_forces_python_fallback():
    import os
    import subprocess
    import sys

    env = dict(os.environ, RIDGEKIT_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "import ridgekit; print(ridgekit.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"
