import numpy as np
import pytest

from ridgekit import _pykernels, kernels, synthetic

BACKENDS = [pytest.param(_pykernels, id="python")]
if kernels.compiled_backend is not None:
    BACKENDS.append(pytest.param(kernels.compiled_backend, id="cython"))


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


@pytest.fixture(scope="session")
def small_corpus(tmp_path_factory):
    """4 synthetic fingers x 3 impressions in FVC naming."""
    root = tmp_path_factory.mktemp("corpus")
    synthetic.write_corpus(root, fingers=4, impressions=3, seed=7)
    return root


@pytest.fixture(scope="session")
def print_images():
    """Ten synthetic prints (one impression each of ten fingers)."""
    return [synthetic.impression(synthetic.make_finger(500 + k), 77 + k) for k in range(10)]


def random_binary(rng, shape, density=0.5):
    return rng.random(shape) < density


# acceptance criterion -> list of (part, passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict[int, list[tuple[str, bool, str]]] = {}


@pytest.fixture
def acceptance(request):
    """Record one part of a numbered acceptance criterion; failures re-raise."""

    class Recorder:
        def __init__(self, number: int, part: str):
            self.number, self.part, self.detail = number, part, ""

        def __enter__(self):
            return self

        def __exit__(self, exc_type, exc, tb):
            ok = exc_type is None
            detail = self.detail if ok else f"{self.detail} {exc}".strip()
            ACCEPTANCE.setdefault(self.number, []).append((self.part, ok, detail.splitlines()[0] if detail else ""))
            return False

    return Recorder


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        parts = ACCEPTANCE[number]
        verdict = "PASS" if all(ok for _, ok, _ in parts) else "FAIL"
        detail = "; ".join(f"{p}: {'ok' if ok else 'FAILED'}{' (' + d + ')' if d else ''}" for p, ok, d in parts)
        terminalreporter.write_line(f"criterion {number:2d} {verdict}  {detail}")
