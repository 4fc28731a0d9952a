import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ridgekit.config import CONFIG_ENV, PipelineConfig, default_config
from ridgekit.errors import ConfigError


def test_defaults():
    c = PipelineConfig()
    assert (c.working_size, c.block_size, c.roi_radius, c.binarize_threshold) == (400, 10, 100, 160)
    assert (c.spur_iterations, c.prune_distance, c.signature_length, c.descriptor_count) == (8, 6.0, 128, 80)
    assert (c.core_threshold, c.smoothing_sigma, c.boundary_margin, c.descriptor_mode) == (0.3, 1.0, 10, "real")


@settings(max_examples=60, deadline=None)
@given(
    st.integers(1, 500),
    st.floats(0.01, 10, allow_nan=False),
    st.floats(0, 1),
    st.integers(1, 300),
    st.integers(1, 128),
    st.floats(0, 1e6),
    st.sampled_from(["real", "magnitude"]),
    st.booleans(),
)
def test_text_round_trip(ws, sigma, core, radius, k, thr, mode, eq):
    c = PipelineConfig(
        working_size=ws, smoothing_sigma=sigma, core_threshold=core, roi_radius=radius,
        descriptor_count=k, match_threshold=thr, descriptor_mode=mode, roi_equalize=eq,
    )
    assert PipelineConfig.from_text(c.to_text()) == c


def test_file_round_trip(tmp_path):
    c = PipelineConfig(roi_radius=150, descriptor_count=120)
    c.save(tmp_path / "c.conf")
    assert PipelineConfig.load(tmp_path / "c.conf") == c


def test_comments_and_partial_files():
    c = PipelineConfig.from_text("# tuned\nroi-radius = 90  # small\n\ndescriptor_count=120\n")
    assert c.roi_radius == 90 and c.descriptor_count == 120 and c.block_size == 10


@pytest.mark.parametrize(
    "text",
    ["roi_radius = 0", "descriptor_count = 200", "prune_distance = 0", "binarize_threshold = 300",
     "bogus = 1", "roi_radius", "roi_radius = ten", "roi_equalize = maybe", "descriptor_mode = fancy"],
)
def test_invalid(text):
    with pytest.raises(ConfigError):
        PipelineConfig.from_text(text)


def test_replace_ignores_none():
    c = PipelineConfig().replace(roi_radius=None, descriptor_count=120)
    assert c.roi_radius == 100 and c.descriptor_count == 120


def test_env_var(tmp_path, monkeypatch):
    (tmp_path / "e.conf").write_text("roi_radius = 150\n")
    monkeypatch.setenv(CONFIG_ENV, str(tmp_path / "e.conf"))
    assert default_config().roi_radius == 150
    (tmp_path / "x.conf").write_text("roi_radius = 90\n")
    assert default_config(tmp_path / "x.conf").roi_radius == 90
    monkeypatch.delenv(CONFIG_ENV)
    assert default_config() == PipelineConfig()
