"""Pipeline configuration and its flat ``key = value`` file form."""
from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass, fields
from pathlib import Path

from ridgekit.errors import ConfigError

CONFIG_ENV = "RIDGEKIT_CONFIG"


@dataclass(frozen=True)
class PipelineConfig:
    working_size: int = 400
    block_size: int = 10
    smoothing_sigma: float = 1.0
    core_threshold: float = 0.3
    roi_radius: int = 100
    binarize_threshold: int = 160
    spur_iterations: int = 8
    prune_distance: float = 6.0
    signature_length: int = 128
    descriptor_count: int = 80
    match_threshold: float = 55.0
    boundary_margin: int = 10
    descriptor_mode: str = "real"
    denoise_window: int = 3
    foreground_fraction: float = 0.5
    foreground_coherence: float = 0.5
    eval_steps: int = 200
    roi_equalize: bool = True

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if self.working_size < 1:
            raise ConfigError("working_size must be >= 1")
        if self.block_size < 3:
            raise ConfigError("block_size must be >= 3")
        if self.smoothing_sigma <= 0:
            raise ConfigError("smoothing_sigma must be > 0")
        if not 0.0 <= self.core_threshold <= 1.0:
            raise ConfigError("core_threshold must lie in [0, 1]")
        if self.roi_radius <= 0:
            raise ConfigError("roi_radius must be > 0")
        if not 0 <= self.binarize_threshold <= 255:
            raise ConfigError("binarize_threshold must lie in [0, 255]")
        if self.spur_iterations < 0:
            raise ConfigError("spur_iterations must be >= 0")
        if self.prune_distance <= 0:
            raise ConfigError("prune_distance must be > 0")
        if self.descriptor_count < 1 or self.descriptor_count > self.signature_length:
            raise ConfigError("need 1 <= descriptor_count <= signature_length")
        if self.match_threshold < 0:
            raise ConfigError("match_threshold must be >= 0")
        if self.boundary_margin < 0:
            raise ConfigError("boundary_margin must be >= 0")
        if self.descriptor_mode not in ("real", "magnitude"):
            raise ConfigError("descriptor_mode must be 'real' or 'magnitude'")
        if self.denoise_window < 3 or self.denoise_window % 2 == 0:
            raise ConfigError("denoise_window must be odd and >= 3")
        if self.foreground_fraction < 0:
            raise ConfigError("foreground_fraction must be >= 0")
        if not 0.0 <= self.foreground_coherence < 1.0:
            raise ConfigError("foreground_coherence must lie in [0, 1)")
        if self.eval_steps < 2:
            raise ConfigError("eval_steps must be >= 2")

    def replace(self, **changes) -> "PipelineConfig":
        changes = {k: v for k, v in changes.items() if v is not None}
        return dataclasses.replace(self, **changes)

    def to_text(self) -> str:
        lines = [f"{f.name} = {getattr(self, f.name)!r}".replace("'", "") for f in fields(self)]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "PipelineConfig":
        types = {f.name: f.type for f in fields(cls)}
        values = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"line {lineno}: expected 'key = value'")
            key, value = (part.strip() for part in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in types:
                raise ConfigError(f"line {lineno}: unknown key {key!r}")
            values[key] = _coerce(types[key], value, key)
        return cls(**values)

    @classmethod
    def load(cls, path: str | os.PathLike) -> "PipelineConfig":
        return cls.from_text(Path(path).read_text(encoding="utf-8"))

    def save(self, path: str | os.PathLike) -> None:
        Path(path).write_text(self.to_text(), encoding="utf-8")


def _coerce(type_name, value: str, key: str):
    type_name = str(type_name)
    if type_name == "bool":
        lowered = value.lower()
        if lowered in ("1", "true", "yes", "on"):
            return True
        if lowered in ("0", "false", "no", "off"):
            return False
        raise ConfigError(f"{key}: cannot parse {value!r} as bool")
    try:
        if type_name == "int":
            return int(value)
        if type_name == "float":
            return float(value)
    except ValueError:
        raise ConfigError(f"{key}: cannot parse {value!r} as {type_name}") from None
    return value


def default_config(path: str | os.PathLike | None = None) -> PipelineConfig:
    """Explicit path first, then ``$RIDGEKIT_CONFIG``, then built-in defaults."""
    path = path or os.environ.get(CONFIG_ENV)
    if path:
        return PipelineConfig.load(path)
    return PipelineConfig()
