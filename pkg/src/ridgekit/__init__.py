"""Minutiae-based fingerprint verification and identification."""
from ridgekit.config import PipelineConfig
from ridgekit.kernels import BACKEND

__all__ = ["PipelineConfig", "BACKEND"]
__version__ = "0.1.0"
