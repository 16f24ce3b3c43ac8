from .replay import (
    ReplayFormatError,
    ReplayHeader,
    ReplayNormalizationWarning,
    iter_replay,
    open_replay,
    read_header,
    write_replay,
)
from .synthetic import GroundTruth, SyntheticStream, generate_synthetic
from .types import BREATH_HZ, CHANNELS, PPG_HZ, SensorSample, SyntheticPhysioSpec

__all__ = [
    "BREATH_HZ",
    "CHANNELS",
    "PPG_HZ",
    "GroundTruth",
    "ReplayFormatError",
    "ReplayHeader",
    "ReplayNormalizationWarning",
    "SensorSample",
    "SyntheticPhysioSpec",
    "SyntheticStream",
    "generate_synthetic",
    "iter_replay",
    "open_replay",
    "read_header",
    "write_replay",
]
