from .mapping import (
    STALE,
    WARMING,
    BreathFrame,
    LiveFrameMapper,
    MapConfig,
    RollingNormalizer,
    frame_stream,
    map_frame,
    normalize,
    phase_alternations,
)

__all__ = [
    "STALE",
    "WARMING",
    "BreathFrame",
    "LiveFrameMapper",
    "MapConfig",
    "RollingNormalizer",
    "frame_stream",
    "map_frame",
    "normalize",
    "phase_alternations",
]
