from .analysis import (
    NO_BREATH,
    NO_PULSE,
    EmptySeriesError,
    MetricsConfig,
    NnSeries,
    PeakDetection,
    PhaseMetrics,
    RespirationResult,
    build_nn_series,
    detect_pulse_peaks,
    phase_metrics,
    respiration_rate,
    sdnn,
    split_channels,
)

__all__ = [
    "NO_BREATH",
    "NO_PULSE",
    "EmptySeriesError",
    "MetricsConfig",
    "NnSeries",
    "PeakDetection",
    "PhaseMetrics",
    "RespirationResult",
    "build_nn_series",
    "detect_pulse_peaks",
    "phase_metrics",
    "respiration_rate",
    "sdnn",
    "split_channels",
]
