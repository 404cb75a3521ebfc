"""Adaptive min-max normalization for numeric streams."""

from ._core import (
    ConfigError,
    DataError,
    IoError,
    Strategy,
    UsageError,
    __version__,
    compute_stats,
    generate_synthetic,
    improvement,
    load_csv,
    measure_scaling,
    measure_throughput,
    minmax_normalize,
    normalize,
    out_of_bound_count,
    percent_mean_change,
    rmse,
    run_comparison,
)

METHODS = {
    1: "known-range",
    2: "first-window",
    3: "per-window",
    4: "significant-only",
    5: "adaptive",
}

__all__ = [
    "METHODS",
    "ConfigError",
    "DataError",
    "IoError",
    "Strategy",
    "UsageError",
    "__version__",
    "compute_stats",
    "generate_synthetic",
    "improvement",
    "load_csv",
    "measure_scaling",
    "measure_throughput",
    "minmax_normalize",
    "normalize",
    "out_of_bound_count",
    "percent_mean_change",
    "rmse",
    "run_comparison",
]
