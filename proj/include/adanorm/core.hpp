#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace adanorm {

/// One stream element: its 0-based position plus one value per attribute.
struct Sample {
  std::uint64_t ordinal = 0;
  std::vector<double> values;

  friend bool operator==(const Sample&, const Sample&) = default;
};

/// A tumbling window: `samples.size()` consecutive samples, 1-based `id`.
struct Window {
  std::uint64_t id = 0;
  std::vector<Sample> samples;

  std::size_t size() const noexcept { return samples.size(); }
  std::size_t arity() const noexcept {
    return samples.empty() ? 0 : samples.front().values.size();
  }

  /// Copies attribute `attribute` of every sample, in order.
  std::vector<double> column(std::size_t attribute) const;
};

/// Statistics of one attribute inside one window.
struct AttributeStats {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;

  friend bool operator==(const AttributeStats&, const AttributeStats&) = default;
};

using WindowStats = std::vector<AttributeStats>;

/// Closed interval used as min-max reference for one attribute.
/// Invariant: min <= max.
struct Range {
  double min = 0.0;
  double max = 0.0;

  bool contains(const Range& other) const noexcept {
    return min <= other.min && other.max <= max;
  }

  friend bool operator==(const Range&, const Range&) = default;
};

/// Per-attribute reference ranges (refmin/refmax for each attribute).
using RefParams = std::vector<Range>;

struct NormalizedSample {
  std::uint64_t ordinal = 0;
  std::vector<double> values;

  friend bool operator==(const NormalizedSample&, const NormalizedSample&) = default;
};

/// Min, max and arithmetic mean of a non-empty sequence. The mean is a plain
/// sum/count; windows are bounded by the configured size so no compensated
/// summation is done. Throws UsageError on empty input.
AttributeStats compute_stats(std::span<const double> values);

/// Per-attribute stats of a window. Throws UsageError if the window is empty
/// or its samples disagree on arity.
WindowStats compute_window_stats(const Window& window);

/// (x - min) / (max - min); 0.5 when the range is degenerate (max == min).
/// Values outside the range map outside [0, 1].
double minmax_normalize(double x, Range reference) noexcept;

/// Inverse of minmax_normalize for a non-degenerate range.
double minmax_denormalize(double y, Range reference) noexcept;

/// |current - previous| / |previous|. 0 when both are zero, +infinity when
/// only the previous mean is zero.
double percent_mean_change(double current_mean, double previous_mean) noexcept;

/// A normalized value is out of bound when it leaves [0, 1] by more than this.
inline constexpr double kOutOfBoundTolerance = 1e-12;

inline bool out_of_bound(double normalized) noexcept {
  return normalized < -kOutOfBoundTolerance || normalized > 1.0 + kOutOfBoundTolerance;
}

}  // namespace adanorm
