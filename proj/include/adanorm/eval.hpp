#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "adanorm/core.hpp"
#include "adanorm/strategies.hpp"

namespace adanorm {

/// sqrt(mean((a - b)^2)) pooled over every element and attribute. Throws
/// UsageError on length, arity or ordinal mismatch, or on empty input.
double rmse(std::span<const NormalizedSample> a, std::span<const NormalizedSample> b);

/// 100 * (worst - k) / worst. Throws UsageError unless worst > 0.
double improvement(double rmse_worst, double rmse_k);

/// Elements outside [0, 1] by more than kOutOfBoundTolerance.
std::uint64_t out_of_bound_count(std::span<const NormalizedSample> stream);

/// RMSE of methods 2-5 against the method-1 baseline on one stream.
struct EvalReport {
  std::string dataset;
  std::size_t window_size = 0;
  double threshold = kDefaultThreshold;
  std::size_t stream_length = 0;
  std::size_t arity = 0;
  std::vector<Range> known_range;

  /// Indexed by method number; entry 0 unused, entry 1 is always 0.
  std::array<double, 6> rmse{};
  /// Improvement of methods 3-5 over method 2 (entries 0-2 unused). Empty
  /// when method 2 matches the baseline exactly.
  std::array<std::optional<double>, 6> improvement_over_first_window{};
  /// Indexed by method number; entry 0 unused.
  std::array<std::uint64_t, 6> out_of_bound{};
  /// Windows where methods 4/5 replaced or widened the reference.
  std::array<std::uint64_t, 6> replacements{};
  std::array<std::uint64_t, 6> widenings{};

  double rmse_of(Method m) const { return rmse[static_cast<int>(m)]; }
};

struct ComparisonOptions {
  std::size_t window_size = 50;
  double threshold = kDefaultThreshold;
  /// Method-1 oracle range per attribute; computed from the stream if empty.
  std::vector<Range> known_range;
  std::size_t parallelism = 1;
  std::string dataset = "stream";
};

/// Runs all five methods over the same stream and scores 2-5 against 1.
EvalReport run_comparison(std::span<const Sample> stream, const ComparisonOptions& options);

}  // namespace adanorm
