#include "adanorm/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "adanorm/errors.hpp"

namespace adanorm {

std::vector<double> Window::column(std::size_t attribute) const {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.values.at(attribute));
  return out;
}

AttributeStats compute_stats(std::span<const double> values) {
  if (values.empty()) throw UsageError("compute_stats: empty window");

  double lo = values.front();
  double hi = values.front();
  double sum = 0.0;
  for (double v : values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    sum += v;
  }
  double mean = sum / static_cast<double>(values.size());
  // Rounding in sum/count can push the mean a ulp past an extremum when all
  // values are (nearly) equal.
  mean = std::clamp(mean, lo, hi);
  return {lo, hi, mean};
}

WindowStats compute_window_stats(const Window& window) {
  if (window.samples.empty()) {
    throw UsageError("compute_window_stats: window " + std::to_string(window.id) + " is empty");
  }
  const std::size_t arity = window.arity();
  WindowStats stats;
  stats.reserve(arity);
  std::vector<double> column(window.samples.size());
  for (std::size_t a = 0; a < arity; ++a) {
    for (std::size_t i = 0; i < window.samples.size(); ++i) {
      const auto& values = window.samples[i].values;
      if (values.size() != arity) {
        throw UsageError("compute_window_stats: inconsistent arity in window " +
                         std::to_string(window.id));
      }
      column[i] = values[a];
    }
    stats.push_back(compute_stats(column));
  }
  return stats;
}

double minmax_normalize(double x, Range reference) noexcept {
  const double span = reference.max - reference.min;
  if (span == 0.0) return 0.5;
  return (x - reference.min) / span;
}

double minmax_denormalize(double y, Range reference) noexcept {
  return reference.min + y * (reference.max - reference.min);
}

double percent_mean_change(double current_mean, double previous_mean) noexcept {
  if (previous_mean == 0.0) {
    return current_mean == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return std::abs(current_mean - previous_mean) / std::abs(previous_mean);
}

}  // namespace adanorm
