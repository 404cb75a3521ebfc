#pragma once

// Straight-line reference implementations of the five methods for one
// attribute. They share nothing with the library besides the arithmetic
// formula, and are used as independent oracles in the tests.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <vector>

namespace adanorm::oracle {

struct Bounds {
  double lo;
  double hi;
};

inline double scale(double x, Bounds b) {
  if (b.hi == b.lo) return 0.5;
  return (x - b.lo) / (b.hi - b.lo);
}

/// Splits [0, n) into consecutive windows of `size` (last may be shorter).
inline std::vector<std::pair<std::size_t, std::size_t>> window_bounds(std::size_t n,
                                                                      std::size_t size) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t b = 0; b < n; b += size) out.emplace_back(b, std::min(n, b + size));
  return out;
}

struct Trace {
  std::vector<double> output;
  std::vector<Bounds> reference;  // per window, after updating
};

/// method: 1..5. `known` is used only by method 1.
inline Trace reference_normalize(const std::vector<double>& x, std::size_t size, int method,
                                 double threshold, Bounds known = {0, 1}) {
  Trace t;
  t.output.resize(x.size());
  Bounds ref{0, 0};
  double prev_mean = 0;
  bool first = true;
  for (auto [b, e] : window_bounds(x.size(), size)) {
    const auto lo = *std::min_element(x.begin() + b, x.begin() + e);
    const auto hi = *std::max_element(x.begin() + b, x.begin() + e);
    double mean = std::accumulate(x.begin() + b, x.begin() + e, 0.0) / double(e - b);
    mean = std::min(std::max(mean, lo), hi);
    if (method == 1) {
      ref = known;
    } else if (first || method == 3) {
      ref = {lo, hi};
    } else if (method == 4 || method == 5) {
      double change;
      if (prev_mean == 0) {
        change = mean == 0 ? 0.0 : std::numeric_limits<double>::infinity();
      } else {
        change = std::fabs(mean - prev_mean) / std::fabs(prev_mean);
      }
      if (change >= threshold) {
        ref = {lo, hi};
      } else if (method == 5) {
        ref = {std::min(ref.lo, lo), std::max(ref.hi, hi)};
      }
    }
    first = false;
    prev_mean = mean;
    for (std::size_t i = b; i < e; ++i) t.output[i] = scale(x[i], ref);
    t.reference.push_back(ref);
  }
  return t;
}

/// Min/max over x[0 .. end of window k] for every k.
inline std::vector<Bounds> prefix_extrema(const std::vector<double>& x, std::size_t size) {
  std::vector<Bounds> out;
  for (auto [b, e] : window_bounds(x.size(), size)) {
    double lo = x[0];
    double hi = x[0];
    for (std::size_t i = 0; i < e; ++i) {
      if (x[i] < lo) lo = x[i];
      if (x[i] > hi) hi = x[i];
    }
    out.push_back({lo, hi});
  }
  return out;
}

inline double rmse(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s / double(a.size()));
}

}  // namespace adanorm::oracle
