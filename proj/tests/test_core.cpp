#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "adanorm/core.hpp"
#include "adanorm/errors.hpp"
#include "test_support.hpp"

using namespace adanorm;
using adanorm::testing::make_window;

TEST_CASE("compute_window_stats on the illustration windows") {
  auto a = compute_window_stats(make_window(1, {20, 25, 30, 35, 40}));
  REQUIRE(a.size() == 1);
  CHECK(a[0] == AttributeStats{20, 40, 30});

  auto b = compute_window_stats(make_window(2, {80, 85, 90, 95, 100}));
  CHECK(b[0] == AttributeStats{80, 100, 90});

  auto c = compute_window_stats(make_window(3, {7, 7, 7}));
  CHECK(c[0] == AttributeStats{7, 7, 7});
}

TEST_CASE("compute_window_stats rejects empty and ragged windows") {
  CHECK_THROWS_AS(compute_window_stats(Window{1, {}}), UsageError);
  Window ragged{1, {{0, {1.0, 2.0}}, {1, {3.0}}}};
  CHECK_THROWS_AS(compute_window_stats(ragged), UsageError);
}

TEST_CASE("compute_window_stats is per attribute") {
  Window w{1, {{0, {1.0, -5.0}}, {1, {3.0, 5.0}}}};
  auto s = compute_window_stats(w);
  REQUIRE(s.size() == 2);
  CHECK(s[0] == AttributeStats{1, 3, 2});
  CHECK(s[1] == AttributeStats{-5, 5, 0});
}

TEST_CASE("minmax_normalize") {
  CHECK(minmax_normalize(20, {20, 40}) == 0.0);
  CHECK(minmax_normalize(30, {20, 40}) == 0.5);
  CHECK(minmax_normalize(80, {20, 40}) == 3.0);
  CHECK(minmax_normalize(5, {5, 5}) == 0.5);
  CHECK(minmax_normalize(-100, {5, 5}) == 0.5);
}

TEST_CASE("percent_mean_change") {
  CHECK(percent_mean_change(90, 30) == 2.0);
  CHECK(percent_mean_change(30, 30) == 0.0);
  CHECK(percent_mean_change(5, 0) == std::numeric_limits<double>::infinity());
  CHECK(percent_mean_change(-5, 0) == std::numeric_limits<double>::infinity());
  CHECK(percent_mean_change(0, 0) == 0.0);
  // Negative previous mean uses its magnitude.
  CHECK(percent_mean_change(-90, -30) == 2.0);
  CHECK(percent_mean_change(30, -30) == 2.0);
}

TEST_CASE("out_of_bound uses a 1e-12 tolerance") {
  CHECK_FALSE(out_of_bound(0.0));
  CHECK_FALSE(out_of_bound(1.0));
  CHECK_FALSE(out_of_bound(1.0 + 1e-13));
  CHECK(out_of_bound(1.0 + 1e-9));
  CHECK(out_of_bound(-1e-9));
}

TEST_CASE("property: stats bracket the mean and extrema are attained") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> value(-1e6, 1e6);
  std::uniform_int_distribution<int> len(1, 200);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> v(len(rng));
    for (auto& x : v) x = value(rng);
    const auto s = compute_stats(v);
    REQUIRE(s.min <= s.mean);
    REQUIRE(s.mean <= s.max);
    REQUIRE(std::find(v.begin(), v.end(), s.min) != v.end());
    REQUIRE(std::find(v.begin(), v.end(), s.max) != v.end());
    // Recomputation reproduces the stored values exactly.
    REQUIRE(compute_stats(v) == s);
  }
}

TEST_CASE("property: minmax_normalize endpoints, monotonicity and round trip") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> value(-1e3, 1e3);
  for (int trial = 0; trial < 2000; ++trial) {
    double lo = value(rng);
    double hi = value(rng);
    if (lo > hi) std::swap(lo, hi);
    if (lo == hi) continue;
    const Range r{lo, hi};
    REQUIRE(minmax_normalize(lo, r) == 0.0);
    REQUIRE(minmax_normalize(hi, r) == 1.0);

    double x = value(rng);
    double y = value(rng);
    if (x > y) std::swap(x, y);
    REQUIRE(minmax_normalize(x, r) <= minmax_normalize(y, r));

    const double back = minmax_denormalize(minmax_normalize(x, r), r);
    REQUIRE(std::abs(back - x) <= 1e-12 * std::max({1.0, std::abs(x), std::abs(lo), std::abs(hi)}));
  }
}

TEST_CASE("property: percent_mean_change is symmetric around the previous mean") {
  std::mt19937_64 rng(3);
  // Integer-valued inputs keep prev +/- d exact.
  std::uniform_int_distribution<int> value(-100000, 100000);
  for (int trial = 0; trial < 1000; ++trial) {
    const double prev = value(rng);
    const double d = std::abs(value(rng));
    if (prev == 0) continue;
    REQUIRE(percent_mean_change(prev + d, prev) == percent_mean_change(prev - d, prev));
  }
}
