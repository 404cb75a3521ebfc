#include "adanorm/eval.hpp"

#include <cmath>
#include <string>

#include "adanorm/datagen.hpp"
#include "adanorm/errors.hpp"
#include "adanorm/pipeline.hpp"

namespace adanorm {

double rmse(std::span<const NormalizedSample> a, std::span<const NormalizedSample> b) {
  if (a.size() != b.size()) {
    throw UsageError("rmse: stream lengths differ (" + std::to_string(a.size()) + " vs " +
                     std::to_string(b.size()) + ")");
  }
  if (a.empty()) throw UsageError("rmse: empty streams");
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].ordinal != b[i].ordinal) {
      throw UsageError("rmse: ordinals not aligned at position " + std::to_string(i));
    }
    if (a[i].values.size() != b[i].values.size()) {
      throw UsageError("rmse: arity mismatch at position " + std::to_string(i));
    }
    for (std::size_t j = 0; j < a[i].values.size(); ++j) {
      const double d = a[i].values[j] - b[i].values[j];
      sum += d * d;
    }
    count += a[i].values.size();
  }
  if (count == 0) throw UsageError("rmse: zero-arity streams");
  return std::sqrt(sum / static_cast<double>(count));
}

double improvement(double rmse_worst, double rmse_k) {
  if (!(rmse_worst > 0.0)) throw UsageError("improvement: reference RMSE must be positive");
  return 100.0 * (rmse_worst - rmse_k) / rmse_worst;
}

std::uint64_t out_of_bound_count(std::span<const NormalizedSample> stream) {
  std::uint64_t n = 0;
  for (const auto& s : stream) {
    for (double v : s.values) n += out_of_bound(v) ? 1 : 0;
  }
  return n;
}

EvalReport run_comparison(std::span<const Sample> stream, const ComparisonOptions& options) {
  if (stream.empty()) throw UsageError("run_comparison: empty stream");

  EvalReport report;
  report.dataset = options.dataset;
  report.window_size = options.window_size;
  report.threshold = options.threshold;
  report.stream_length = stream.size();
  report.arity = stream.front().values.size();
  report.known_range = options.known_range.empty()
                           ? global_ranges(stream)
                           : options.known_range;

  std::array<std::vector<NormalizedSample>, 6> outputs;
  for (int m = 1; m <= 5; ++m) {
    PipelineConfig config;
    config.window_size = options.window_size;
    config.parallelism = options.parallelism;
    config.strategy.method = static_cast<Method>(m);
    config.strategy.threshold = options.threshold;
    if (m == 1) config.strategy.known_range = report.known_range;
    auto result = run(config, stream);
    outputs[m] = std::move(result.output);
    report.out_of_bound[m] = out_of_bound_count(outputs[m]);
    for (const auto& e : result.events) {
      if (e.kind == AdaptationKind::Replace) ++report.replacements[m];
      if (e.kind == AdaptationKind::Widen) ++report.widenings[m];
    }
  }

  for (int m = 1; m <= 5; ++m) report.rmse[m] = rmse(outputs[m], outputs[1]);
  if (report.rmse[2] > 0.0) {
    for (int m = 3; m <= 5; ++m) {
      report.improvement_over_first_window[m] = improvement(report.rmse[2], report.rmse[m]);
    }
  }
  return report;
}

}  // namespace adanorm
