#include "adanorm/report.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "adanorm/errors.hpp"

namespace adanorm {

namespace {

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

void put_real(std::ostream& out, double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.write(buf, end - buf);
}

void check(const std::ostream& out) {
  if (!out) throw IoError("write failed");
}

}  // namespace

json to_json(const AdaptationEvent& e) {
  return json{{"window_id", e.window_id},
              {"attribute", e.attribute},
              {"kind", kind_name(e.kind)},
              {"old_min", e.old_params.min},
              {"old_max", e.old_params.max},
              {"new_min", e.new_params.min},
              {"new_max", e.new_params.max},
              {"observed_change", finite_or_null(e.observed_change)}};
}

json to_json(const BenchReport& r, bool include_latencies) {
  json j{{"points_processed", r.points_processed},
         {"windows_processed", r.windows_processed},
         {"elapsed_seconds", r.elapsed.count()},
         {"throughput_pps", r.throughput},
         {"median_latency_seconds", r.median_latency().count()},
         {"total_execution_seconds", r.total_execution_time.count()},
         {"parallelism", r.parallelism},
         {"window_size", r.window_size}};
  json lat = json::array();
  if (include_latencies) {
    for (const auto& w : r.per_window_latency) {
      lat.push_back(json::array({w.window_id, Seconds(w.latency).count()}));
    }
  }
  j["latency_per_window"] = std::move(lat);
  return j;
}

json to_json(const StrategyConfig& c) {
  json j{{"method", static_cast<int>(c.method)},
         {"method_name", method_name(c.method)},
         {"threshold", finite_or_null(c.threshold)}};
  if (c.known_range) {
    json ranges = json::array();
    for (const auto& r : *c.known_range) ranges.push_back(json::array({r.min, r.max}));
    j["known_range"] = std::move(ranges);
  }
  return j;
}

json to_json(const EvalReport& r) {
  json rmse = json::object();
  json pct = json::object();
  json oob = json::object();
  json adapt = json::object();
  for (int m = 2; m <= 5; ++m) {
    const auto key = "1vs" + std::to_string(m);
    rmse[key] = r.rmse[m];
    if (m >= 3) pct[std::to_string(m) + "_over_2"] = r.improvement_over_first_window[m]
                                                         ? json(*r.improvement_over_first_window[m])
                                                         : json(nullptr);
  }
  for (int m = 1; m <= 5; ++m) oob[std::to_string(m)] = r.out_of_bound[m];
  for (int m = 4; m <= 5; ++m) {
    adapt[std::to_string(m)] = {{"replace", r.replacements[m]}, {"widen", r.widenings[m]}};
  }
  json ranges = json::array();
  for (const auto& k : r.known_range) ranges.push_back(json::array({k.min, k.max}));
  return json{{"dataset", r.dataset},
              {"window_size", r.window_size},
              {"threshold", finite_or_null(r.threshold)},
              {"stream_length", r.stream_length},
              {"arity", r.arity},
              {"known_range", std::move(ranges)},
              {"rmse_vs_baseline", std::move(rmse)},
              {"improvement_percent", std::move(pct)},
              {"out_of_bound_count", std::move(oob)},
              {"adaptations", std::move(adapt)}};
}

void write_events_jsonl(std::ostream& out, std::span<const AdaptationEvent> events) {
  for (const auto& e : events) out << to_json(e).dump() << '\n';
  check(out);
}

void write_normalized_csv(std::ostream& out, std::span<const NormalizedSample> samples) {
  for (const auto& s : samples) {
    for (std::size_t a = 0; a < s.values.size(); ++a) {
      if (a) out << ',';
      put_real(out, s.values[a]);
    }
    out << '\n';
  }
  check(out);
}

json normalized_to_json(std::span<const NormalizedSample> samples) {
  json arr = json::array();
  for (const auto& s : samples) arr.push_back({{"ordinal", s.ordinal}, {"values", s.values}});
  return arr;
}

void write_comparison_csv(std::ostream& out, std::span<const EvalReport> reports) {
  out << "dataset,window_size,threshold,1vs2,1vs3,1vs4,1vs5\n";
  for (const auto& r : reports) {
    out << r.dataset << ',' << r.window_size << ',';
    put_real(out, r.threshold);
    for (int m = 2; m <= 5; ++m) {
      out << ',';
      put_real(out, r.rmse[m]);
    }
    out << '\n';
  }
  check(out);
}

void write_window_sweep_csv(std::ostream& out, std::span<const EvalReport> reports) {
  out << "dataset,method,window_size,rmse\n";
  for (const auto& r : reports) {
    for (int m = 2; m <= 5; ++m) {
      out << r.dataset << ',' << m << ',' << r.window_size << ',';
      put_real(out, r.rmse[m]);
      out << '\n';
    }
  }
  check(out);
}

void write_bench_csv(std::ostream& out, std::span<const BenchReport> reports) {
  out << "parallelism,points_processed,elapsed_seconds,throughput_pps,median_latency_seconds\n";
  for (const auto& r : reports) {
    out << r.parallelism << ',' << r.points_processed << ',';
    put_real(out, r.elapsed.count());
    out << ',';
    put_real(out, r.throughput);
    out << ',';
    put_real(out, r.median_latency().count());
    out << '\n';
  }
  check(out);
}

void write_scaling_csv(std::ostream& out, std::span<const ScalingPoint> points) {
  out << "size,total_execution_seconds,repeats\n";
  for (const auto& p : points) {
    out << p.size << ',';
    put_real(out, p.total_execution_time.count());
    out << ',' << p.repeats.size() << '\n';
  }
  check(out);
}

}  // namespace adanorm
