#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include <json.hpp>

#include "adanorm/core.hpp"
#include "adanorm/eval.hpp"
#include "adanorm/pipeline.hpp"
#include "adanorm/strategies.hpp"

namespace adanorm {

using nlohmann::json;

/// {window_id, attribute, kind, old_min, old_max, new_min, new_max,
/// observed_change}; an infinite change (zero previous mean) is written as
/// null.
json to_json(const AdaptationEvent& event);

/// Keys: points_processed, elapsed_seconds, throughput_pps,
/// latency_per_window ([[window_id, seconds], ...]), total_execution_seconds,
/// plus windows_processed, median_latency_seconds, parallelism, window_size.
json to_json(const BenchReport& report, bool include_latencies = true);

json to_json(const EvalReport& report);

json to_json(const StrategyConfig& config);

/// One event per line.
void write_events_jsonl(std::ostream& out, std::span<const AdaptationEvent> events);

/// One row per sample, attributes comma-separated, shortest round-trip form.
void write_normalized_csv(std::ostream& out, std::span<const NormalizedSample> samples);

/// [{"ordinal": n, "values": [...]}, ...]
json normalized_to_json(std::span<const NormalizedSample> samples);

/// Comparison table: dataset,window_size,threshold,1vs2,1vs3,1vs4,1vs5 (raw
/// RMSE), one row per report.
void write_comparison_csv(std::ostream& out, std::span<const EvalReport> reports);

/// Long format for RMSE-vs-window-size plots: dataset,method,window_size,rmse.
void write_window_sweep_csv(std::ostream& out, std::span<const EvalReport> reports);

/// parallelism,points_processed,elapsed_seconds,throughput_pps,median_latency_seconds
void write_bench_csv(std::ostream& out, std::span<const BenchReport> reports);

/// size,total_execution_seconds,repeats
void write_scaling_csv(std::ostream& out, std::span<const ScalingPoint> points);

}  // namespace adanorm
