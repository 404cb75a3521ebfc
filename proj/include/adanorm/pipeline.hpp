#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "adanorm/core.hpp"
#include "adanorm/strategies.hpp"

namespace adanorm {

using Seconds = std::chrono::duration<double>;

struct PipelineConfig {
  StrategyConfig strategy;
  std::size_t window_size = 50;
  /// Number of normalizing workers. 1 runs every stage inline on the calling
  /// thread; above 1 the ingest stage gets its own thread and attributes are
  /// sharded round-robin over min(parallelism, arity) workers.
  std::size_t parallelism = 1;
  /// Duration of a throughput session (measure_throughput only).
  std::optional<Seconds> session_limit;
  /// Batches in flight per inter-stage queue.
  std::size_t queue_capacity = 16;
  /// Staged mode hands windows between threads in batches of about this many
  /// points (at least one window). Per-window latency then includes the wait
  /// for the batch to fill.
  std::size_t batch_points = 4096;

  /// Throws ConfigError.
  void validate() const;
};

struct WindowLatency {
  std::uint64_t window_id = 0;
  std::chrono::nanoseconds latency{0};
};

struct BenchReport {
  std::uint64_t points_processed = 0;
  std::uint64_t windows_processed = 0;
  /// Wall time from the first source pull to the last sink hand-off.
  Seconds elapsed{0};
  /// points_processed / elapsed (0 when nothing was processed).
  double throughput = 0.0;
  /// Window emission to the last normalized element of that window reaching
  /// the sink.
  std::vector<WindowLatency> per_window_latency;
  /// Wall time of the whole call including worker start-up and teardown.
  Seconds total_execution_time{0};
  std::size_t parallelism = 1;
  std::size_t window_size = 0;

  Seconds median_latency() const;
};

/// Pulls the next sample; nullopt ends the stream.
using SampleSource = std::function<std::optional<Sample>()>;

/// Receives each window's normalized samples and events, in window order.
using WindowSink =
    std::function<void(std::uint64_t window_id, std::vector<NormalizedSample>&& samples,
                       std::vector<AdaptationEvent>&& events)>;

/// Streams `source` through windowing and the configured strategy. The sink
/// sees windows in id order and events ordered by attribute within a window;
/// both are identical for every parallelism setting. Source exceptions and
/// out-of-order ordinals (UsageError) propagate to the caller after all
/// workers have stopped.
BenchReport run_streaming(const PipelineConfig& config, const SampleSource& source,
                          const WindowSink& sink);

struct RunResult {
  std::vector<NormalizedSample> output;
  std::vector<AdaptationEvent> events;
  BenchReport report;
};

RunResult run(const PipelineConfig& config, const SampleSource& source);
RunResult run(const PipelineConfig& config, std::span<const Sample> samples);

/// Source over a finite dataset; replays it `loops` times (0 = forever) with
/// ordinals continuing past the end so they stay strictly increasing.
SampleSource looping_source(std::span<const Sample> samples, std::size_t loops = 1);

/// Feeds the dataset produced by `source_factory`, looping it, until
/// config.session_limit elapses; output is discarded. Throws ConfigError if
/// the session limit is missing or not positive.
BenchReport measure_throughput(const PipelineConfig& config,
                               const std::function<std::vector<Sample>()>& source_factory);

struct ScalingPoint {
  std::size_t size = 0;
  /// Median over repeats.
  Seconds total_execution_time{0};
  std::vector<Seconds> repeats;
};

/// For each size (ascending) generates a fresh synthetic stream with the
/// default segments and `seed`, and times the full pipeline on it: one
/// untimed warm-up run, then `repeats` timed runs.
std::vector<ScalingPoint> measure_scaling(const PipelineConfig& config,
                                          std::span<const std::size_t> sizes,
                                          std::uint64_t seed = 42, std::size_t repeats = 3);

}  // namespace adanorm
