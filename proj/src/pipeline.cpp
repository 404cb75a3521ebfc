#include "adanorm/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <utility>

#include "adanorm/bounded_queue.hpp"
#include "adanorm/datagen.hpp"
#include "adanorm/errors.hpp"
#include "adanorm/windowing.hpp"

namespace adanorm {

namespace {

using Clock = std::chrono::steady_clock;

/// A window transposed to column-major for per-attribute processing.
struct WindowTask {
  std::uint64_t id = 0;
  std::vector<std::uint64_t> ordinals;
  std::vector<std::vector<double>> columns;
  Clock::time_point emitted;
};

using TaskPtr = std::shared_ptr<const WindowTask>;

TaskPtr make_task(Window&& window) {
  auto task = std::make_shared<WindowTask>();
  task->emitted = Clock::now();
  task->id = window.id;
  const std::size_t n = window.samples.size();
  const std::size_t arity = window.arity();
  task->ordinals.resize(n);
  task->columns.assign(arity, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = window.samples[i];
    task->ordinals[i] = s.ordinal;
    for (std::size_t a = 0; a < arity; ++a) task->columns[a][i] = s.values[a];
  }
  return task;
}

/// Normalized columns for the attributes one worker owns.
struct PartialResult {
  std::vector<std::size_t> attributes;
  std::vector<std::vector<double>> columns;
  std::vector<AdaptationEvent> events;
};

/// Attribute states owned by one worker: attributes w, w + W, w + 2W, ...
class AttributeShard {
 public:
  AttributeShard(const StrategyConfig& config, std::size_t first, std::size_t stride,
                 std::size_t arity)
      : config_(config) {
    for (std::size_t a = first; a < arity; a += stride) attributes_.push_back(a);
    states_.resize(attributes_.size());
  }

  PartialResult process(const WindowTask& task) {
    PartialResult r;
    r.attributes = attributes_;
    r.columns.resize(attributes_.size());
    for (std::size_t k = 0; k < attributes_.size(); ++k) {
      const auto a = attributes_[k];
      const auto& in = task.columns[a];
      auto& out = r.columns[k];
      out.resize(in.size());
      if (auto e = normalize_attribute(config_, a, states_[k], task.id, in, out)) {
        r.events.push_back(*e);
      }
    }
    return r;
  }

 private:
  const StrategyConfig& config_;
  std::vector<std::size_t> attributes_;
  std::vector<AttributeState> states_;
};

/// Rebuilds row-major samples and attribute-ordered events, then hands the
/// window to the sink.
class Assembler {
 public:
  Assembler(const WindowSink& sink, BenchReport& report) : sink_(sink), report_(report) {}

  void begin(const WindowTask& task) {
    const std::size_t n = task.ordinals.size();
    samples_.assign(n, NormalizedSample{});
    for (std::size_t i = 0; i < n; ++i) {
      samples_[i].ordinal = task.ordinals[i];
      samples_[i].values.resize(task.columns.size());
    }
    events_.clear();
  }

  void add(PartialResult&& part) {
    for (std::size_t k = 0; k < part.attributes.size(); ++k) {
      const auto a = part.attributes[k];
      const auto& col = part.columns[k];
      for (std::size_t i = 0; i < col.size(); ++i) samples_[i].values[a] = col[i];
    }
    for (auto& e : part.events) events_.push_back(e);
  }

  void finish(const WindowTask& task) {
    std::stable_sort(events_.begin(), events_.end(),
                     [](const AdaptationEvent& x, const AdaptationEvent& y) {
                       return x.attribute < y.attribute;
                     });
    const auto latency = std::chrono::duration_cast<std::chrono::nanoseconds>(
        Clock::now() - task.emitted);
    report_.per_window_latency.push_back({task.id, latency});
    report_.windows_processed += 1;
    sink_(task.id, std::move(samples_), std::move(events_));
    samples_ = {};
    events_ = {};
    last_finish_ = Clock::now();
  }

  std::optional<Clock::time_point> last_finish() const { return last_finish_; }

 private:
  const WindowSink& sink_;
  BenchReport& report_;
  std::vector<NormalizedSample> samples_;
  std::vector<AdaptationEvent> events_;
  std::optional<Clock::time_point> last_finish_;
};

/// First error wins; later ones are dropped.
class ErrorSlot {
 public:
  void set(std::exception_ptr e) {
    std::lock_guard lock(mutex_);
    if (!error_) error_ = std::move(e);
  }
  void rethrow_if_set() {
    std::lock_guard lock(mutex_);
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::mutex mutex_;
  std::exception_ptr error_;
};

void run_inline(const PipelineConfig& config, const SampleSource& source, Sample first,
                Assembler& assembler, std::uint64_t& points) {
  WindowAssembler windows(config.window_size);
  const std::size_t arity = first.values.size();
  config.strategy.validate(arity);
  AttributeShard shard(config.strategy, 0, 1, arity);

  auto handle = [&](Window&& w) {
    const auto task = make_task(std::move(w));
    assembler.begin(*task);
    assembler.add(shard.process(*task));
    assembler.finish(*task);
  };

  std::optional<Sample> next = std::move(first);
  while (next) {
    ++points;
    if (auto w = windows.push(std::move(*next))) handle(std::move(*w));
    next = source();
  }
  if (auto w = windows.flush()) handle(std::move(*w));
}

void run_staged(const PipelineConfig& config, const SampleSource& source, Sample first,
                Assembler& assembler, std::uint64_t& points) {
  const std::size_t arity = first.values.size();
  config.strategy.validate(arity);
  const std::size_t workers = std::max<std::size_t>(1, std::min(config.parallelism, arity));
  const std::size_t batch_windows = std::max<std::size_t>(1, config.batch_points / config.window_size);

  using Batch = std::shared_ptr<const std::vector<TaskPtr>>;
  BoundedQueue<Batch> order(config.queue_capacity);
  std::vector<std::unique_ptr<BoundedQueue<Batch>>> inputs;
  std::vector<std::unique_ptr<BoundedQueue<std::vector<PartialResult>>>> outputs;
  for (std::size_t w = 0; w < workers; ++w) {
    inputs.push_back(std::make_unique<BoundedQueue<Batch>>(config.queue_capacity));
    outputs.push_back(
        std::make_unique<BoundedQueue<std::vector<PartialResult>>>(config.queue_capacity));
  }

  ErrorSlot error;
  auto close_all = [&] {
    order.close();
    for (auto& q : inputs) q->close();
    for (auto& q : outputs) q->close();
  };

  std::atomic<std::uint64_t> ingested{0};
  std::vector<std::thread> threads;
  threads.emplace_back([&, first = std::move(first)]() mutable {
    try {
      WindowAssembler windows(config.window_size);
      std::vector<TaskPtr> pending;
      auto dispatch = [&] {
        if (pending.empty()) return true;
        auto batch = std::make_shared<const std::vector<TaskPtr>>(std::move(pending));
        pending = {};
        for (auto& q : inputs) {
          if (!q->push(batch)) return false;
        }
        return order.push(std::move(batch));
      };
      std::optional<Sample> next = std::move(first);
      bool open = true;
      while (next && open) {
        ingested.fetch_add(1, std::memory_order_relaxed);
        if (auto w = windows.push(std::move(*next))) {
          pending.push_back(make_task(std::move(*w)));
          if (pending.size() >= batch_windows) open = dispatch();
        }
        if (open) next = source();
      }
      if (open) {
        if (auto w = windows.flush()) pending.push_back(make_task(std::move(*w)));
        dispatch();
      }
      order.close();
      for (auto& q : inputs) q->close();
    } catch (...) {
      error.set(std::current_exception());
      close_all();
    }
  });

  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        AttributeShard shard(config.strategy, w, workers, arity);
        while (auto batch = inputs[w]->pop()) {
          std::vector<PartialResult> parts;
          parts.reserve((*batch)->size());
          for (const auto& task : **batch) parts.push_back(shard.process(*task));
          if (!outputs[w]->push(std::move(parts))) break;
        }
        outputs[w]->close();
      } catch (...) {
        error.set(std::current_exception());
        close_all();
      }
    });
  }

  try {
    std::vector<std::vector<PartialResult>> parts(workers);
    bool complete = true;
    while (complete) {
      auto batch = order.pop();
      if (!batch) break;
      for (std::size_t w = 0; w < workers && complete; ++w) {
        auto p = outputs[w]->pop();
        if (p) parts[w] = std::move(*p);
        complete = p.has_value();
      }
      if (!complete) break;
      for (std::size_t k = 0; k < (*batch)->size(); ++k) {
        const auto& task = *(**batch)[k];
        assembler.begin(task);
        for (auto& per_worker : parts) assembler.add(std::move(per_worker[k]));
        assembler.finish(task);
      }
    }
  } catch (...) {
    error.set(std::current_exception());
  }
  close_all();
  for (auto& t : threads) t.join();
  points = ingested.load();
  error.rethrow_if_set();
}

}  // namespace

void PipelineConfig::validate() const {
  if (window_size == 0) throw ConfigError("window size must be positive");
  if (parallelism == 0) throw ConfigError("parallelism must be at least 1");
  if (queue_capacity == 0) throw ConfigError("queue capacity must be positive");
  if (batch_points == 0) throw ConfigError("batch size must be positive");
  strategy.validate();
}

Seconds BenchReport::median_latency() const {
  if (per_window_latency.empty()) return Seconds{0};
  std::vector<std::chrono::nanoseconds> v;
  v.reserve(per_window_latency.size());
  for (const auto& w : per_window_latency) v.push_back(w.latency);
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  if (v.size() % 2 == 1) return *mid;
  const auto upper = *mid;
  const auto lower = *std::max_element(v.begin(), mid);
  return Seconds(lower + upper) / 2.0;
}

BenchReport run_streaming(const PipelineConfig& config, const SampleSource& source,
                          const WindowSink& sink) {
  config.validate();
  const auto start = Clock::now();

  BenchReport report;
  report.parallelism = config.parallelism;
  report.window_size = config.window_size;
  Assembler assembler(sink, report);

  std::uint64_t points = 0;
  if (auto first = source()) {
    if (config.parallelism == 1) {
      run_inline(config, source, std::move(*first), assembler, points);
    } else {
      run_staged(config, source, std::move(*first), assembler, points);
    }
  }

  const auto end = Clock::now();
  report.points_processed = points;
  report.elapsed = assembler.last_finish().value_or(end) - start;
  report.total_execution_time = end - start;
  report.throughput = report.elapsed.count() > 0.0 && points > 0
                          ? static_cast<double>(points) / report.elapsed.count()
                          : 0.0;
  return report;
}

RunResult run(const PipelineConfig& config, const SampleSource& source) {
  RunResult result;
  result.report = run_streaming(
      config, source,
      [&](std::uint64_t, std::vector<NormalizedSample>&& samples,
          std::vector<AdaptationEvent>&& events) {
        for (auto& s : samples) result.output.push_back(std::move(s));
        for (auto& e : events) result.events.push_back(e);
      });
  return result;
}

RunResult run(const PipelineConfig& config, std::span<const Sample> samples) {
  return run(config, looping_source(samples, 1));
}

SampleSource looping_source(std::span<const Sample> samples, std::size_t loops) {
  struct Cursor {
    std::size_t index = 0;
    std::size_t loop = 0;
    std::uint64_t offset = 0;
  };
  auto cursor = std::make_shared<Cursor>();
  const std::uint64_t period = samples.empty() ? 0 : samples.back().ordinal + 1;
  return [samples, loops, period, cursor]() -> std::optional<Sample> {
    if (samples.empty()) return std::nullopt;
    if (cursor->index == samples.size()) {
      ++cursor->loop;
      if (loops != 0 && cursor->loop >= loops) return std::nullopt;
      cursor->index = 0;
      cursor->offset += period;
    }
    Sample s = samples[cursor->index++];
    s.ordinal += cursor->offset;
    return s;
  };
}

BenchReport measure_throughput(const PipelineConfig& config,
                               const std::function<std::vector<Sample>()>& source_factory) {
  if (!config.session_limit || !(config.session_limit->count() > 0.0)) {
    throw ConfigError("throughput session requires a positive duration");
  }
  const std::vector<Sample> data = source_factory();
  if (data.empty()) throw ConfigError("throughput session needs a non-empty dataset");

  auto inner = looping_source(data, 0);
  const auto deadline =
      Clock::now() + std::chrono::duration_cast<Clock::duration>(*config.session_limit);
  std::uint64_t pulled = 0;
  SampleSource timed = [&]() -> std::optional<Sample> {
    // Checking the clock every sample would dominate the cost of a pull.
    if ((++pulled & 0xff) == 0 && Clock::now() >= deadline) return std::nullopt;
    return inner();
  };
  return run_streaming(config, timed,
                       [](std::uint64_t, std::vector<NormalizedSample>&&,
                          std::vector<AdaptationEvent>&&) {});
}

std::vector<ScalingPoint> measure_scaling(const PipelineConfig& config,
                                          std::span<const std::size_t> sizes, std::uint64_t seed,
                                          std::size_t repeats) {
  if (!std::is_sorted(sizes.begin(), sizes.end())) {
    throw ConfigError("scaling sizes must be ascending");
  }
  if (repeats == 0) throw ConfigError("repeats must be positive");

  std::vector<ScalingPoint> points;
  for (const auto size : sizes) {
    std::vector<Sample> data;
    if (size > 0) {
      SyntheticSpec spec;
      spec.total_size = size;
      spec.seed = seed;
      data = generate_synthetic(spec);
    }
    ScalingPoint p;
    p.size = size;
    // The first run warms caches and the allocator and is not recorded.
    for (std::size_t r = 0; r <= repeats; ++r) {
      const auto report = run_streaming(config, looping_source(data, 1),
                                        [](std::uint64_t, std::vector<NormalizedSample>&&,
                                           std::vector<AdaptationEvent>&&) {});
      if (r > 0) p.repeats.push_back(report.total_execution_time);
    }
    auto sorted = p.repeats;
    std::sort(sorted.begin(), sorted.end());
    p.total_execution_time = sorted.size() % 2 == 1
                                 ? sorted[sorted.size() / 2]
                                 : (sorted[sorted.size() / 2 - 1] + sorted[sorted.size() / 2]) / 2.0;
    points.push_back(std::move(p));
  }
  return points;
}

}  // namespace adanorm
