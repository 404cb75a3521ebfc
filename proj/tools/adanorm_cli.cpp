// adanorm: generate drift streams, normalize CSV streams, and run the
// comparison / throughput / scaling experiments.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 data or I/O error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "adanorm/datagen.hpp"
#include "adanorm/errors.hpp"
#include "adanorm/eval.hpp"
#include "adanorm/pipeline.hpp"
#include "adanorm/report.hpp"
#include "adanorm/strategies.hpp"

namespace {

using namespace adanorm;

enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2 };

/// Options shared by the subcommands that read a stream.
struct InputOptions {
  std::string input;
  bool header = false;
  std::vector<std::string> columns;
  std::size_t size = 160000;
  std::uint64_t seed = 42;
  std::string segments = format_segments(SyntheticSpec::default_segments());
  std::size_t attributes = 1;
};

struct StrategyOptions {
  std::string method = "5";
  std::size_t window_size = 50;
  double threshold = kDefaultThreshold;
  std::vector<double> known_min;
  std::vector<double> known_max;
  std::size_t parallelism = 1;
};

struct OutputOptions {
  std::string output = "-";
  std::string format = "csv";
};

/// Writes to a file, or stdout for "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path == "-" || path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw IoError("cannot open '" + path + "' for writing");
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  void close() {
    stream().flush();
    if (!stream()) throw IoError("write failed");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void add_input_options(CLI::App* cmd, InputOptions& o, bool synthetic_fallback) {
  cmd->add_option("-i,--input", o.input, "CSV input (one column per attribute)");
  cmd->add_flag("--header", o.header, "First non-comment row is a header");
  cmd->add_option("--columns", o.columns, "Columns to keep (indices or header names)")
      ->delimiter(',');
  if (synthetic_fallback) {
    cmd->add_option("--size", o.size, "Synthetic stream size when no --input is given")
        ->capture_default_str();
    cmd->add_option("--seed", o.seed, "Synthetic generator seed")->capture_default_str();
    cmd->add_option("--segments", o.segments, "Synthetic segments low:high,...")
        ->capture_default_str();
    cmd->add_option("--attributes", o.attributes, "Independent synthetic attributes")
        ->capture_default_str();
  }
}

void add_strategy_options(CLI::App* cmd, StrategyOptions& o, bool single_method) {
  if (single_method) {
    cmd->add_option("-m,--method", o.method, "Method 1-5 or name")->capture_default_str();
    cmd->add_option("-n,--window-size", o.window_size, "Tumbling window size N")
        ->capture_default_str();
  }
  cmd->add_option("-t,--threshold", o.threshold, "Significant mean-change threshold")
      ->capture_default_str();
  cmd->add_option("--known-min", o.known_min, "Known minimum (repeat per attribute)");
  cmd->add_option("--known-max", o.known_max, "Known maximum (repeat per attribute)");
}

void add_output_options(CLI::App* cmd, OutputOptions& o, std::string default_format) {
  o.format = std::move(default_format);
  cmd->add_option("-o,--output", o.output, "Output path, - for stdout")->capture_default_str();
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

SyntheticSpec synthetic_spec(const InputOptions& o) {
  SyntheticSpec spec;
  spec.total_size = o.size;
  spec.seed = o.seed;
  spec.segments = parse_segments(o.segments);
  spec.validate();
  if (o.attributes == 0) throw ConfigError("--attributes must be positive");
  return spec;
}

std::vector<Sample> load_input(const InputOptions& o) {
  CsvIngestSpec spec;
  spec.path = o.input;
  spec.has_header = o.header;
  for (const auto& c : o.columns) {
    const bool numeric = !c.empty() && c.find_first_not_of("0123456789") == std::string::npos;
    if (numeric) {
      spec.keep_columns.emplace_back(static_cast<std::size_t>(std::stoull(c)));
    } else {
      spec.keep_columns.emplace_back(c);
    }
  }
  return load_csv(spec);
}

std::optional<std::vector<Range>> known_range(const StrategyOptions& o) {
  if (o.known_min.empty() && o.known_max.empty()) return std::nullopt;
  if (o.known_min.size() != o.known_max.size()) {
    throw ConfigError("--known-min and --known-max must be given the same number of times");
  }
  std::vector<Range> r;
  for (std::size_t i = 0; i < o.known_min.size(); ++i) r.push_back({o.known_min[i], o.known_max[i]});
  return r;
}

StrategyConfig strategy_config(const StrategyOptions& o) {
  StrategyConfig c;
  c.method = parse_method(o.method);
  c.threshold = o.threshold;
  c.known_range = known_range(o);
  if (c.method == Method::KnownRange && !c.known_range) {
    throw ConfigError("method 1 requires --known-min and --known-max");
  }
  c.validate();
  return c;
}

std::string config_comment(const json& config) {
  std::ostringstream os;
  os << "#";
  for (const auto& [k, v] : config.items()) os << ' ' << k << '=' << v.dump();
  return os.str();
}

// ---- gen -------------------------------------------------------------------

int cmd_gen(const InputOptions& in, const std::string& output) {
  const auto spec = synthetic_spec(in);
  const auto samples = generate_synthetic(spec, in.attributes);
  Output out(output);
  write_synthetic_csv(out.stream(), spec, samples);
  out.close();
  return kOk;
}

// ---- normalize -------------------------------------------------------------

int cmd_normalize(const InputOptions& in, const StrategyOptions& so, const OutputOptions& oo,
                  const std::string& events_path) {
  PipelineConfig config;
  config.strategy = strategy_config(so);
  config.window_size = so.window_size;
  config.parallelism = so.parallelism;
  config.validate();
  if (in.input.empty()) throw ConfigError("normalize requires --input");

  const auto samples = load_input(in);
  const auto result = run(config, samples);

  json meta{{"input", in.input},
            {"method", static_cast<int>(config.strategy.method)},
            {"window_size", config.window_size},
            {"threshold", config.strategy.threshold},
            {"parallelism", config.parallelism}};

  Output out(oo.output);
  if (oo.format == "json") {
    json doc{{"config", meta},
             {"samples", normalized_to_json(result.output)},
             {"report", to_json(result.report, false)}};
    out.stream() << doc.dump(2) << '\n';
  } else {
    out.stream() << config_comment(meta) << '\n';
    write_normalized_csv(out.stream(), result.output);
  }
  out.close();

  if (!events_path.empty()) {
    Output ev(events_path);
    write_events_jsonl(ev.stream(), result.events);
    ev.close();
  }
  return kOk;
}

// ---- compare ---------------------------------------------------------------

int cmd_compare(const InputOptions& in, const StrategyOptions& so, const OutputOptions& oo,
                const std::vector<std::size_t>& window_sizes) {
  if (window_sizes.empty()) throw ConfigError("--window-size needs at least one value");
  for (auto n : window_sizes) {
    if (n == 0) throw ConfigError("window sizes must be positive");
  }
  if (!(so.threshold >= 0.0)) throw ConfigError("threshold must be non-negative");

  std::vector<Sample> samples;
  ComparisonOptions opts;
  opts.threshold = so.threshold;
  opts.parallelism = so.parallelism;
  json meta{{"threshold", so.threshold}, {"parallelism", so.parallelism}};
  if (in.input.empty()) {
    const auto spec = synthetic_spec(in);
    samples = generate_synthetic(spec, in.attributes);
    opts.dataset = "synthetic";
    opts.known_range.assign(in.attributes, spec.global_range());
    meta["seed"] = spec.seed;
    meta["segments"] = format_segments(spec.segments);
    meta["generator"] = kGeneratorName;
  } else {
    samples = load_input(in);
    opts.dataset = std::filesystem::path(in.input).stem().string();
    meta["input"] = in.input;
  }
  if (auto k = known_range(so)) opts.known_range = *k;

  std::vector<EvalReport> reports;
  for (auto n : window_sizes) {
    opts.window_size = n;
    reports.push_back(run_comparison(samples, opts));
  }

  Output out(oo.output);
  if (oo.format == "json") {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    out.stream() << json{{"config", meta}, {"reports", arr}}.dump(2) << '\n';
  } else {
    out.stream() << config_comment(meta) << '\n';
    if (reports.size() == 1) {
      write_comparison_csv(out.stream(), reports);
    } else {
      write_window_sweep_csv(out.stream(), reports);
    }
  }
  out.close();
  return kOk;
}

// ---- bench -----------------------------------------------------------------

int cmd_bench(const InputOptions& in, const StrategyOptions& so, const OutputOptions& oo,
              const std::vector<std::size_t>& parallelism, double duration) {
  if (!(duration > 0.0)) throw ConfigError("--duration-seconds must be positive");
  if (parallelism.empty()) throw ConfigError("-p needs at least one value");

  std::function<std::vector<Sample>()> factory;
  json meta{{"method", so.method},
            {"window_size", so.window_size},
            {"threshold", so.threshold},
            {"duration_seconds", duration}};
  if (in.input.empty()) {
    const auto spec = synthetic_spec(in);
    factory = [spec, arity = in.attributes] { return generate_synthetic(spec, arity); };
    meta["seed"] = spec.seed;
    meta["size"] = spec.total_size;
    meta["attributes"] = in.attributes;
  } else {
    auto data = std::make_shared<std::vector<Sample>>(load_input(in));
    factory = [data] { return *data; };
    meta["input"] = in.input;
  }

  std::vector<BenchReport> reports;
  for (auto p : parallelism) {
    PipelineConfig config;
    config.strategy = strategy_config(so);
    config.window_size = so.window_size;
    config.parallelism = p;
    config.session_limit = Seconds(duration);
    config.validate();
    reports.push_back(measure_throughput(config, factory));
  }

  Output out(oo.output);
  if (oo.format == "json") {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(to_json(r, false));
    out.stream() << json{{"config", meta}, {"runs", arr}}.dump(2) << '\n';
  } else {
    out.stream() << config_comment(meta) << '\n';
    write_bench_csv(out.stream(), reports);
  }
  out.close();
  return kOk;
}

// ---- scaling ---------------------------------------------------------------

int cmd_scaling(StrategyOptions so, const OutputOptions& oo,
                const std::vector<std::size_t>& sizes, std::size_t repeats, std::uint64_t seed) {
  if (parse_method(so.method) == Method::KnownRange && so.known_min.empty() &&
      so.known_max.empty()) {
    const auto r = SyntheticSpec{}.global_range();
    so.known_min = {r.min};
    so.known_max = {r.max};
  }
  PipelineConfig config;
  config.strategy = strategy_config(so);
  config.window_size = so.window_size;
  config.parallelism = so.parallelism;
  config.validate();

  const auto points = measure_scaling(config, sizes, seed, repeats);
  json meta{{"method", static_cast<int>(config.strategy.method)},
            {"window_size", config.window_size},
            {"threshold", config.strategy.threshold},
            {"parallelism", config.parallelism},
            {"seed", seed},
            {"repeats", repeats}};

  Output out(oo.output);
  if (oo.format == "json") {
    json rows = json::array();
    for (const auto& p : points) {
      json reps = json::array();
      for (auto r : p.repeats) reps.push_back(r.count());
      rows.push_back({{"size", p.size},
                      {"total_execution_seconds", p.total_execution_time.count()},
                      {"repeats", reps}});
    }
    out.stream() << json{{"config", meta}, {"rows", rows}}.dump(2) << '\n';
  } else {
    out.stream() << config_comment(meta) << '\n';
    write_scaling_csv(out.stream(), points);
  }
  out.close();
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive min-max normalization for numeric streams"};
  app.require_subcommand(1);

  InputOptions gen_in;
  std::string gen_out = "-";
  auto* gen = app.add_subcommand("gen", "Write a synthetic drift stream as CSV");
  gen->add_option("--size", gen_in.size, "Number of points")->capture_default_str();
  gen->add_option("--seed", gen_in.seed, "Generator seed")->capture_default_str();
  gen->add_option("--segments", gen_in.segments, "Segments low:high,...")->capture_default_str();
  gen->add_option("--attributes", gen_in.attributes, "Independent attributes")
      ->capture_default_str();
  gen->add_option("-o,--output", gen_out, "Output path, - for stdout")->capture_default_str();

  InputOptions norm_in;
  StrategyOptions norm_so;
  OutputOptions norm_oo;
  std::string events_path;
  auto* normalize = app.add_subcommand("normalize", "Normalize a CSV stream");
  add_input_options(normalize, norm_in, false);
  add_strategy_options(normalize, norm_so, true);
  add_output_options(normalize, norm_oo, "csv");
  normalize->add_option("-p,--parallelism", norm_so.parallelism, "Normalizing workers")
      ->capture_default_str();
  normalize->add_option("--events", events_path, "Write adaptation events as JSON lines");

  InputOptions cmp_in;
  StrategyOptions cmp_so;
  OutputOptions cmp_oo;
  std::vector<std::size_t> cmp_sizes{50};
  auto* compare = app.add_subcommand("compare", "RMSE of methods 2-5 against method 1");
  add_input_options(compare, cmp_in, true);
  add_strategy_options(compare, cmp_so, false);
  add_output_options(compare, cmp_oo, "csv");
  compare->add_option("-n,--window-size", cmp_sizes, "Window size(s), comma separated")
      ->delimiter(',')
      ->capture_default_str();
  compare->add_option("-p,--parallelism", cmp_so.parallelism, "Normalizing workers")
      ->capture_default_str();

  InputOptions bench_in;
  bench_in.attributes = 5;
  StrategyOptions bench_so;
  OutputOptions bench_oo;
  std::vector<std::size_t> bench_p{1, 2, 4, 8};
  double duration = 10.0;
  auto* bench = app.add_subcommand("bench", "Throughput per parallelism setting");
  add_input_options(bench, bench_in, true);
  add_strategy_options(bench, bench_so, true);
  add_output_options(bench, bench_oo, "csv");
  bench->add_option("-p,--parallelism", bench_p, "Worker counts, comma separated")
      ->delimiter(',')
      ->capture_default_str();
  bench->add_option("--duration-seconds", duration, "Session length per setting")
      ->capture_default_str();

  StrategyOptions scale_so;
  OutputOptions scale_oo;
  std::vector<std::size_t> sizes{20000, 40000, 80000, 160000};
  std::size_t repeats = 5;
  std::uint64_t scale_seed = 42;
  auto* scaling = app.add_subcommand("scaling", "Execution time against stream size");
  add_strategy_options(scaling, scale_so, true);
  add_output_options(scaling, scale_oo, "csv");
  scaling->add_option("--sizes", sizes, "Stream sizes, comma separated")
      ->delimiter(',')
      ->capture_default_str();
  scaling->add_option("--repeats", repeats, "Runs per size (median reported)")
      ->capture_default_str();
  scaling->add_option("--seed", scale_seed, "Generator seed")->capture_default_str();
  scaling->add_option("-p,--parallelism", scale_so.parallelism, "Normalizing workers")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (gen->parsed()) return cmd_gen(gen_in, gen_out);
    if (normalize->parsed()) return cmd_normalize(norm_in, norm_so, norm_oo, events_path);
    if (compare->parsed()) return cmd_compare(cmp_in, cmp_so, cmp_oo, cmp_sizes);
    if (bench->parsed()) return cmd_bench(bench_in, bench_so, bench_oo, bench_p, duration);
    if (scaling->parsed()) return cmd_scaling(scale_so, scale_oo, sizes, repeats, scale_seed);
  } catch (const ConfigError& e) {
    std::cerr << "adanorm: " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "adanorm: " << e.what() << '\n';
    return kUsage;
  } catch (const DataError& e) {
    std::cerr << "adanorm: " << e.what() << '\n';
    return kData;
  } catch (const IoError& e) {
    std::cerr << "adanorm: " << e.what() << '\n';
    return kData;
  } catch (const std::exception& e) {
    std::cerr << "adanorm: " << e.what() << '\n';
    return kData;
  }
  return kUsage;
}
