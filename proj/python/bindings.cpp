#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <optional>
#include <string>
#include <vector>

#include "adanorm/core.hpp"
#include "adanorm/datagen.hpp"
#include "adanorm/errors.hpp"
#include "adanorm/eval.hpp"
#include "adanorm/pipeline.hpp"
#include "adanorm/report.hpp"
#include "adanorm/strategies.hpp"

namespace py = pybind11;
using namespace adanorm;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

// 1-D input is one attribute; 2-D is (samples, attributes).
std::vector<Sample> to_samples(const Array& data) {
  if (data.ndim() != 1 && data.ndim() != 2) throw py::value_error("expected a 1-D or 2-D array");
  const auto n = static_cast<std::size_t>(data.shape(0));
  const auto k = data.ndim() == 2 ? static_cast<std::size_t>(data.shape(1)) : std::size_t{1};
  const double* p = data.data();
  std::vector<Sample> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i].ordinal = i;
    out[i].values.assign(p + i * k, p + (i + 1) * k);
  }
  return out;
}

template <typename S>
Array to_array(const std::vector<S>& samples, std::size_t arity) {
  Array out({samples.size(), arity});
  auto m = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (std::size_t j = 0; j < arity; ++j) m(i, j) = samples[i].values[j];
  }
  return out;
}

std::vector<NormalizedSample> to_normalized(const Array& data) {
  std::vector<NormalizedSample> out;
  for (auto& s : to_samples(data)) out.push_back({s.ordinal, std::move(s.values)});
  return out;
}

py::object to_python(const json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

std::optional<std::vector<Range>> ranges_from(
    const std::optional<std::vector<std::pair<double, double>>>& pairs) {
  if (!pairs) return std::nullopt;
  std::vector<Range> r;
  for (auto [lo, hi] : *pairs) r.push_back({lo, hi});
  return r;
}

StrategyConfig make_config(int method, double threshold,
                           const std::optional<std::vector<std::pair<double, double>>>& known) {
  StrategyConfig c;
  c.method = parse_method(std::to_string(method));
  c.threshold = threshold;
  c.known_range = ranges_from(known);
  c.validate();
  return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Adaptive min-max normalization for numeric streams";
  m.attr("__version__") = "0.1.0";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  m.def("minmax_normalize",
        [](double x, double lo, double hi) { return minmax_normalize(x, {lo, hi}); },
        py::arg("x"), py::arg("refmin"), py::arg("refmax"));
  m.def("percent_mean_change", &percent_mean_change, py::arg("current_mean"),
        py::arg("previous_mean"));
  m.def(
      "compute_stats",
      [](const std::vector<double>& v) {
        const auto s = compute_stats(v);
        return py::make_tuple(s.min, s.max, s.mean);
      },
      py::arg("values"), "(min, max, mean) of a non-empty sequence");

  py::class_<Strategy>(m, "Strategy")
      .def(py::init([](int method, double threshold,
                       std::optional<std::vector<std::pair<double, double>>> known,
                       std::size_t arity) {
             return Strategy(make_config(method, threshold, known), arity);
           }),
           py::arg("method") = 5, py::arg("threshold") = kDefaultThreshold,
           py::arg("known_range") = py::none(), py::arg("arity") = 1)
      .def(
          "process",
          [](Strategy& s, const Array& window, std::uint64_t window_id) {
            Window w{window_id, to_samples(window)};
            const auto arity = w.arity();
            auto r = s.process(w);
            py::list events;
            for (const auto& e : r.events) events.append(to_python(to_json(e)));
            return py::make_tuple(to_array(r.samples, arity), events);
          },
          py::arg("window"), py::arg("window_id"),
          "Normalize one window; returns (values, events)")
      .def_property_readonly("reference", [](const Strategy& s) {
        std::vector<std::pair<double, double>> out;
        for (const auto& r : s.reference()) out.emplace_back(r.min, r.max);
        return out;
      });

  m.def(
      "generate_synthetic",
      [](std::size_t size, std::uint64_t seed,
         std::optional<std::vector<std::pair<double, double>>> segments, std::size_t attributes) {
        SyntheticSpec spec;
        spec.total_size = size;
        spec.seed = seed;
        if (segments) spec.segments = *ranges_from(segments);
        return to_array(generate_synthetic(spec, attributes), attributes);
      },
      py::arg("size") = 160000, py::arg("seed") = 42, py::arg("segments") = py::none(),
      py::arg("attributes") = 1);

  m.def(
      "load_csv",
      [](const std::filesystem::path& path, std::vector<std::string> columns, bool header) {
        CsvIngestSpec spec;
        spec.path = path;
        spec.has_header = header;
        for (auto& c : columns) spec.keep_columns.emplace_back(std::move(c));
        const auto s = load_csv(spec);
        return to_array(s, s.empty() ? 0 : s.front().values.size());
      },
      py::arg("path"), py::arg("columns") = std::vector<std::string>{},
      py::arg("header") = false);

  m.def(
      "normalize",
      [](const Array& data, int method, std::size_t window_size, double threshold,
         std::optional<std::vector<std::pair<double, double>>> known, std::size_t parallelism) {
        PipelineConfig c;
        c.strategy = make_config(method, threshold, known);
        c.window_size = window_size;
        c.parallelism = parallelism;
        const auto samples = to_samples(data);
        RunResult r;
        {
          py::gil_scoped_release release;
          r = run(c, samples);
        }
        const std::size_t arity = samples.empty() ? 0 : samples.front().values.size();
        py::list events;
        for (const auto& e : r.events) events.append(to_python(to_json(e)));
        return py::make_tuple(to_array(r.output, arity), events,
                              to_python(to_json(r.report, false)));
      },
      py::arg("data"), py::arg("method") = 5, py::arg("window_size") = 50,
      py::arg("threshold") = kDefaultThreshold, py::arg("known_range") = py::none(),
      py::arg("parallelism") = 1, "Returns (normalized, events, bench_report)");

  m.def(
      "rmse", [](const Array& a, const Array& b) { return rmse(to_normalized(a), to_normalized(b)); },
      py::arg("a"), py::arg("b"));
  m.def("improvement", &improvement, py::arg("rmse_worst"), py::arg("rmse_k"));
  m.def(
      "out_of_bound_count", [](const Array& a) { return out_of_bound_count(to_normalized(a)); },
      py::arg("data"));

  m.def(
      "run_comparison",
      [](const Array& data, std::size_t window_size, double threshold,
         std::optional<std::vector<std::pair<double, double>>> known, std::string dataset,
         std::size_t parallelism) {
        ComparisonOptions o;
        o.window_size = window_size;
        o.threshold = threshold;
        if (known) o.known_range = *ranges_from(known);
        o.dataset = std::move(dataset);
        o.parallelism = parallelism;
        const auto samples = to_samples(data);
        EvalReport r;
        {
          py::gil_scoped_release release;
          r = run_comparison(samples, o);
        }
        return to_python(to_json(r));
      },
      py::arg("data"), py::arg("window_size") = 50, py::arg("threshold") = kDefaultThreshold,
      py::arg("known_range") = py::none(), py::arg("dataset") = "stream",
      py::arg("parallelism") = 1);

  m.def(
      "measure_throughput",
      [](const Array& data, std::size_t parallelism, double duration_seconds, int method,
         std::size_t window_size, double threshold) {
        PipelineConfig c;
        c.strategy = make_config(method, threshold, std::nullopt);
        c.window_size = window_size;
        c.parallelism = parallelism;
        c.session_limit = Seconds(duration_seconds);
        auto samples = to_samples(data);
        BenchReport r;
        {
          py::gil_scoped_release release;
          r = measure_throughput(c, [&] { return samples; });
        }
        return to_python(to_json(r, false));
      },
      py::arg("data"), py::arg("parallelism") = 1, py::arg("duration_seconds") = 1.0,
      py::arg("method") = 5, py::arg("window_size") = 50,
      py::arg("threshold") = kDefaultThreshold);

  m.def(
      "measure_scaling",
      [](std::vector<std::size_t> sizes, std::size_t repeats, std::uint64_t seed, int method,
         std::size_t window_size, double threshold, std::size_t parallelism) {
        PipelineConfig c;
        c.strategy = make_config(method, threshold, std::nullopt);
        c.window_size = window_size;
        c.parallelism = parallelism;
        std::vector<ScalingPoint> points;
        {
          py::gil_scoped_release release;
          points = measure_scaling(c, sizes, seed, repeats);
        }
        std::vector<std::pair<std::size_t, double>> out;
        for (const auto& p : points) out.emplace_back(p.size, p.total_execution_time.count());
        return out;
      },
      py::arg("sizes") = std::vector<std::size_t>{20000, 40000, 80000, 160000},
      py::arg("repeats") = 5, py::arg("seed") = 42, py::arg("method") = 5,
      py::arg("window_size") = 50, py::arg("threshold") = kDefaultThreshold,
      py::arg("parallelism") = 1);
}
