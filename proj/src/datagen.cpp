#include "adanorm/datagen.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "adanorm/errors.hpp"

namespace adanorm {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    cells.push_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return cells;
}

bool parse_real(std::string_view cell, double& out) {
  if (cell.empty()) return false;
  if (cell.front() == '+') cell.remove_prefix(1);
  const auto* end = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(cell.data(), end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

}  // namespace

Range SyntheticSpec::global_range() const {
  if (segments.empty()) return {};
  Range r = segments.front();
  for (const auto& s : segments) {
    r.min = std::min(r.min, s.min);
    r.max = std::max(r.max, s.max);
  }
  return r;
}

void SyntheticSpec::validate() const {
  if (total_size == 0) throw ConfigError("synthetic size must be positive");
  if (segments.empty()) throw ConfigError("at least one segment is required");
  if (segments.size() > total_size) throw ConfigError("more segments than points");
  for (const auto& s : segments) {
    if (!std::isfinite(s.min) || !std::isfinite(s.max) || !(s.min < s.max)) {
      throw ConfigError("segment bounds must be finite with low < high");
    }
  }
}

std::size_t SyntheticSpec::segment_size(std::size_t k) const {
  const std::size_t base = total_size / segments.size();
  return k + 1 == segments.size() ? total_size - base * (segments.size() - 1) : base;
}

std::vector<Sample> generate_synthetic(const SyntheticSpec& spec) {
  return generate_synthetic(spec, 1);
}

std::vector<Sample> generate_synthetic(const SyntheticSpec& spec, std::size_t arity) {
  spec.validate();
  if (arity == 0) throw ConfigError("arity must be positive");

  std::vector<Sample> out(spec.total_size);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].ordinal = i;
    out[i].values.resize(arity);
  }
  for (std::size_t a = 0; a < arity; ++a) {
    std::mt19937_64 rng(spec.seed + a);
    std::size_t i = 0;
    for (std::size_t k = 0; k < spec.segments.size(); ++k) {
      const Range seg = spec.segments[k];
      const std::size_t n = spec.segment_size(k);
      for (std::size_t j = 0; j < n; ++j, ++i) {
        // u < 1 keeps the draw inside [low, high); clamp guards the rounding
        // of low + u * (high - low) for extreme ranges.
        const double v = seg.min + unit_uniform(rng) * (seg.max - seg.min);
        out[i].values[a] = std::clamp(v, seg.min, seg.max);
      }
    }
  }
  return out;
}

std::vector<Range> parse_segments(std::string_view text) {
  std::vector<Range> segments;
  for (auto cell : split_commas(text)) {
    const auto colon = cell.find(':');
    Range r;
    if (colon == std::string_view::npos || !parse_real(trim(cell.substr(0, colon)), r.min) ||
        !parse_real(trim(cell.substr(colon + 1)), r.max)) {
      throw ConfigError("bad segment '" + std::string(cell) + "' (expected low:high)");
    }
    if (!(r.min < r.max)) throw ConfigError("segment low must be below high");
    segments.push_back(r);
  }
  return segments;
}

std::string format_segments(const std::vector<Range>& segments) {
  std::ostringstream os;
  os << std::setprecision(17);
  for (std::size_t k = 0; k < segments.size(); ++k) {
    if (k) os << ',';
    os << segments[k].min << ':' << segments[k].max;
  }
  return os.str();
}

void write_synthetic_csv(std::ostream& out, const SyntheticSpec& spec,
                         const std::vector<Sample>& samples) {
  out << "# seed=" << spec.seed << " segments=" << format_segments(spec.segments)
      << " size=" << samples.size() << " generator=" << kGeneratorName << '\n';
  char buf[64];
  for (const auto& s : samples) {
    for (std::size_t a = 0; a < s.values.size(); ++a) {
      if (a) out << ',';
      auto [end, ec] = std::to_chars(buf, buf + sizeof buf, s.values[a]);
      out.write(buf, end - buf);
    }
    out << '\n';
  }
  if (!out) throw IoError("failed writing synthetic CSV");
}

std::vector<Sample> read_csv(std::istream& in, const CsvIngestSpec& spec) {
  std::vector<Sample> samples;
  std::vector<std::size_t> indices;
  std::optional<std::size_t> width;
  bool header_pending = spec.has_header;
  std::string line;
  std::size_t line_no = 0;

  auto resolve_indices = [&](const std::vector<std::string_view>* header) {
    if (spec.keep_columns.empty()) {
      indices.resize(*width);
      for (std::size_t c = 0; c < *width; ++c) indices[c] = c;
      return;
    }
    for (const auto& ref : spec.keep_columns) {
      if (const auto* idx = std::get_if<std::size_t>(&ref)) {
        if (*idx >= *width) {
          throw DataError("column index " + std::to_string(*idx) + " out of range (" +
                              std::to_string(*width) + " columns)",
                          line_no, *idx + 1);
        }
        indices.push_back(*idx);
        continue;
      }
      const auto& name = std::get<std::string>(ref);
      if (!header) throw DataError("column '" + name + "' named but file has no header", line_no);
      const auto it = std::find(header->begin(), header->end(), name);
      if (it == header->end()) throw DataError("no column named '" + name + "'", line_no);
      indices.push_back(static_cast<std::size_t>(it - header->begin()));
    }
  };

  while (std::getline(in, line)) {
    ++line_no;
    const auto view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    const auto cells = split_commas(view);

    if (!width) {
      width = cells.size();
      if (header_pending) {
        header_pending = false;
        resolve_indices(&cells);
        continue;
      }
      resolve_indices(nullptr);
    } else if (cells.size() != *width) {
      throw DataError("line " + std::to_string(line_no) + " has " + std::to_string(cells.size()) +
                          " columns, expected " + std::to_string(*width),
                      line_no);
    }

    Sample s;
    s.ordinal = samples.size();
    s.values.resize(indices.size());
    for (std::size_t k = 0; k < indices.size(); ++k) {
      const auto c = indices[k];
      if (!parse_real(cells[c], s.values[k])) {
        throw DataError("line " + std::to_string(line_no) + " column " + std::to_string(c + 1) +
                            ": cannot parse '" + std::string(cells[c]) + "' as a finite real",
                        line_no, c + 1);
      }
    }
    samples.push_back(std::move(s));
  }
  if (in.bad()) throw IoError("read error");
  return samples;
}

std::vector<Sample> load_csv(const CsvIngestSpec& spec) {
  std::ifstream in(spec.path);
  if (!in) throw IoError("cannot open '" + spec.path.string() + "'");
  return read_csv(in, spec);
}

std::vector<ColumnRef> elec2_numeric_columns() {
  return {std::string("nswprice"), std::string("nswdemand"), std::string("vicprice"),
          std::string("vicdemand"), std::string("transfer")};
}

std::vector<Range> global_ranges(std::span<const Sample> samples) {
  if (samples.empty()) throw UsageError("global_ranges: empty stream");
  std::vector<Range> r;
  for (double v : samples.front().values) r.push_back({v, v});
  for (const auto& s : samples) {
    for (std::size_t a = 0; a < r.size(); ++a) {
      r[a].min = std::min(r[a].min, s.values.at(a));
      r[a].max = std::max(r[a].max, s.values.at(a));
    }
  }
  return r;
}

}  // namespace adanorm
