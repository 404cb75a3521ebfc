#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "adanorm/core.hpp"

namespace adanorm {

/// Piecewise-uniform drift stream: `total_size` points split into contiguous
/// equal segments (the last absorbs any remainder), segment k uniform on
/// [low_k, high_k].
struct SyntheticSpec {
  std::size_t total_size = 160000;
  std::vector<Range> segments = default_segments();
  std::uint64_t seed = 42;

  static std::vector<Range> default_segments() {
    return {{1.0, 5.0}, {1.0, 10.0}, {30.0, 50.0}, {30.0, 60.0}};
  }

  /// Union of all segment ranges ([1, 60] for the default segments).
  Range global_range() const;

  /// Throws ConfigError.
  void validate() const;

  /// Length of segment `k` after the equal split.
  std::size_t segment_size(std::size_t k) const;
};

/// Name of the generator recorded in file metadata.
inline constexpr std::string_view kGeneratorName = "mt19937_64+u53";

/// Uniform double in [0, 1) built from the top 53 bits of one mt19937_64
/// draw. Unlike std::uniform_real_distribution this sequence is identical
/// across standard libraries.
inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// One-attribute stream, ordinals 0..total_size-1.
std::vector<Sample> generate_synthetic(const SyntheticSpec& spec);

/// `arity` independent copies of the synthetic stream, attribute j seeded
/// with spec.seed + j (attribute 0 matches generate_synthetic).
std::vector<Sample> generate_synthetic(const SyntheticSpec& spec, std::size_t arity);

/// Parses "1:5,1:10,30:50" into ranges. Throws ConfigError.
std::vector<Range> parse_segments(std::string_view text);
std::string format_segments(const std::vector<Range>& segments);

/// Writes a one-column CSV preceded by a `# seed=<n> segments=<...>` comment.
void write_synthetic_csv(std::ostream& out, const SyntheticSpec& spec,
                         const std::vector<Sample>& samples);

/// Column selector: a 0-based index or a header name.
using ColumnRef = std::variant<std::size_t, std::string>;

struct CsvIngestSpec {
  std::filesystem::path path;
  /// Empty keeps every column.
  std::vector<ColumnRef> keep_columns;
  bool has_header = false;
};

/// Comma-separated reals, optional single header row, `#` comment lines and
/// blank lines skipped. Throws IoError if the file cannot be opened, DataError
/// (with 1-based file line and column) on unparseable cells or ragged rows.
std::vector<Sample> load_csv(const CsvIngestSpec& spec);
std::vector<Sample> read_csv(std::istream& in, const CsvIngestSpec& spec);

/// Column names of Elec2 kept by default: the five numeric attributes.
std::vector<ColumnRef> elec2_numeric_columns();

/// Per-attribute min/max over a whole stream. Throws UsageError if empty.
std::vector<Range> global_ranges(std::span<const Sample> samples);

}  // namespace adanorm
