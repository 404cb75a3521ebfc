#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "adanorm/core.hpp"

namespace adanorm {

/// The five window-at-a-time normalization methods, numbered as in the
/// comparison tables.
enum class Method : int {
  KnownRange = 1,        ///< fixed oracle range for the whole stream
  FirstWindowFixed = 2,  ///< first window's range, frozen
  PerWindow = 3,         ///< every window's own range
  SignificantOnly = 4,   ///< replace on significant mean change, else keep
  Adaptive = 5,          ///< replace on significant change, else widen
};

inline constexpr double kDefaultThreshold = 0.5;

std::string_view method_name(Method m) noexcept;
/// Accepts 1..5 or a method name ("adaptive", "per-window", ...).
Method parse_method(std::string_view text);

struct StrategyConfig {
  Method method = Method::Adaptive;
  /// Minimum relative change in window mean that counts as significant (delta).
  double threshold = kDefaultThreshold;
  /// Oracle range per attribute; required by Method::KnownRange.
  std::optional<std::vector<Range>> known_range;

  /// Throws ConfigError. `arity` of 0 skips the known-range arity check.
  void validate(std::size_t arity = 0) const;
};

enum class AdaptationKind { Replace, Widen, None };

std::string_view kind_name(AdaptationKind k) noexcept;

/// Outcome of the significance test for one attribute of one window
/// (windows after the first, methods 4 and 5 only).
struct AdaptationEvent {
  std::uint64_t window_id = 0;
  std::size_t attribute = 0;
  AdaptationKind kind = AdaptationKind::None;
  Range old_params;
  Range new_params;
  double observed_change = 0.0;

  friend bool operator==(const AdaptationEvent&, const AdaptationEvent&) = default;
};

/// Adaptation state of one attribute.
struct AttributeState {
  std::optional<Range> reference;
  std::optional<double> prev_mean;
  std::uint64_t windows_seen = 0;
};

struct StrategyState {
  std::vector<AttributeState> attributes;
};

/// Normalizes one attribute's slice of one window in place of `out`
/// (same length as `values`) and advances `state`. This is the single
/// arithmetic path every method and every pipeline mode goes through.
std::optional<AdaptationEvent> normalize_attribute(const StrategyConfig& config,
                                                   std::size_t attribute,
                                                   AttributeState& state,
                                                   std::uint64_t window_id,
                                                   std::span<const double> values,
                                                   std::span<double> out);

struct WindowResult {
  std::vector<NormalizedSample> samples;
  std::vector<AdaptationEvent> events;
};

// One entry point per method. Each grows `state` to the window's arity on
// first use and processes every attribute independently.
WindowResult process_known_range(StrategyState& state, const Window& window,
                                 std::span<const Range> known_range);
WindowResult process_first_window_fixed(StrategyState& state, const Window& window);
WindowResult process_per_window(StrategyState& state, const Window& window);
WindowResult process_significant_only(StrategyState& state, const Window& window,
                                      double threshold);
WindowResult process_adaptive(StrategyState& state, const Window& window, double threshold);

/// Stateful per-stream normalizer for a configured method. Windows must be
/// fed in id order. Attributes have disjoint state, so distinct attributes
/// may be driven from different threads via process_attribute().
class Strategy {
 public:
  Strategy(StrategyConfig config, std::size_t arity);

  WindowResult process(const Window& window);

  std::optional<AdaptationEvent> process_attribute(std::size_t attribute,
                                                   std::uint64_t window_id,
                                                   std::span<const double> values,
                                                   std::span<double> out);

  const StrategyConfig& config() const noexcept { return config_; }
  std::size_t arity() const noexcept { return state_.attributes.size(); }
  const StrategyState& state() const noexcept { return state_; }

  /// Current reference range per attribute; empty before the first window
  /// for methods 2-5.
  RefParams reference() const;

 private:
  StrategyConfig config_;
  StrategyState state_;
};

/// Validates `config` against `arity` and returns a fresh handle.
Strategy make_strategy(const StrategyConfig& config, std::size_t arity);

}  // namespace adanorm
