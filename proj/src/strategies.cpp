#include "adanorm/strategies.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>
#include <utility>

#include "adanorm/errors.hpp"

namespace adanorm {

namespace {

void normalize_into(std::span<const double> values, Range reference, std::span<double> out) {
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = minmax_normalize(values[i], reference);
}

StrategyConfig config_for(Method method, double threshold,
                          std::optional<std::vector<Range>> known = std::nullopt) {
  StrategyConfig c;
  c.method = method;
  c.threshold = threshold;
  c.known_range = std::move(known);
  return c;
}

WindowResult process_with(const StrategyConfig& config, StrategyState& state,
                          const Window& window) {
  const std::size_t arity = window.arity();
  if (window.samples.empty()) {
    throw UsageError("window " + std::to_string(window.id) + " is empty");
  }
  if (state.attributes.empty()) state.attributes.resize(arity);
  if (state.attributes.size() != arity) {
    throw UsageError("window " + std::to_string(window.id) + " has arity " +
                     std::to_string(arity) + ", strategy expects " +
                     std::to_string(state.attributes.size()));
  }

  const std::size_t n = window.samples.size();
  WindowResult result;
  result.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (window.samples[i].values.size() != arity) {
      throw UsageError("inconsistent arity in window " + std::to_string(window.id));
    }
    result.samples[i].ordinal = window.samples[i].ordinal;
    result.samples[i].values.resize(arity);
  }

  std::vector<double> column(n);
  std::vector<double> out(n);
  for (std::size_t a = 0; a < arity; ++a) {
    for (std::size_t i = 0; i < n; ++i) column[i] = window.samples[i].values[a];
    auto event = normalize_attribute(config, a, state.attributes[a], window.id, column, out);
    for (std::size_t i = 0; i < n; ++i) result.samples[i].values[a] = out[i];
    if (event) result.events.push_back(*event);
  }
  return result;
}

}  // namespace

std::string_view method_name(Method m) noexcept {
  switch (m) {
    case Method::KnownRange: return "known-range";
    case Method::FirstWindowFixed: return "first-window";
    case Method::PerWindow: return "per-window";
    case Method::SignificantOnly: return "significant-only";
    case Method::Adaptive: return "adaptive";
  }
  return "unknown";
}

Method parse_method(std::string_view text) {
  std::string t(text);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "1" || t == "known-range") return Method::KnownRange;
  if (t == "2" || t == "first-window") return Method::FirstWindowFixed;
  if (t == "3" || t == "per-window") return Method::PerWindow;
  if (t == "4" || t == "significant-only") return Method::SignificantOnly;
  if (t == "5" || t == "adaptive") return Method::Adaptive;
  throw ConfigError("unknown method '" + std::string(text) + "' (expected 1-5)");
}

std::string_view kind_name(AdaptationKind k) noexcept {
  switch (k) {
    case AdaptationKind::Replace: return "replace";
    case AdaptationKind::Widen: return "widen";
    case AdaptationKind::None: return "none";
  }
  return "unknown";
}

void StrategyConfig::validate(std::size_t arity) const {
  const int m = static_cast<int>(method);
  if (m < 1 || m > 5) throw ConfigError("method must be in 1..5");
  if (!(threshold >= 0.0)) throw ConfigError("threshold must be non-negative");
  if (method == Method::KnownRange) {
    if (!known_range || known_range->empty()) {
      throw ConfigError("known-range method requires a known min/max per attribute");
    }
    if (arity != 0 && known_range->size() != arity) {
      throw ConfigError("known range has " + std::to_string(known_range->size()) +
                        " attributes, stream has " + std::to_string(arity));
    }
    for (const auto& r : *known_range) {
      if (!std::isfinite(r.min) || !std::isfinite(r.max) || !(r.min < r.max)) {
        throw ConfigError("known range requires finite min < max");
      }
    }
  }
}

std::optional<AdaptationEvent> normalize_attribute(const StrategyConfig& config,
                                                   std::size_t attribute,
                                                   AttributeState& state,
                                                   std::uint64_t window_id,
                                                   std::span<const double> values,
                                                   std::span<double> out) {
  if (values.size() != out.size()) throw UsageError("output span size mismatch");

  const bool first = state.windows_seen == 0;
  ++state.windows_seen;

  if (config.method == Method::KnownRange) {
    if (!config.known_range || attribute >= config.known_range->size()) {
      throw ConfigError("known-range method requires a known min/max per attribute");
    }
    state.reference = (*config.known_range)[attribute];
    normalize_into(values, *state.reference, out);
    return std::nullopt;
  }

  const AttributeStats cur = compute_stats(values);
  const Range own{cur.min, cur.max};
  std::optional<AdaptationEvent> event;

  if (first) {
    state.reference = own;
  } else {
    switch (config.method) {
      case Method::FirstWindowFixed:
        break;
      case Method::PerWindow:
        state.reference = own;
        break;
      case Method::SignificantOnly:
      case Method::Adaptive: {
        const Range old = *state.reference;
        const double change = percent_mean_change(cur.mean, *state.prev_mean);
        AdaptationKind kind = AdaptationKind::None;
        if (change >= config.threshold) {
          state.reference = own;
          kind = AdaptationKind::Replace;
        } else if (config.method == Method::Adaptive) {
          const Range widened{std::min(cur.min, old.min), std::max(cur.max, old.max)};
          if (!(widened == old)) kind = AdaptationKind::Widen;
          state.reference = widened;
        }
        event = AdaptationEvent{window_id, attribute, kind, old, *state.reference, change};
        break;
      }
      case Method::KnownRange:
        break;
    }
  }
  state.prev_mean = cur.mean;
  normalize_into(values, *state.reference, out);
  return event;
}

WindowResult process_known_range(StrategyState& state, const Window& window,
                                 std::span<const Range> known_range) {
  auto config = config_for(Method::KnownRange, 0.0,
                           std::vector<Range>(known_range.begin(), known_range.end()));
  config.validate(window.arity());
  return process_with(config, state, window);
}

WindowResult process_first_window_fixed(StrategyState& state, const Window& window) {
  return process_with(config_for(Method::FirstWindowFixed, 0.0), state, window);
}

WindowResult process_per_window(StrategyState& state, const Window& window) {
  return process_with(config_for(Method::PerWindow, 0.0), state, window);
}

WindowResult process_significant_only(StrategyState& state, const Window& window,
                                      double threshold) {
  auto config = config_for(Method::SignificantOnly, threshold);
  config.validate();
  return process_with(config, state, window);
}

WindowResult process_adaptive(StrategyState& state, const Window& window, double threshold) {
  auto config = config_for(Method::Adaptive, threshold);
  config.validate();
  return process_with(config, state, window);
}

Strategy::Strategy(StrategyConfig config, std::size_t arity) : config_(std::move(config)) {
  if (arity == 0) throw ConfigError("strategy arity must be positive");
  config_.validate(arity);
  state_.attributes.resize(arity);
}

WindowResult Strategy::process(const Window& window) {
  return process_with(config_, state_, window);
}

std::optional<AdaptationEvent> Strategy::process_attribute(std::size_t attribute,
                                                           std::uint64_t window_id,
                                                           std::span<const double> values,
                                                           std::span<double> out) {
  if (attribute >= state_.attributes.size()) throw UsageError("attribute index out of range");
  return normalize_attribute(config_, attribute, state_.attributes[attribute], window_id, values,
                             out);
}

RefParams Strategy::reference() const {
  RefParams ref;
  for (const auto& a : state_.attributes) {
    if (!a.reference) return {};
    ref.push_back(*a.reference);
  }
  return ref;
}

Strategy make_strategy(const StrategyConfig& config, std::size_t arity) {
  return Strategy(config, arity);
}

}  // namespace adanorm
