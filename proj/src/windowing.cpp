#include "adanorm/windowing.hpp"

#include <string>
#include <utility>

#include "adanorm/errors.hpp"

namespace adanorm {

WindowAssembler::WindowAssembler(std::size_t size) : size_(size) {
  if (size == 0) throw ConfigError("window size must be positive");
  buffer_.reserve(size);
}

std::optional<Window> WindowAssembler::push(Sample sample) {
  if (last_ordinal_ && sample.ordinal <= *last_ordinal_) {
    throw UsageError("out-of-order sample: ordinal " + std::to_string(sample.ordinal) +
                     " after " + std::to_string(*last_ordinal_));
  }
  if (!arity_) {
    arity_ = sample.values.size();
  } else if (sample.values.size() != *arity_) {
    throw UsageError("sample " + std::to_string(sample.ordinal) + " has " +
                     std::to_string(sample.values.size()) + " values, expected " +
                     std::to_string(*arity_));
  }
  last_ordinal_ = sample.ordinal;
  buffer_.push_back(std::move(sample));
  if (buffer_.size() < size_) return std::nullopt;
  return take();
}

std::optional<Window> WindowAssembler::flush() {
  if (buffer_.empty()) return std::nullopt;
  return take();
}

Window WindowAssembler::take() {
  Window w{next_id_++, std::move(buffer_)};
  buffer_ = {};
  buffer_.reserve(size_);
  return w;
}

}  // namespace adanorm
