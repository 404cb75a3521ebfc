#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "adanorm/core.hpp"

namespace adanorm {

/// Groups an ordered sample stream into fixed-size tumbling windows.
///
/// Every push that completes a window returns it with the next id (1, 2, ...)
/// and starts an empty buffer; flush() emits whatever is left at end of
/// stream as a shorter final window. Single writer.
class WindowAssembler {
 public:
  explicit WindowAssembler(std::size_t size);

  /// Throws UsageError if the ordinal does not increase or the arity differs
  /// from earlier samples.
  std::optional<Window> push(Sample sample);

  std::optional<Window> flush();

  std::size_t size() const noexcept { return size_; }
  std::size_t buffered() const noexcept { return buffer_.size(); }
  std::uint64_t next_id() const noexcept { return next_id_; }

 private:
  Window take();

  std::size_t size_;
  std::vector<Sample> buffer_;
  std::uint64_t next_id_ = 1;
  std::optional<std::uint64_t> last_ordinal_;
  std::optional<std::size_t> arity_;
};

}  // namespace adanorm
