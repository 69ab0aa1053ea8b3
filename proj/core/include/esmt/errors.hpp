#pragma once

#include <stdexcept>
#include <string>

namespace esmt {

/// Size/cap refusals, kept distinct from malformed-input errors so callers
/// can map them to a dedicated exit code.
struct CapExceeded : std::runtime_error {
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace esmt
