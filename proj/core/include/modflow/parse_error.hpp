#pragma once

#include <stdexcept>
#include <string>

namespace modflow {

/// Word-literal parse failure carrying the byte offset where scanning stopped.
struct ParseError : std::invalid_argument {
  ParseError(std::size_t at, const std::string& what)
      : std::invalid_argument(what + " (byte " + std::to_string(at) + ")"), offset(at) {}
  std::size_t offset;
};

}  // namespace modflow
