#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qmf {

// Invalid input: malformed documents, rank mismatches, words outside the
// commutator subgroup, broken invariants. CLI maps this to exit code 2.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A configured cap (word length, enumeration size) was exceeded.
// CLI maps this to exit code 3.
struct ResourceLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : ValidationError {
  ParseError(const std::string& msg, std::size_t offset)
      : ValidationError(msg + " (byte " + std::to_string(offset) + ")"),
        byte_offset(offset) {}
  std::size_t byte_offset;
};

}  // namespace qmf
