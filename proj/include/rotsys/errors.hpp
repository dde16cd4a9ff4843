#pragma once

#include <stdexcept>
#include <string>

namespace rotsys {

// Base class for everything this library throws.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input file or text. line/column are 1-based; 0 means unknown.
struct parse_error : error {
  int line = 0;
  int column = 0;
  parse_error(int line_, int column_, const std::string& what_)
      : error("parse error at " + std::to_string(line_) + ":" + std::to_string(column_) + ": " + what_),
        line(line_),
        column(column_) {}
  explicit parse_error(const std::string& what_) : error("parse error: " + what_) {}
};

// An enumeration or exhaustive sweep would exceed the configured budget.
struct budget_error : error {
  using error::error;
};

// A mathematical invariant failed; indicates a bug or corrupted input.
struct invariant_error : error {
  using error::error;
};

}  // namespace rotsys
