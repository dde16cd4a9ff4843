#pragma once

#include <cstdint>
#include <string>

#include "rotsys/errors.hpp"

namespace rotsys {

// Limits for the exhaustive engines. Defaults are desk scale: permutation
// sweeps up to n = 9 and at most 9! enumerated rotation systems / cyclic
// orders. `unlimited` lifts every check (CLI --unsafe-budget).
struct Budget {
  int oracle_n_limit = 9;
  std::uint64_t enumeration_limit = 362880;  // 9!
  bool unlimited = false;

  void check_oracle_n(int n) const {
    if (unlimited) return;
    if (n > oracle_n_limit)
      throw budget_error("exhaustive sweep refused: n = " + std::to_string(n) +
                         " exceeds the oracle limit " + std::to_string(oracle_n_limit));
  }

  // `total` is checked as a double-free comparison on 64-bit counts; callers
  // with bigger counts must pre-check via check_enumeration_big.
  void check_enumeration(std::uint64_t total, const std::string& what) const {
    if (unlimited) return;
    if (total > enumeration_limit)
      throw budget_error(what + " refused: " + std::to_string(total) + " items exceed the budget " +
                         std::to_string(enumeration_limit));
  }
};

}  // namespace rotsys
