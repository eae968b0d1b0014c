#pragma once

#include <array>
#include <cstddef>
#include <string>

#include "rauzy/scheme.hpp"

namespace rauzy {

struct CheckOptions {
  // Properties 3, 4 and 7 range over symmetric paths with at most this many edges.
  std::size_t path_budget = 12;
  std::size_t max_paths = 50'000;
  // Property 6 covers every factor of this length; 0 picks min(64, scale).
  std::size_t factor_cap = 0;
};

struct PropertyResult {
  int property = 0;
  bool passed = false;
  bool sampled = false;
  std::string detail;
};

struct PropertyReport {
  std::array<PropertyResult, 7> results;

  bool all_passed() const;
  const PropertyResult& operator[](int property) const { return results.at(static_cast<std::size_t>(property - 1)); }
  std::string to_text() const;
};

// Checks the seven scheme properties against the word behind the oracle.
// Properties 1, 2, 5 are exact; 3, 4, 6, 7 are checked on a path sample.
PropertyReport check_scheme_properties(const Scheme& s, FactorOracle& oracle, const CheckOptions& options = {});

}  // namespace rauzy
