#pragma once

// Fixture loading and reference generators that do not go through the library.

#include <bit>
#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <unordered_set>

#include "rauzy/spec_io.hpp"

namespace fixtures {

inline std::string data_path(const std::string& name) { return std::string(RAUZY_TEST_DATA) + "/" + name + ".json"; }

inline rauzy::MorphicWordSpec load(const std::string& name) { return rauzy::load_spec(data_path(name)); }

// s(n+1) = s(n) s(n-1), s(0) = a, s(1) = ab.
inline std::string fibonacci_prefix(std::size_t n) {
  std::string older = "a", old = "ab";
  while (old.size() < n) {
    std::string next = old + older;
    older = std::move(old);
    old = std::move(next);
  }
  return old.substr(0, n);
}

// Letter i is the parity of the binary digit sum of i.
inline std::string thue_morse_prefix(std::size_t n) {
  std::string out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::popcount(i) % 2 == 0 ? 'a' : 'b');
  return out;
}

// t(n) = t(n-1) t(n-2) t(n-3), starting a, ab, abac.
inline std::string tribonacci_prefix(std::size_t n) {
  std::string t0 = "a", t1 = "ab", t2 = "abac";
  while (t2.size() < n) {
    std::string next = t2 + t1 + t0;
    t0 = std::move(t1);
    t1 = std::move(t2);
    t2 = std::move(next);
  }
  return t2.substr(0, n);
}

inline std::size_t distinct_windows(std::string_view text, std::size_t n) {
  std::unordered_set<std::string_view> seen;
  for (std::size_t i = 0; i + n <= text.size(); ++i) seen.insert(text.substr(i, n));
  return seen.size();
}

// Largest real root of a monic polynomial with one sign change on [lo, hi].
inline double bisect_root(const std::function<double(double)>& p, double lo, double hi) {
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (p(lo) < 0) == (p(mid) < 0) ? lo = mid : hi = mid;
  }
  return 0.5 * (lo + hi);
}

inline double golden_ratio() {
  return bisect_root([](double x) { return x * x - x - 1; }, 1, 2);
}

inline double tribonacci_constant() {
  return bisect_root([](double x) { return x * x * x - x * x - x - 1; }, 1, 2);
}

}  // namespace fixtures
