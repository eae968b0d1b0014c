#pragma once

// Polynomial hashing modulo the Mersenne prime 2^61 - 1 (internal helper).

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "rauzy/word.hpp"

namespace rauzy::hashing {

inline constexpr std::uint64_t kMod = (std::uint64_t{1} << 61) - 1;
inline constexpr std::uint64_t kBase = 1'000'003;

__extension__ using uint128 = unsigned __int128;

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) {
  const uint128 product = static_cast<uint128>(a) * b;
  std::uint64_t r = static_cast<std::uint64_t>(product & kMod) + static_cast<std::uint64_t>(product >> 61);
  if (r >= kMod) r -= kMod;
  return r;
}

inline std::uint64_t add_mod(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = a + b;
  if (r >= kMod) r -= kMod;
  return r;
}

inline std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kMod - b; }

inline std::uint64_t symbol(char c) { return index_of(c) + 1; }

inline std::uint64_t pow_base(std::size_t e) {
  std::uint64_t result = 1;
  std::uint64_t b = kBase;
  for (; e != 0; e >>= 1) {
    if (e & 1) result = mul_mod(result, b);
    b = mul_mod(b, b);
  }
  return result;
}

inline std::uint64_t hash_of(std::string_view s) {
  std::uint64_t h = 0;
  for (char c : s) h = add_mod(mul_mod(h, kBase), symbol(c));
  return h;
}

// hash(a b) from hash(a), hash(b) and |b|.
inline std::uint64_t concat(std::uint64_t ha, std::uint64_t hb, std::size_t len_b) {
  return add_mod(mul_mod(ha, pow_base(len_b)), hb);
}

// Calls visit(position, hash) for the length-n windows starting in [first, last];
// stops early when visit returns false.
template <typename Visit>
void for_each_window(std::string_view text, std::size_t n, std::size_t first, std::size_t last, Visit visit) {
  if (n == 0 || text.size() < n || first > last) return;
  const std::uint64_t top = pow_base(n - 1);
  std::uint64_t h = 0;
  for (std::size_t i = first; i < first + n; ++i) h = add_mod(mul_mod(h, kBase), symbol(text[i]));
  for (std::size_t pos = first;; ++pos) {
    if (!visit(pos, h)) return;
    if (pos == last) return;
    h = sub_mod(h, mul_mod(top, symbol(text[pos])));
    h = add_mod(mul_mod(h, kBase), symbol(text[pos + n]));
  }
}

// Prefix hashes of a text that grows and shrinks at its end.
class PrefixHashes {
 public:
  PrefixHashes() : prefix_{0}, powers_{1} {}

  std::size_t size() const { return prefix_.size() - 1; }
  void append(std::string_view s) {
    for (char c : s) {
      prefix_.push_back(add_mod(mul_mod(prefix_.back(), kBase), symbol(c)));
      if (powers_.size() < prefix_.size()) powers_.push_back(mul_mod(powers_.back(), kBase));
    }
  }
  void truncate(std::size_t len) { prefix_.resize(len + 1); }
  // Hash of text[pos, pos + len).
  std::uint64_t window(std::size_t pos, std::size_t len) const {
    return sub_mod(prefix_[pos + len], mul_mod(prefix_[pos], powers_[len]));
  }

 private:
  std::vector<std::uint64_t> prefix_;
  std::vector<std::uint64_t> powers_;
};

}  // namespace rauzy::hashing
