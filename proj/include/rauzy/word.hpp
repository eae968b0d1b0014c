#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rauzy/error.hpp"

namespace rauzy {

// Words are stored as byte strings of letter indices into an Alphabet, so
// the standard string search machinery applies directly. An alphabet holds
// at most 256 letters.
using Word = std::string;
using Letter = unsigned char;

inline constexpr std::size_t kMaxAlphabetSize = 256;

inline std::size_t index_of(char c) { return static_cast<Letter>(c); }
inline char letter_char(std::size_t index) { return static_cast<char>(static_cast<Letter>(index)); }

// Ordered finite set of Unicode scalar values. The order fixed at
// construction is the order used for every sorted output.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<char32_t> symbols);

  // Builds an alphabet from UTF-8 encoded single-scalar strings.
  static Alphabet from_utf8(std::span<const std::string> symbols);

  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  char32_t symbol(std::size_t index) const { return symbols_.at(index); }
  const std::vector<char32_t>& symbols() const { return symbols_; }

  std::optional<std::size_t> find(char32_t symbol) const;
  std::size_t index(char32_t symbol) const;  // throws UnknownLetter

  Word decode(std::string_view utf8) const;  // throws UnknownLetter
  std::string encode(std::string_view word) const;
  std::string encode_letter(std::size_t index) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<char32_t> symbols_;
};

// A homomorphism of free monoids given by its image on letters.
class Morphism {
 public:
  Morphism() = default;
  Morphism(Alphabet source, Alphabet target, std::vector<Word> rules);

  static Morphism identity(const Alphabet& alphabet);

  const Alphabet& source() const { return source_; }
  const Alphabet& target() const { return target_; }
  const std::vector<Word>& rules() const { return rules_; }
  const Word& rule(std::size_t letter) const { return rules_.at(letter); }

  bool erasing() const { return erasing_; }
  bool is_endomorphism() const { return source_ == target_; }

  Word apply(std::string_view word) const;

  // Composition (*this) after (inner): x -> this(inner(x)).
  Morphism after(const Morphism& inner) const;
  Morphism power(std::size_t exponent) const;

  friend bool operator==(const Morphism&, const Morphism&) = default;

 private:
  Alphabet source_;
  Alphabet target_;
  std::vector<Word> rules_;
  bool erasing_ = false;
};

std::string utf8_encode(char32_t symbol);
std::u32string utf8_decode(std::string_view text);

// Deterministic supply of printable single-scalar symbols for generated
// alphabets (a..z, A..Z, 0..9, then Greek and beyond).
std::vector<char32_t> generated_symbols(std::size_t count);

// Number of (possibly overlapping) occurrences of needle in haystack.
std::size_t count_occurrences(std::string_view needle, std::string_view haystack);

}  // namespace rauzy
