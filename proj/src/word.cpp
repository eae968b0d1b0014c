#include "rauzy/word.hpp"

#include <algorithm>
#include <unordered_set>

namespace rauzy {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnknownLetter: return "UnknownLetter";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::NotProlongable: return "NotProlongable";
    case ErrorKind::WordFinite: return "WordFinite";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NotEndomorphism: return "NotEndomorphism";
    case ErrorKind::NoValidOrder: return "NoValidOrder";
    case ErrorKind::BispecialOrderConflict: return "BispecialOrderConflict";
    case ErrorKind::NotScheme: return "NotScheme";
    case ErrorKind::AmbiguousNumbering: return "AmbiguousNumbering";
    case ErrorKind::InvalidPath: return "InvalidPath";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::NoSupportEdge: return "NoSupportEdge";
    case ErrorKind::DegenerateResult: return "DegenerateResult";
    case ErrorKind::InconsistentInput: return "InconsistentInput";
    case ErrorKind::NotFoundWithinBudget: return "NotFoundWithinBudget";
    case ErrorKind::PeriodMismatch: return "PeriodMismatch";
    case ErrorKind::SeedErasable: return "SeedErasable";
    case ErrorKind::UnboundedInterior: return "UnboundedInterior";
    case ErrorKind::NoPrimitiveComponent: return "NoPrimitiveComponent";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

std::string utf8_encode(char32_t c) {
  std::string out;
  if (c < 0x80) {
    out += static_cast<char>(c);
  } else if (c < 0x800) {
    out += static_cast<char>(0xC0 | (c >> 6));
    out += static_cast<char>(0x80 | (c & 0x3F));
  } else if (c < 0x10000) {
    out += static_cast<char>(0xE0 | (c >> 12));
    out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (c & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (c >> 18));
    out += static_cast<char>(0x80 | ((c >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (c & 0x3F));
  }
  return out;
}

std::u32string utf8_decode(std::string_view text) {
  std::u32string out;
  std::size_t i = 0;
  while (i < text.size()) {
    auto lead = static_cast<unsigned char>(text[i]);
    std::size_t extra = 0;
    char32_t c = 0;
    if (lead < 0x80) {
      c = lead;
    } else if ((lead >> 5) == 0x6) {
      c = lead & 0x1F;
      extra = 1;
    } else if ((lead >> 4) == 0xE) {
      c = lead & 0x0F;
      extra = 2;
    } else if ((lead >> 3) == 0x1E) {
      c = lead & 0x07;
      extra = 3;
    } else {
      throw Error(ErrorKind::InvalidSpec, "malformed UTF-8");
    }
    for (std::size_t k = 1; k <= extra; ++k) {
      if (i + k >= text.size()) throw Error(ErrorKind::InvalidSpec, "truncated UTF-8");
      auto cont = static_cast<unsigned char>(text[i + k]);
      if ((cont >> 6) != 0x2) throw Error(ErrorKind::InvalidSpec, "malformed UTF-8");
      c = (c << 6) | (cont & 0x3F);
    }
    out += c;
    i += extra + 1;
  }
  return out;
}

std::vector<char32_t> generated_symbols(std::size_t count) {
  std::vector<char32_t> out;
  out.reserve(count);
  auto push_range = [&](char32_t lo, char32_t hi) {
    for (char32_t c = lo; c <= hi && out.size() < count; ++c) out.push_back(c);
  };
  push_range(U'a', U'z');
  push_range(U'A', U'Z');
  push_range(U'0', U'9');
  push_range(U'α', U'ω');  // Greek lowercase
  push_range(U'а', U'я');  // Cyrillic lowercase
  push_range(U'一', U'鿿');
  return out;
}

std::size_t count_occurrences(std::string_view needle, std::string_view haystack) {
  if (needle.empty()) return haystack.size() + 1;
  std::size_t count = 0;
  for (auto pos = haystack.find(needle); pos != std::string_view::npos;
       pos = haystack.find(needle, pos + 1)) {
    ++count;
  }
  return count;
}

Alphabet::Alphabet(std::vector<char32_t> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw Error(ErrorKind::InvalidSpec, "alphabet is empty");
  if (symbols_.size() > kMaxAlphabetSize) {
    throw Error(ErrorKind::InvalidSpec, "alphabet has more than 256 letters");
  }
  std::unordered_set<char32_t> seen;
  for (char32_t c : symbols_) {
    if (!seen.insert(c).second) {
      throw Error(ErrorKind::InvalidSpec, "duplicate letter '" + utf8_encode(c) + "'");
    }
  }
}

Alphabet Alphabet::from_utf8(std::span<const std::string> symbols) {
  std::vector<char32_t> decoded;
  decoded.reserve(symbols.size());
  for (const auto& s : symbols) {
    auto scalars = utf8_decode(s);
    if (scalars.size() != 1) {
      throw Error(ErrorKind::InvalidSpec, "letter '" + s + "' is not a single scalar value");
    }
    decoded.push_back(scalars.front());
  }
  return Alphabet(std::move(decoded));
}

std::optional<std::size_t> Alphabet::find(char32_t symbol) const {
  auto it = std::find(symbols_.begin(), symbols_.end(), symbol);
  if (it == symbols_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - symbols_.begin());
}

std::size_t Alphabet::index(char32_t symbol) const {
  if (auto i = find(symbol)) return *i;
  throw Error(ErrorKind::UnknownLetter, "letter '" + utf8_encode(symbol) + "' is not in the alphabet");
}

Word Alphabet::decode(std::string_view utf8) const {
  Word out;
  for (char32_t c : utf8_decode(utf8)) out += letter_char(index(c));
  return out;
}

std::string Alphabet::encode(std::string_view word) const {
  std::string out;
  out.reserve(word.size());
  for (char c : word) out += encode_letter(index_of(c));
  return out;
}

std::string Alphabet::encode_letter(std::size_t index) const {
  if (index >= symbols_.size()) {
    throw Error(ErrorKind::UnknownLetter, "letter index " + std::to_string(index) + " out of range");
  }
  return utf8_encode(symbols_[index]);
}

Morphism::Morphism(Alphabet source, Alphabet target, std::vector<Word> rules)
    : source_(std::move(source)), target_(std::move(target)), rules_(std::move(rules)) {
  if (rules_.size() != source_.size()) {
    throw Error(ErrorKind::InvalidSpec, "every source letter needs exactly one rule");
  }
  for (const auto& r : rules_) {
    for (char c : r) {
      if (index_of(c) >= target_.size()) {
        throw Error(ErrorKind::UnknownLetter, "rule uses a letter outside the target alphabet");
      }
    }
    if (r.empty()) erasing_ = true;
  }
}

Morphism Morphism::identity(const Alphabet& alphabet) {
  std::vector<Word> rules;
  rules.reserve(alphabet.size());
  for (std::size_t i = 0; i < alphabet.size(); ++i) rules.emplace_back(1, letter_char(i));
  return Morphism(alphabet, alphabet, std::move(rules));
}

Word Morphism::apply(std::string_view word) const {
  std::size_t total = 0;
  for (char c : word) {
    auto i = index_of(c);
    if (i >= rules_.size()) {
      throw Error(ErrorKind::UnknownLetter, "word uses a letter outside the morphism's source");
    }
    total += rules_[i].size();
  }
  Word out;
  out.reserve(total);
  for (char c : word) out += rules_[index_of(c)];
  return out;
}

Morphism Morphism::after(const Morphism& inner) const {
  if (!(inner.target() == source_)) {
    throw Error(ErrorKind::InvalidSpec, "composition of incompatible morphisms");
  }
  std::vector<Word> rules;
  rules.reserve(inner.rules().size());
  for (const auto& r : inner.rules()) rules.push_back(apply(r));
  return Morphism(inner.source(), target_, std::move(rules));
}

Morphism Morphism::power(std::size_t exponent) const {
  if (!is_endomorphism()) throw Error(ErrorKind::NotEndomorphism, "power of a non-endomorphism");
  Morphism result = identity(source_);
  for (std::size_t i = 0; i < exponent; ++i) result = after(result);
  return result;
}

}  // namespace rauzy
