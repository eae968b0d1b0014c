#include "rauzy/factor_oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <unordered_map>
#include <unordered_set>

#include "rolling_hash.hpp"

namespace rauzy {

FactorOracle::FactorOracle(const MorphicWordSpec& spec, OracleOptions options) : options_(options) {
  auto prolonged = make_prolongable(spec);
  spec_ = std::move(prolonged.spec);
  power_ = prolonged.power;
  raw_.assign(1, letter_char(spec_.seed));
  coded_ = spec_.code(raw_);
}

bool FactorOracle::grow_round() {
  if (frozen_) return false;
  const auto& phi = spec_.phi;
  const std::size_t budget = spec_.prefix_budget;
  Word next;
  next.reserve(std::min<std::size_t>(raw_.size() * 4 + 4, 64 * budget + 64));
  std::size_t coded_len = 0;
  bool truncated = false;
  for (char c : raw_) {
    for (char d : phi.rule(index_of(c))) {
      const std::size_t add = spec_.coding ? spec_.coding->rule(index_of(d)).size() : 1;
      if (coded_len + add > budget) {
        truncated = true;
        break;
      }
      coded_len += add;
      next.push_back(d);
    }
    if (truncated) break;
  }
  if (next.size() <= raw_.size()) {
    if (truncated) return false;
    throw Error(ErrorKind::WordFinite, "the fixed point is a finite word");
  }
  const std::size_t old_coded = coded_.size();
  previous_len_ = old_coded;
  coded_ += spec_.code(std::string_view(next).substr(raw_.size()));
  raw_ = std::move(next);
  if (coded_.size() == old_coded) {
    if (truncated) return false;
    if (++stalls_ > phi.source().size()) throw Error(ErrorKind::WordFinite, "the coding erases all growth");
  } else {
    stalls_ = 0;
  }
  return true;
}

void FactorOracle::ensure_prefix(std::size_t min_len) {
  while (coded_.size() < min_len) {
    if (!grow_round()) {
      throw Error(ErrorKind::BudgetExceeded, "prefix of length " + std::to_string(min_len) +
                                                 " exceeds the budget of " + std::to_string(spec_.prefix_budget));
    }
  }
}

namespace {

// Open addressing over window hashes; 0 marks an empty slot (hashes are shifted by one).
class WindowTable {
 public:
  explicit WindowTable(std::size_t expected) : table_(std::bit_ceil(std::max<std::size_t>(16, 4 * expected + 64))) {}

  bool contains(std::uint64_t h) const { return table_[slot(h + 1)] != 0; }
  // True when h was not present before.
  bool insert(std::uint64_t h) {
    const std::uint64_t key = h + 1;
    auto i = slot(key);
    if (table_[i] != 0) return false;
    table_[i] = key;
    if (++used_ * 2 > table_.size()) {
      std::vector<std::uint64_t> old(table_.size() * 2);
      old.swap(table_);
      for (auto k : old) {
        if (k != 0) table_[slot(k)] = k;
      }
    }
    return true;
  }

 private:
  std::size_t slot(std::uint64_t key) const {
    const std::size_t mask = table_.size() - 1;
    std::size_t i = static_cast<std::size_t>(key * 0x9E3779B97F4A7C15ull >> 7) & mask;
    while (table_[i] != 0 && table_[i] != key) i = (i + 1) & mask;
    return i;
  }

  std::vector<std::uint64_t> table_;
  std::size_t used_ = 0;
};

}  // namespace

bool FactorOracle::windows_unchanged(std::size_t n, std::size_t old_len) const {
  if (old_len < n) return false;
  WindowTable table(n);
  hashing::for_each_window(coded_, n, 0, old_len - n, [&](std::size_t, std::uint64_t h) {
    table.insert(h);
    return true;
  });
  bool unchanged = true;
  hashing::for_each_window(coded_, n, old_len - n + 1, coded_.size() - n, [&](std::size_t, std::uint64_t h) {
    unchanged = table.contains(h);
    return unchanged;
  });
  return unchanged;
}

std::size_t FactorOracle::stability_factor() {
  if (factor_ != 0) return factor_;
  factor_ = std::max<std::size_t>(options_.ratio_cap, 2);
  if (!options_.calibrate) return factor_;
  try {
    double ratio = 1.0;
    for (std::size_t m : {4, 8, 16, 32}) {
      const auto estimate = recurrence_exponent(*this, m);
      ratio = std::max(ratio, static_cast<double>(estimate.window) / static_cast<double>(m));
    }
    const auto scaled = static_cast<std::size_t>(std::ceil(options_.safety * ratio));
    factor_ = std::clamp<std::size_t>(scaled, 2, factor_);
  } catch (const Error&) {
    // Budget too small to calibrate: keep the cap.
  }
  return factor_;
}

void FactorOracle::ensure_stable(std::size_t n) {
  if (n <= stable_len_) return;
  if (frozen_) {
    throw Error(ErrorKind::BudgetExceeded, "oracle is frozen at length " + std::to_string(stable_len_));
  }
  const std::size_t factor = stability_factor();
  if (n <= stable_len_) return;  // calibration may have certified it already
  if (n > spec_.prefix_budget / factor) {
    throw Error(ErrorKind::BudgetExceeded, "factors of length " + std::to_string(n) +
                                               " cannot stabilize within the budget of " +
                                               std::to_string(spec_.prefix_budget));
  }
  ensure_prefix(factor * n);
  for (;;) {
    if (previous_len_ >= factor * n) {
      // Certify as long a length as the previous round allows, falling back to n.
      const std::size_t wide = previous_len_ / factor;
      if (wide > n && windows_unchanged(wide, previous_len_)) {
        stable_len_ = wide;
        certified_.emplace(wide, previous_len_);
        return;
      }
      if (windows_unchanged(n, previous_len_)) {
        stable_len_ = n;
        certified_.emplace(n, previous_len_);
        return;
      }
    }
    if (!grow_round()) {
      throw Error(ErrorKind::BudgetExceeded,
                  "factor set of length " + std::to_string(n) + " did not stabilize within the budget");
    }
  }
}

std::string_view FactorOracle::certified(std::size_t n) const {
  const auto it = certified_.lower_bound(n);
  const std::string_view text = coded_;
  return it == certified_.end() ? text : text.substr(0, it->second);
}

bool FactorOracle::find(std::string_view u) const {
  const std::string_view text = certified(u.size());
  if (u.size() < 64) return text.find(u) != std::string_view::npos;
  auto it = std::search(text.begin(), text.end(), std::boyer_moore_searcher(u.begin(), u.end()));
  return it != text.end();
}

bool FactorOracle::is_factor(std::string_view u) {
  if (u.empty()) return true;
  ensure_stable(u.size());
  return find(u);
}

bool FactorOracle::is_factor_frozen(std::string_view u) const {
  if (u.empty()) return true;
  if (u.size() > stable_len_) {
    throw Error(ErrorKind::BudgetExceeded, "query of length " + std::to_string(u.size()) +
                                               " exceeds the frozen stable length " + std::to_string(stable_len_));
  }
  return find(u);
}

const std::vector<Word>& FactorOracle::factors(std::size_t n) {
  if (auto it = factor_cache_.find(n); it != factor_cache_.end()) return it->second;
  std::vector<Word> out;
  if (n == 0) {
    out.emplace_back();
  } else {
    ensure_stable(n);
    // Windows are deduplicated by their 61-bit hash.
    const std::string_view text = certified(n);
    WindowTable table(n);
    std::unordered_set<std::string_view> seen;
    hashing::for_each_window(text, n, 0, text.size() - n, [&](std::size_t pos, std::uint64_t h) {
      if (table.insert(h)) seen.insert(text.substr(pos, n));
      return true;
    });
    out.reserve(seen.size());
    for (auto sv : seen) out.emplace_back(sv);
    std::sort(out.begin(), out.end());
  }
  return factor_cache_.emplace(n, std::move(out)).first->second;
}

void FactorOracle::freeze(std::size_t max_len) {
  ensure_stable(max_len);
  frozen_ = true;
}

RecurrenceEstimate recurrence_exponent(FactorOracle& oracle, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidSpec, "recurrence exponent needs n >= 1");
  const auto& all = oracle.factors(n);
  const std::string_view text = oracle.prefix();
  const std::size_t len = text.size();
  struct Track {
    std::size_t first = 0;
    std::size_t last = 0;
    std::size_t worst_gap = 0;
    bool seen = false;
  };
  std::unordered_map<std::string_view, Track> tracks;
  for (std::size_t i = 0; i + n <= len; ++i) {
    auto& t = tracks[text.substr(i, n)];
    if (!t.seen) {
      t.first = i;
      t.seen = true;
    } else {
      t.worst_gap = std::max(t.worst_gap, i - t.last);
    }
    t.last = i;
  }
  std::size_t window = n;
  for (const auto& f : all) {
    const auto& t = tracks.at(f);
    // A length-L window starting at i holds f iff some occurrence starts in [i, i + L - n].
    window = std::max({window, t.first + n, t.worst_gap - 1 + n, len - t.last});
  }
  return {window, len};
}

SpecialFactors special_factors(FactorOracle& oracle, std::size_t n) {
  const auto& base = oracle.factors(n);
  const auto& longer = oracle.factors(n + 1);
  std::map<std::string_view, std::size_t> right_ext;
  std::map<std::string_view, std::size_t> left_ext;
  for (const auto& w : longer) {
    ++right_ext[std::string_view(w).substr(0, n)];
    ++left_ext[std::string_view(w).substr(1)];
  }
  SpecialFactors out;
  for (const auto& u : base) {
    const bool right = right_ext[u] >= 2;
    const bool left = left_ext[u] >= 2;
    if (right) out.right.push_back(u);
    if (left) out.left.push_back(u);
    if (right && left) out.bispecial.push_back(u);
  }
  return out;
}

PeriodicityVerdict detect_word_periodicity(FactorOracle& oracle, std::size_t max_n) {
  try {
    std::size_t previous = oracle.complexity(1);
    for (std::size_t n = 1; n <= max_n; ++n) {
      const std::size_t current = oracle.complexity(n + 1);
      if (current == previous) {
        // Complexity plateau: the word is eventually periodic with period at
        // most p(n). Find the least period of the second half of the prefix.
        const std::string_view text = oracle.prefix();
        const std::size_t tail_start = text.size() / 2;
        for (std::size_t q = 1; q <= current; ++q) {
          if (4 * q > text.size() - tail_start) break;
          bool periodic = true;
          for (std::size_t i = tail_start; i + q < text.size(); ++i) {
            if (text[i] != text[i + q]) {
              periodic = false;
              break;
            }
          }
          if (periodic) return EventuallyPeriodic{q};
        }
        return PeriodicityUnknown{"complexity plateau without a visible period"};
      }
      previous = current;
    }
    return NonPeriodicWitness{max_n + 1};
  } catch (const Error& e) {
    return PeriodicityUnknown{e.what()};
  }
}

}  // namespace rauzy
