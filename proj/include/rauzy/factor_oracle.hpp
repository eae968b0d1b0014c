#pragma once

#include <cstddef>
#include <map>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "rauzy/morphic.hpp"

namespace rauzy {

struct OracleOptions {
  // A length-n factor set is declared stable on a prefix of length at least
  // factor * n once one further growth round has left it unchanged. The
  // factor is safety times the recurrence ratio P2(m)/m measured at small m,
  // clamped to [2, ratio_cap]; without calibration it is ratio_cap.
  std::size_t ratio_cap = 64;
  double safety = 4.0;
  bool calibrate = true;
};

// Lazily grown prefix of a morphic word answering factor queries.
//
// Mutating calls (everything that may grow the prefix) must be serialized.
// After freeze(max_len) the oracle never grows again; const queries are then
// safe to issue concurrently.
class FactorOracle {
 public:
  explicit FactorOracle(const MorphicWordSpec& spec, OracleOptions options = {});

  const MorphicWordSpec& spec() const { return spec_; }
  std::size_t prolongation_power() const { return power_; }
  const Alphabet& alphabet() const { return spec_.alphabet(); }
  std::string_view prefix() const { return coded_; }
  std::size_t stable_length() const { return stable_len_; }
  std::size_t stability_factor();
  const OracleOptions& options() const { return options_; }

  void ensure_prefix(std::size_t min_len);
  // Grows until every factor of length n is present in the prefix.
  void ensure_stable(std::size_t n);

  bool is_factor(std::string_view u);
  // Read-only variant; throws BudgetExceeded if |u| exceeds the stable length.
  bool is_factor_frozen(std::string_view u) const;

  // Sorted length-n factors (n >= 1).
  const std::vector<Word>& factors(std::size_t n);

  std::size_t complexity(std::size_t n) { return factors(n).size(); }
  std::size_t first_difference(std::size_t n) { return complexity(n + 1) - complexity(n); }

  void freeze(std::size_t max_len);
  bool frozen() const { return frozen_; }

 private:
  bool grow_round();  // false when the budget blocks any growth
  bool windows_unchanged(std::size_t n, std::size_t old_len) const;
  bool find(std::string_view u) const;
  std::string_view certified(std::size_t n) const;  // shortest prefix known to hold all length-n factors

  MorphicWordSpec spec_;
  std::size_t power_ = 1;
  OracleOptions options_;
  Word raw_;    // prefix of phi^inf(seed)
  Word coded_;  // h(raw_)
  std::size_t stable_len_ = 0;
  std::size_t previous_len_ = 0;  // coded length before the last growth round
  // Certified length -> prefix length holding every factor of that length.
  std::map<std::size_t, std::size_t> certified_;
  std::size_t factor_ = 0;        // 0 until calibrated
  std::size_t stalls_ = 0;
  bool frozen_ = false;
  std::map<std::size_t, std::vector<Word>> factor_cache_;
};

struct RecurrenceEstimate {
  std::size_t window = 0;      // least L such that every length-L window holds every factor
  std::size_t prefix_length = 0;
};

RecurrenceEstimate recurrence_exponent(FactorOracle& oracle, std::size_t n);

struct SpecialFactors {
  std::vector<Word> left;
  std::vector<Word> right;
  std::vector<Word> bispecial;
};

SpecialFactors special_factors(FactorOracle& oracle, std::size_t n);

struct NonPeriodicWitness {
  std::size_t probed_up_to = 0;
};
struct EventuallyPeriodic {
  std::size_t period = 0;
};
struct PeriodicityUnknown {
  std::string reason;
};
using PeriodicityVerdict = std::variant<NonPeriodicWitness, EventuallyPeriodic, PeriodicityUnknown>;

// Probes complexities p(1..max_n + 1). Never throws; budget failures yield Unknown.
PeriodicityVerdict detect_word_periodicity(FactorOracle& oracle, std::size_t max_n = 32);

}  // namespace rauzy
