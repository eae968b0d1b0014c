#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rauzy/evolution.hpp"
#include "rauzy/scheme_check.hpp"

namespace rauzy {

struct ProtocolOptions {
  std::size_t max_steps = 20;
  // Run check_scheme_properties on every scheme; a failure stops the run.
  bool check_properties = false;
  CheckOptions check;
  // Full schemes kept for the last this-many steps; 0 keeps all of them.
  std::size_t retain_schemes = 0;
  // Called after each step, e.g. to persist entries as they are produced.
  std::function<void(const ProtocolEntry&)> on_entry;
};

struct ProtocolFailure {
  ErrorKind kind = ErrorKind::DegenerateResult;
  std::size_t step = 0;
  std::string message;
};

struct Protocol {
  std::vector<ProtocolEntry> entries;
  std::map<std::size_t, Scheme> schemes;   // step -> scheme the entry was computed from
  std::vector<PropertyReport> reports;     // filled when properties are checked
  std::optional<ProtocolFailure> failure;  // set when the run stopped early

  std::string to_jsonl() const;
};

// Deterministic evolution from s0. Errors stop the run; the entries computed
// so far are returned with the failure recorded.
Protocol run(FactorOracle& oracle, const Scheme& s0, const ProtocolOptions& options);

struct Period {
  std::size_t preperiod = 0;
  std::size_t period = 0;
  friend bool operator==(const Period&, const Period&) = default;
};

// Least p, then least k, such that the states repeat with period k from p to
// the end of the protocol and at least two full periods fit. Throws
// NotFoundWithinBudget.
Period detect_period(const std::vector<std::string>& states);
Period detect_period(const Protocol& p);

// First step whose recorded light scheme differs from the light evolution of
// the previous entry, if any.
std::optional<std::size_t> light_replay_mismatch(const Protocol& p);

struct SubstitutionSystem {
  Morphism phi;     // over a fresh alphabet, one letter per edge at the anchor
  Morphism coding;  // letter i -> front word of edge i at the anchor
  std::size_t anchor = 0;
  std::size_t period = 0;

  MorphicWordSpec spec(std::size_t prefix_budget = 1'000'000) const;
};

// Composes the monomials of steps anchor .. anchor + period - 1; the coding
// maps into `alphabet`, the alphabet of the evolved word. Throws
// PeriodMismatch when edge counts or atoms do not line up and InvalidSpec when
// period is 0 or the anchor scheme was not retained.
SubstitutionSystem extract_substitution(const Protocol& p, std::size_t anchor, std::size_t period,
                                        const Alphabet& alphabet);

struct LanguageComparison {
  bool equal = false;
  std::optional<std::size_t> first_difference;  // least n with differing factor sets
  bool closure_mode = false;  // no power of phi was prolongable
};

// Compares the factor sets of lengths 1..max_length of the oracle's word and
// the word generated by the system.
LanguageComparison verify_language_equality(FactorOracle& oracle, const SubstitutionSystem& system,
                                            std::size_t max_length, std::size_t prefix_budget = 20'000'000);

}  // namespace rauzy
