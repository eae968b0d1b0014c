#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "rauzy/factor_oracle.hpp"

namespace rauzy {

struct LetterClassification {
  std::vector<bool> growing;   // |phi^n(x)| unbounded
  std::vector<bool> bounded;   // complement of growing
  std::vector<bool> erasable;  // h(phi^n(x)) empty for every n
};

// Exact, from the incidence structure: a letter grows iff it reaches a cyclic
// component in which some letter's image holds at least two non-mortal letters.
LetterClassification classify_letters(const Morphism& phi, const Morphism& h);

// Removes the erasable letters; the coded word is unchanged. Throws
// SeedErasable.
MorphicWordSpec strip_erasable(const MorphicWordSpec& spec);

struct FoundUnboundedPowers {
  Word base;  // primitive word w with w^power a factor
  std::size_t power = 0;
};
struct NoneWithinBudget {};
using PowerVerdict = std::variant<FoundUnboundedPowers, NoneWithinBudget>;

// Looks for w^power_budget among the factors, |w| <= length_budget. Budget
// failures of the oracle count as "none found".
PowerVerdict bounded_power_check(FactorOracle& oracle, std::size_t power_budget = 16,
                                 std::size_t length_budget = 8);

// Symbols [t w t'] of a fixed point: t, t' growing letters, w a run of
// bounded letters, t w t' a factor.
struct TripleAlphabet {
  std::vector<Word> words;  // underlying t w t', shortlex order; symbol i = words[i]
  Morphism psi;             // block formula on symbols
  Morphism f;               // [t w t'] -> h(t w)
  std::size_t start = 0;    // the symbol the fixed point begins with

  std::string listing(const Alphabet& letters) const;
};

// `raw` must be an uncoded oracle; its (prolonged) morphism and seed are used.
// Throws UnboundedInterior when a bounded run exceeds run_budget, and
// InconsistentInput when the seed is bounded or psi leaves the symbol set.
TripleAlphabet build_triples(FactorOracle& raw, const Morphism& h, std::size_t run_budget = 32);

struct PrimitiveSystem {
  Morphism rho;  // psi^k on the chosen component
  Morphism g;    // f on the chosen component
  std::size_t seed = 0;
  std::size_t power = 1;         // k
  std::vector<std::size_t> component;  // triple symbols, in order

  MorphicWordSpec spec(std::size_t prefix_budget = 1'000'000) const;
};

// Chooses a terminal strongly connected component reachable from `start`
// that holds a symbol with non-empty f-image (ties: smallest symbol). Throws
// NoPrimitiveComponent when none yields a primitive, growing rho.
PrimitiveSystem primitive_restriction(const TripleAlphabet& t, std::size_t start);

struct PrimitivizeOptions {
  std::size_t run_budget = 32;
  std::size_t prefix_budget = 0;  // 0: the input spec's budget
};

struct PrimitivizeResult {
  LetterClassification classification;
  MorphicWordSpec stripped;
  TripleAlphabet triples;
  PrimitiveSystem system;

  std::string report(const MorphicWordSpec& original) const;
};

PrimitivizeResult primitivize(const MorphicWordSpec& spec, const PrimitivizeOptions& options = {});

struct UrEvidence {
  double max_ratio = 0;  // largest recurrence window / n over the probe range
};
struct NotUr {
  std::string reason;
};
struct UrUnknown {
  std::string reason;
};
using UrVerdict = std::variant<UrEvidence, NotUr, UrUnknown>;

struct UrOptions {
  std::size_t max_probe = 32;  // recurrence probed at n = 2, 4, ..., max_probe
  std::size_t power_budget = 16;
  std::size_t length_budget = 8;
  std::size_t run_budget = 32;
};

// Three-valued semi-decision; never throws for well-formed specs.
UrVerdict check_uniform_recurrence(const MorphicWordSpec& spec, const UrOptions& options = {});

}  // namespace rauzy
