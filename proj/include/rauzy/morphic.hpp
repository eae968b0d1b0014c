#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "rauzy/word.hpp"

namespace rauzy {

// h(phi^inf(seed)): a coding of the fixed point of an endomorphism.
struct MorphicWordSpec {
  Morphism phi;
  std::size_t seed = 0;
  std::optional<Morphism> coding;
  std::size_t prefix_budget = 1'000'000;

  const Alphabet& alphabet() const { return coding ? coding->target() : phi.source(); }
  Word code(std::string_view word) const { return coding ? coding->apply(word) : Word(word); }

  // Throws InvalidSpec / NotEndomorphism when the pieces do not fit together.
  void validate() const;
};

struct Prolongation {
  MorphicWordSpec spec;
  std::size_t power = 1;  // spec.phi is the original phi raised to this power
  bool rewritten = false;
};

// Makes phi(seed) start with seed, replacing phi by a power (at most |A|)
// and, when the seed is not on a cycle of the first-letter map, moving the
// seed onto that cycle. Throws NotProlongable when the first-letter map runs
// into an erased letter.
Prolongation make_prolongable(const MorphicWordSpec& spec);

// A prefix of h(phi^inf(seed)) of length >= min_len.
// Errors: NotProlongable, WordFinite, BudgetExceeded.
Word prefix(const MorphicWordSpec& spec, std::size_t min_len);

// Reference expansion letter by letter, kept separate from Morphism::apply.
Word expand_letterwise(const Morphism& m, std::string_view word);

// Incidence matrix: entry [i][j] counts letter i in phi(letter j).
std::vector<std::vector<double>> incidence_matrix(const Morphism& m);

bool is_primitive(const Morphism& m);

// Dominant (Perron) eigenvalue of the incidence matrix by power iteration.
double growth_rate(const Morphism& m, double tolerance = 1e-9, std::size_t max_iterations = 100'000);

// Letters reachable from `from` through the "occurs in the image" relation
// (including `from` itself).
std::vector<bool> reachable_letters(const Morphism& m, std::size_t from);

}  // namespace rauzy
