#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rauzy/scheme.hpp"

namespace rauzy {

// Support edges (collecting -> distributing) in ascending number order.
// Throws NoSupportEdge.
std::vector<std::size_t> support_edges(const Scheme& s);

// Edges x_i entering the start of the support edge v and y_j leaving its end,
// both in ascending number order.
struct SupportContext {
  std::size_t support = 0;
  std::vector<std::size_t> incoming;
  std::vector<std::size_t> outgoing;
};

SupportContext support_context(const Scheme& s, std::size_t support);

// Pairs (number of x_i, number of y_j) with X_i V Y_j not a factor.
using BadPairs = std::set<std::pair<std::uint32_t, std::uint32_t>>;

BadPairs bad_pairs(const Scheme& s, std::size_t support, FactorOracle& oracle);

// S': the support edge replaced by split vertices A_i (distributing, entered by
// x_i) and B_j (collecting, left by y_j) joined by edges v_ij numbered (i, j).
struct IntermediateScheme {
  Scheme scheme;
  std::vector<bool> good;  // per edge of scheme
};

// Edge numbers of the previous scheme whose front words concatenate to a front word.
using Monomial = std::vector<std::uint32_t>;

struct Evolution {
  IntermediateScheme intermediate;
  Scheme next;                      // S'' with provisional numbers
  std::vector<Monomial> monomials;  // aligned with next.edges()
  std::vector<std::vector<std::size_t>> paths;  // S' edge indices per S'' edge
};

// One elementary evolution along the support edge. Throws DegenerateResult
// when S'' is empty or not strongly connected.
Evolution elementary_evolution(const Scheme& s, std::size_t support, FactorOracle& oracle);
// Same with the bad pairs supplied by the caller.
Evolution elementary_evolution(const Scheme& s, std::size_t support, const BadPairs& bad);

// Numbers 1..n in the order scalars ascending, then pairs lexicographically.
LightScheme renumber(const LightScheme& s);
Scheme renumber(const Scheme& s);

struct ProtocolEntry {
  std::size_t step = 0;
  LightScheme scheme;
  std::uint32_t support = 0;
  BadPairs bad_pairs;
  // Keyed by the number of the edge in the next scheme (index + 1).
  std::vector<Monomial> monomials;
  std::size_t scale = 0;
  std::vector<std::size_t> edge_word_lengths;  // front word lengths, by edge number

  // canonical(scheme) plus support and bad pairs; equal states evolve equally.
  std::string state() const;
  std::string to_json() const;
};

struct Step {
  Scheme next;
  ProtocolEntry entry;
};

// Evolves along the least-numbered support edge and renumbers the result.
Step deterministic_step(const Scheme& s, FactorOracle& oracle, std::size_t step = 0);

// The lightened next scheme, computed from structure alone. Throws
// InconsistentInput when the support number or a bad pair does not fit s.
LightScheme light_evolve(const LightScheme& s, std::uint32_t support, const BadPairs& bad);

}  // namespace rauzy
