#include "rauzy/protocol.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

namespace rauzy {

std::string Protocol::to_jsonl() const {
  std::string out;
  for (const auto& e : entries) {
    out += e.to_json();
    out += '\n';
  }
  return out;
}

Protocol run(FactorOracle& oracle, const Scheme& s0, const ProtocolOptions& options) {
  Protocol protocol;
  std::optional<Scheme> current(s0);
  for (std::size_t step = 0; step < options.max_steps; ++step) {
    try {
      if (options.check_properties) {
        protocol.reports.push_back(check_scheme_properties(*current, oracle, options.check));
        if (!protocol.reports.back().all_passed()) {
          protocol.failure = ProtocolFailure{ErrorKind::NotScheme, step, protocol.reports.back().to_text()};
          break;
        }
      }
      auto next = deterministic_step(*current, oracle, step);
      protocol.schemes.insert_or_assign(step, std::move(*current));
      if (options.retain_schemes != 0 && step >= options.retain_schemes) {
        protocol.schemes.erase(step - options.retain_schemes);
      }
      protocol.entries.push_back(std::move(next.entry));
      if (options.on_entry) options.on_entry(protocol.entries.back());
      current.emplace(std::move(next.next));
    } catch (const Error& e) {
      protocol.failure = ProtocolFailure{e.kind(), step, e.what()};
      break;
    }
  }
  if (!protocol.failure) protocol.schemes.insert_or_assign(protocol.entries.size(), std::move(*current));
  return protocol;
}

Period detect_period(const std::vector<std::string>& states) {
  const std::size_t n = states.size();
  if (n < 2) throw Error(ErrorKind::NotFoundWithinBudget, "a period needs at least two protocol entries");
  std::unordered_map<std::string_view, std::size_t> intern;
  std::vector<std::size_t> ids;
  for (const auto& s : states) ids.push_back(intern.emplace(s, intern.size()).first->second);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t k = 1; p + 2 * k <= n; ++k) {
      bool periodic = true;
      for (std::size_t i = p; i + k < n && periodic; ++i) periodic = ids[i] == ids[i + k];
      if (periodic) return {p, k};
    }
  }
  throw Error(ErrorKind::NotFoundWithinBudget,
              "no period with two full repetitions within " + std::to_string(n) + " protocol entries");
}

Period detect_period(const Protocol& p) {
  std::vector<std::string> states;
  states.reserve(p.entries.size());
  for (const auto& e : p.entries) states.push_back(e.state());
  return detect_period(states);
}

std::optional<std::size_t> light_replay_mismatch(const Protocol& p) {
  for (std::size_t i = 0; i + 1 < p.entries.size(); ++i) {
    const auto& e = p.entries[i];
    try {
      if (light_evolve(e.scheme, e.support, e.bad_pairs).canonical() != p.entries[i + 1].scheme.canonical()) {
        return i + 1;
      }
    } catch (const Error&) {
      return i + 1;
    }
  }
  return std::nullopt;
}

MorphicWordSpec SubstitutionSystem::spec(std::size_t prefix_budget) const {
  MorphicWordSpec out{phi, 0, coding, prefix_budget};
  out.validate();
  return out;
}

SubstitutionSystem extract_substitution(const Protocol& p, std::size_t anchor, std::size_t period,
                                        const Alphabet& alphabet) {
  if (period == 0) throw Error(ErrorKind::InvalidSpec, "period must be positive");
  if (anchor + period > p.entries.size()) {
    throw Error(ErrorKind::PeriodMismatch, "the protocol ends before anchor + period");
  }
  const auto found = p.schemes.find(anchor);
  if (found == p.schemes.end()) throw Error(ErrorKind::InvalidSpec, "anchor scheme was not retained");
  const Scheme& base = found->second;
  const std::size_t m = base.edge_count();
  const std::size_t end_edges =
      anchor + period < p.entries.size() ? p.entries[anchor + period].scheme.edges.size()
                                         : p.entries[anchor + period - 1].monomials.size();
  if (end_edges != m) {
    throw Error(ErrorKind::PeriodMismatch, "edge counts differ at the two ends of the period");
  }

  // images[i]: edge numbers at the current step whose fronts concatenate to
  // the front of edge i + 1 at anchor + period.
  std::vector<Monomial> images(m);
  for (std::size_t i = 0; i < m; ++i) images[i] = {static_cast<std::uint32_t>(i + 1)};
  for (std::size_t t = anchor + period; t-- > anchor;) {
    const auto& maps = p.entries[t].monomials;
    for (auto& image : images) {
      Monomial expanded;
      for (auto atom : image) {
        if (atom == 0 || atom > maps.size()) {
          throw Error(ErrorKind::PeriodMismatch, "monomial of step " + std::to_string(t) + " has no edge " +
                                                     std::to_string(atom));
        }
        const auto& part = maps[atom - 1];
        expanded.insert(expanded.end(), part.begin(), part.end());
      }
      image = std::move(expanded);
    }
  }

  const Alphabet fresh(generated_symbols(m));
  std::vector<Word> rules;
  for (const auto& image : images) {
    Word rule;
    for (auto atom : image) {
      if (atom == 0 || atom > m) throw Error(ErrorKind::PeriodMismatch, "atom outside the anchor scheme");
      rule.push_back(letter_char(atom - 1));
    }
    rules.push_back(std::move(rule));
  }
  std::vector<Word> words;
  for (std::size_t i = 0; i < m; ++i) {
    const auto e = base.find_edge(EdgeNumber::scalar(static_cast<std::uint32_t>(i + 1)));
    if (!e) throw Error(ErrorKind::PeriodMismatch, "anchor scheme lacks edge " + std::to_string(i + 1));
    words.push_back(base.edge(*e).front);
  }
  return SubstitutionSystem{Morphism(fresh, fresh, std::move(rules)), Morphism(fresh, alphabet, std::move(words)),
                            anchor, period};
}

namespace {

// Length-n factor sets of h(phi^l(a)) over all letters a, l grown until every
// image is long enough for the requested lengths.
std::vector<std::set<Word>> closure_factors(const SubstitutionSystem& system, std::size_t max_length,
                                            std::size_t prefix_budget) {
  const std::size_t letters = system.phi.source().size();
  std::vector<Word> raw;
  for (std::size_t a = 0; a < letters; ++a) raw.emplace_back(1, letter_char(a));
  const std::size_t wanted = 64 * max_length;
  // Images that stopped changing are final and do not hold the loop open.
  std::vector<bool> growing(letters, true);
  for (std::size_t round = 0; round < 64; ++round) {
    bool long_enough = true;
    for (std::size_t a = 0; a < letters; ++a) {
      long_enough = long_enough && (!growing[a] || system.coding.apply(raw[a]).size() >= wanted);
    }
    if (long_enough) break;
    std::size_t total = 0;
    for (std::size_t a = 0; a < letters; ++a) {
      Word next = system.phi.apply(raw[a]);
      growing[a] = next != raw[a];
      raw[a] = std::move(next);
      total += raw[a].size();
    }
    if (total > prefix_budget) throw Error(ErrorKind::BudgetExceeded, "closure words exceed the budget");
  }
  std::vector<std::set<Word>> out(max_length + 1);
  for (const auto& r : raw) {
    const Word w = system.coding.apply(r);
    for (std::size_t n = 1; n <= max_length; ++n) {
      for (std::size_t i = 0; i + n <= w.size(); ++i) out[n].insert(w.substr(i, n));
    }
  }
  return out;
}

}  // namespace

LanguageComparison verify_language_equality(FactorOracle& oracle, const SubstitutionSystem& system,
                                            std::size_t max_length, std::size_t prefix_budget) {
  LanguageComparison result;
  std::optional<FactorOracle> generated;
  try {
    generated.emplace(system.spec(prefix_budget), oracle.options());
    generated->ensure_prefix(2);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotProlongable && e.kind() != ErrorKind::WordFinite) throw;
    generated.reset();
    result.closure_mode = true;
  }
  std::vector<std::set<Word>> closure;
  if (result.closure_mode) closure = closure_factors(system, max_length, prefix_budget);
  for (std::size_t n = 1; n <= max_length; ++n) {
    const auto& expected = oracle.factors(n);
    bool same;
    if (generated) {
      same = generated->factors(n) == expected;
    } else {
      same = std::equal(closure[n].begin(), closure[n].end(), expected.begin(), expected.end());
    }
    if (!same) {
      result.first_difference = n;
      return result;
    }
  }
  result.equal = true;
  return result;
}

}  // namespace rauzy
