#include "rauzy/primitivize.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace rauzy {

namespace {

using Matrix = std::vector<std::vector<bool>>;

// reach[x][y]: y is reachable from x in one or more steps.
Matrix reachability(const Morphism& m) {
  const std::size_t n = m.source().size();
  Matrix reach(n, std::vector<bool>(n, false));
  for (std::size_t x = 0; x < n; ++x) {
    std::deque<std::size_t> queue;
    for (char c : m.rule(x)) queue.push_back(index_of(c));
    while (!queue.empty()) {
      const std::size_t y = queue.front();
      queue.pop_front();
      if (reach[x][y]) continue;
      reach[x][y] = true;
      for (char c : m.rule(y)) queue.push_back(index_of(c));
    }
  }
  return reach;
}

Morphism identity_into(const Alphabet& source, const Alphabet& target) {
  std::vector<Word> rules;
  for (std::size_t i = 0; i < source.size(); ++i) rules.emplace_back(1, letter_char(target.index(source.symbol(i))));
  return Morphism(source, target, std::move(rules));
}

Alphabet restrict_alphabet(const Alphabet& a, const std::vector<std::size_t>& keep) {
  std::vector<char32_t> symbols;
  for (auto i : keep) symbols.push_back(a.symbol(i));
  return Alphabet(std::move(symbols));
}

std::string letter_set(const Alphabet& a, const std::vector<bool>& member) {
  std::string out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!member[i]) continue;
    if (!out.empty()) out += ' ';
    out += a.encode_letter(i);
  }
  return out.empty() ? "-" : out;
}

bool is_primitive_word(std::string_view w) {
  const std::string doubled = std::string(w) + std::string(w);
  return std::string_view(doubled).substr(1, doubled.size() - 2).find(w) == std::string_view::npos;
}

}  // namespace

LetterClassification classify_letters(const Morphism& phi, const Morphism& h) {
  const std::size_t n = phi.source().size();
  std::vector<bool> mortal(n, false);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t x = 0; x < n; ++x) {
      if (mortal[x]) continue;
      const auto& image = phi.rule(x);
      if (std::all_of(image.begin(), image.end(), [&](char c) { return mortal[index_of(c)]; })) {
        mortal[x] = changed = true;
      }
    }
  }
  const Matrix reach = reachability(phi);
  std::vector<bool> expanding(n, false);
  for (std::size_t c = 0; c < n; ++c) {
    const auto& image = phi.rule(c);
    const auto live = std::count_if(image.begin(), image.end(), [&](char d) { return !mortal[index_of(d)]; });
    expanding[c] = reach[c][c] && live >= 2;
  }
  LetterClassification out;
  out.growing.assign(n, false);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t c = 0; c < n && !out.growing[x]; ++c) out.growing[x] = expanding[c] && (c == x || reach[x][c]);
  }
  out.bounded.resize(n);
  for (std::size_t x = 0; x < n; ++x) out.bounded[x] = !out.growing[x];

  out.erasable.assign(n, false);
  for (std::size_t x = 0; x < n; ++x) out.erasable[x] = h.rule(x).empty();
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t x = 0; x < n; ++x) {
      if (!out.erasable[x]) continue;
      const auto& image = phi.rule(x);
      if (!std::all_of(image.begin(), image.end(), [&](char c) { return out.erasable[index_of(c)]; })) {
        out.erasable[x] = false;
        changed = true;
      }
    }
  }
  return out;
}

MorphicWordSpec strip_erasable(const MorphicWordSpec& spec) {
  spec.validate();
  const Morphism h = spec.coding ? *spec.coding : Morphism::identity(spec.phi.source());
  const auto cls = classify_letters(spec.phi, h);
  if (cls.erasable[spec.seed]) {
    throw Error(ErrorKind::SeedErasable, "the seed letter is erased by every iterate");
  }
  if (std::none_of(cls.erasable.begin(), cls.erasable.end(), [](bool e) { return e; })) return spec;

  const Alphabet& a = spec.phi.source();
  std::vector<std::size_t> keep;
  std::vector<std::size_t> renamed(a.size(), a.size());
  for (std::size_t x = 0; x < a.size(); ++x) {
    if (cls.erasable[x]) continue;
    renamed[x] = keep.size();
    keep.push_back(x);
  }
  const Alphabet kept = restrict_alphabet(a, keep);
  std::vector<Word> rules;
  std::vector<Word> coding;
  for (auto x : keep) {
    Word rule;
    for (char c : spec.phi.rule(x)) {
      if (renamed[index_of(c)] != a.size()) rule.push_back(letter_char(renamed[index_of(c)]));
    }
    rules.push_back(std::move(rule));
    coding.push_back(h.rule(x));
  }
  return MorphicWordSpec{Morphism(kept, kept, std::move(rules)), renamed[spec.seed],
                         Morphism(kept, h.target(), std::move(coding)), spec.prefix_budget};
}

PowerVerdict bounded_power_check(FactorOracle& oracle, std::size_t power_budget, std::size_t length_budget) {
  if (power_budget == 0) return NoneWithinBudget{};
  try {
    for (std::size_t m = 1; m <= length_budget; ++m) {
      for (const auto& w : oracle.factors(m)) {
        if (!is_primitive_word(w)) continue;
        Word power;
        for (std::size_t i = 0; i < power_budget; ++i) power += w;
        if (oracle.is_factor(power)) return FoundUnboundedPowers{w, power_budget};
      }
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::BudgetExceeded) throw;
  }
  return NoneWithinBudget{};
}

std::string TripleAlphabet::listing(const Alphabet& letters) const {
  std::string out;
  const Alphabet& symbols = psi.source();
  for (std::size_t i = 0; i < words.size(); ++i) {
    const Word& u = words[i];
    out += symbols.encode_letter(i) + " = [" + letters.encode_letter(index_of(u.front())) + "|" +
           letters.encode(std::string_view(u).substr(1, u.size() - 2)) + "|" +
           letters.encode_letter(index_of(u.back())) + "]  psi: " + symbols.encode(psi.rule(i)) +
           "  f: " + f.target().encode(f.rule(i)) + "\n";
  }
  return out;
}

TripleAlphabet build_triples(FactorOracle& raw, const Morphism& h, std::size_t run_budget) {
  if (raw.spec().coding) throw Error(ErrorKind::InvalidSpec, "build_triples needs an uncoded oracle");
  const Morphism& phi = raw.spec().phi;
  if (!(h.source() == phi.source())) throw Error(ErrorKind::InvalidSpec, "coding must be defined on A");
  const auto cls = classify_letters(phi, h);
  if (!cls.growing[raw.spec().seed]) {
    throw Error(ErrorKind::InconsistentInput, "the fixed point starts with a bounded letter");
  }
  auto bounded_run = [&](std::string_view w) {
    return std::all_of(w.begin(), w.end(), [&](char c) { return cls.bounded[index_of(c)]; });
  };

  TripleAlphabet t;
  for (std::size_t n = 2;; ++n) {
    bool interior_seen = false;
    for (const auto& u : raw.factors(n)) {
      const std::string_view inner = std::string_view(u).substr(1, n - 2);
      if (!bounded_run(inner)) continue;
      interior_seen = true;
      if (n - 2 > run_budget) {
        throw Error(ErrorKind::UnboundedInterior,
                    "bounded runs longer than " + std::to_string(run_budget) + " letters occur");
      }
      if (cls.growing[index_of(u.front())] && cls.growing[index_of(u.back())]) t.words.push_back(u);
    }
    if (!interior_seen) break;
  }
  if (t.words.size() > kMaxAlphabetSize) {
    throw Error(ErrorKind::BudgetExceeded, std::to_string(t.words.size()) + " triple symbols exceed the alphabet limit");
  }
  std::unordered_map<std::string_view, std::size_t> index;
  for (std::size_t i = 0; i < t.words.size(); ++i) index.emplace(t.words[i], i);
  auto lookup = [&](std::string_view u) -> char {
    const auto it = index.find(u);
    if (it == index.end()) throw Error(ErrorKind::InconsistentInput, "psi leaves the triple alphabet");
    return letter_char(it->second);
  };
  auto first_growing = [&](std::string_view w) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (cls.growing[index_of(w[i])]) return i;
    }
    throw Error(ErrorKind::InconsistentInput, "image of a growing letter has no growing letter");
  };

  const Alphabet symbols(generated_symbols(t.words.size()));
  std::vector<Word> psi_rules;
  std::vector<Word> f_rules;
  for (const auto& u : t.words) {
    const std::string_view body = std::string_view(u).substr(0, u.size() - 1);
    const Word image = phi.apply(body);
    const Word& tail = phi.rule(index_of(u.back()));
    std::vector<std::size_t> marks;
    for (std::size_t i = first_growing(image); i < image.size(); ++i) {
      if (cls.growing[index_of(image[i])]) marks.push_back(i);
    }
    Word rule;
    for (std::size_t j = 0; j + 1 < marks.size(); ++j) {
      rule.push_back(lookup(std::string_view(image).substr(marks[j], marks[j + 1] - marks[j] + 1)));
    }
    rule.push_back(lookup(image.substr(marks.back()) + tail.substr(0, first_growing(tail) + 1)));
    psi_rules.push_back(std::move(rule));
    f_rules.push_back(h.apply(body));
  }
  t.psi = Morphism(symbols, symbols, std::move(psi_rules));
  t.f = Morphism(symbols, h.target(), std::move(f_rules));

  raw.ensure_prefix(run_budget + 2);
  const std::string_view text = raw.prefix();
  const std::size_t next = first_growing(text.substr(1)) + 1;
  t.start = index_of(lookup(text.substr(0, next + 1)));
  return t;
}

MorphicWordSpec PrimitiveSystem::spec(std::size_t prefix_budget) const {
  MorphicWordSpec out{rho, seed, g, prefix_budget};
  out.validate();
  return out;
}

PrimitiveSystem primitive_restriction(const TripleAlphabet& t, std::size_t start) {
  const std::size_t n = t.psi.source().size();
  if (start >= n) throw Error(ErrorKind::InvalidSpec, "start symbol outside the triple alphabet");
  const Matrix reach = reachability(t.psi);

  std::vector<bool> tried(n, false);
  for (std::size_t x = 0; x < n; ++x) {
    if (tried[x] || !(x == start || reach[start][x]) || !reach[x][x]) continue;
    std::vector<std::size_t> component;
    for (std::size_t y = 0; y < n; ++y) {
      if (y == x || (reach[x][y] && reach[y][x])) component.push_back(y);
    }
    for (auto y : component) tried[y] = true;
    // Terminal: nothing outside the component is reachable from it.
    bool terminal = true;
    for (std::size_t y = 0; y < n && terminal; ++y) terminal = !reach[x][y] || reach[y][x];
    const bool visible = std::any_of(component.begin(), component.end(),
                                     [&](std::size_t y) { return !t.f.rule(y).empty(); });
    if (!terminal || !visible) continue;

    // First-letter map on the component; d is the least symbol on its cycle.
    std::vector<std::size_t> order;
    std::vector<std::size_t> seen(n, n);
    std::size_t current = component.front();
    while (seen[current] == n) {
      seen[current] = order.size();
      order.push_back(current);
      current = index_of(t.psi.rule(current).front());
    }
    const std::size_t power = order.size() - seen[current];
    const std::size_t d = *std::min_element(order.begin() + static_cast<std::ptrdiff_t>(seen[current]), order.end());

    std::vector<std::size_t> renamed(n, n);
    for (std::size_t i = 0; i < component.size(); ++i) renamed[component[i]] = i;
    const Alphabet letters = restrict_alphabet(t.psi.source(), component);
    const Morphism psi_k = t.psi.power(power);
    std::vector<Word> rho_rules;
    std::vector<Word> g_rules;
    bool growing = false;
    for (auto y : component) {
      Word rule;
      for (char c : psi_k.rule(y)) rule.push_back(letter_char(renamed[index_of(c)]));
      growing = growing || rule.size() >= 2;
      rho_rules.push_back(std::move(rule));
      g_rules.push_back(t.f.rule(y));
    }
    PrimitiveSystem out{Morphism(letters, letters, std::move(rho_rules)),
                        Morphism(letters, t.f.target(), std::move(g_rules)), renamed[d], power, component};
    if (growing && is_primitive(out.rho)) return out;
  }
  throw Error(ErrorKind::NoPrimitiveComponent, "no reachable terminal component yields a primitive growing morphism");
}

std::string PrimitivizeResult::report(const MorphicWordSpec& original) const {
  const Alphabet& a = original.phi.source();
  std::string out;
  out += "# letters: " + std::to_string(a.size()) + "\n";
  out += "# growing: " + letter_set(a, classification.growing) + "\n";
  out += "# bounded: " + letter_set(a, classification.bounded) + "\n";
  out += "# erasable: " + letter_set(a, classification.erasable) + "\n";
  out += "# stripped_letters: " + std::to_string(stripped.phi.source().size()) + "\n";
  out += "# triples: " + std::to_string(triples.words.size()) + "\n";
  out += triples.listing(stripped.phi.source());
  out += "# start: " + triples.psi.source().encode_letter(triples.start) + "\n";
  Word component;
  for (auto i : system.component) component.push_back(letter_char(i));
  out += "# component: " + triples.psi.source().encode(component) + "\n";
  out += "# power: " + std::to_string(system.power) + "\n";
  out += "# seed: " + system.rho.source().encode_letter(system.seed) + "\n";
  out += std::string("# primitive: ") + (is_primitive(system.rho) ? "true" : "false") + "\n";
  return out;
}

PrimitivizeResult primitivize(const MorphicWordSpec& spec, const PrimitivizeOptions& options) {
  spec.validate();
  const Morphism h = spec.coding ? *spec.coding : Morphism::identity(spec.phi.source());
  PrimitivizeResult out;
  out.classification = classify_letters(spec.phi, h);
  out.stripped = strip_erasable(spec);
  if (options.prefix_budget != 0) out.stripped.prefix_budget = options.prefix_budget;
  const Morphism stripped_h =
      out.stripped.coding ? *out.stripped.coding : identity_into(out.stripped.phi.source(), spec.alphabet());
  FactorOracle raw(MorphicWordSpec{out.stripped.phi, out.stripped.seed, std::nullopt, out.stripped.prefix_budget});
  out.triples = build_triples(raw, stripped_h, options.run_budget);
  out.system = primitive_restriction(out.triples, out.triples.start);
  return out;
}

UrVerdict check_uniform_recurrence(const MorphicWordSpec& spec, const UrOptions& options) {
  try {
    FactorOracle oracle(spec);
    const auto powers = bounded_power_check(oracle, options.power_budget, options.length_budget);
    if (const auto* found = std::get_if<FoundUnboundedPowers>(&powers)) {
      if (!std::holds_alternative<EventuallyPeriodic>(detect_word_periodicity(oracle))) {
        return NotUr{"(" + oracle.alphabet().encode(found->base) + ")^" + std::to_string(found->power) +
                     " is a factor of a non-periodic word"};
      }
    }
    try {
      PrimitivizeOptions popts;
      popts.run_budget = options.run_budget;
      primitivize(spec, popts);
    } catch (const Error& e) {
      switch (e.kind()) {
        case ErrorKind::UnboundedInterior:
        case ErrorKind::NoPrimitiveComponent:
        case ErrorKind::SeedErasable:
        case ErrorKind::WordFinite:
          return NotUr{e.what()};
        default:
          throw;
      }
    }
    UrEvidence evidence;
    const auto cap = static_cast<double>(oracle.options().ratio_cap);
    for (std::size_t n = 2; n <= options.max_probe; n *= 2) {
      const double ratio =
          static_cast<double>(recurrence_exponent(oracle, n).window) / static_cast<double>(n);
      evidence.max_ratio = std::max(evidence.max_ratio, ratio);
      if (ratio > cap) return UrUnknown{"recurrence window at n=" + std::to_string(n) + " exceeds the ratio cap"};
    }
    return evidence;
  } catch (const Error& e) {
    return UrUnknown{e.what()};
  }
}

}  // namespace rauzy
