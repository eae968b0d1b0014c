// Randomized and protocol-wide invariants. Seeds are fixed.

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "rauzy/protocol.hpp"
#include "support.hpp"

using namespace rauzy;

namespace {

// Random endomorphism over `letters` letters with a prolongable first letter
// and every letter in the image of a.
MorphicWordSpec random_primitive_spec(std::mt19937& rng, std::size_t letters) {
  const Alphabet a(generated_symbols(letters));
  std::uniform_int_distribution<std::size_t> letter(0, letters - 1);
  std::uniform_int_distribution<std::size_t> length(1, 4);
  std::vector<Word> rules(letters);
  for (std::size_t x = 0; x < letters; ++x) {
    for (std::size_t i = length(rng); i > 0; --i) rules[x].push_back(letter_char(letter(rng)));
  }
  rules[0] = letter_char(0) + rules[0];
  for (std::size_t x = 0; x < letters; ++x) rules[0].push_back(letter_char(x));
  for (std::size_t x = 1; x < letters; ++x) rules[x].push_back(letter_char(0));
  return MorphicWordSpec{Morphism(a, a, std::move(rules)), 0, std::nullopt, 400'000};
}

LightScheme random_light(std::mt19937& rng, std::size_t vertices, std::size_t edges) {
  std::uniform_int_distribution<std::size_t> vertex(0, vertices - 1);
  std::uniform_int_distribution<std::uint32_t> major(1, 9);
  LightScheme s;
  for (std::size_t v = 0; v < vertices; ++v) s.kinds.push_back(v % 2 ? VertexKind::Collecting : VertexKind::Distributing);
  std::set<EdgeNumber> used;
  while (s.edges.size() < edges) {
    const EdgeNumber n = rng() % 2 ? EdgeNumber::scalar(major(rng)) : EdgeNumber::pair(major(rng), major(rng));
    if (used.insert(n).second) s.edges.push_back({n, vertex(rng), vertex(rng)});
  }
  return s;
}

}  // namespace

TEST_SUITE("properties") {
  TEST_CASE("prefixes agree with letterwise expansion") {
    std::mt19937 rng(20240611);
    for (int trial = 0; trial < 25; ++trial) {
      const auto spec = random_primitive_spec(rng, 2 + trial % 3);
      CHECK(is_primitive(spec.phi));
      Word w(1, letter_char(0));
      for (int i = 0; i < 6; ++i) w = expand_letterwise(spec.phi, w);
      const Word p = prefix(spec, w.size());
      CHECK(p.substr(0, w.size()) == w);
    }
  }

  TEST_CASE("factor sets match brute force on random primitive words") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 12; ++trial) {
      const auto spec = random_primitive_spec(rng, 2 + trial % 2);
      FactorOracle o(spec);
      const Word text = prefix(spec, 200'000);
      for (std::size_t n = 1; n <= 24; ++n) {
        CAPTURE(trial);
        CAPTURE(n);
        CHECK(o.complexity(n) == fixtures::distinct_windows(text, n));
        CHECK(o.complexity(n + 1) >= o.complexity(n));
      }
    }
  }

  TEST_CASE("period detection recovers planted periods") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t pre = rng() % 6;
      const std::size_t period = 1 + rng() % 5;
      const std::size_t tail = 2 * period + rng() % 7;
      std::vector<std::string> states;
      for (std::size_t i = 0; i < pre; ++i) states.push_back("p" + std::to_string(i));
      for (std::size_t i = 0; i < tail; ++i) states.push_back("c" + std::to_string(i % period));
      CHECK(detect_period(states) == Period{pre, period});
    }
  }

  TEST_CASE("renumbering is idempotent and canonical forms ignore vertex order") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
      const LightScheme s = random_light(rng, 2 + trial % 4, 3 + trial % 6);
      const LightScheme r = renumber(s);
      CHECK(renumber(r).canonical() == r.canonical());

      std::vector<std::size_t> perm(s.kinds.size());
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      LightScheme moved = s;
      for (std::size_t v = 0; v < s.kinds.size(); ++v) moved.kinds[perm[v]] = s.kinds[v];
      for (auto& e : moved.edges) {
        e.from = perm[e.from];
        e.to = perm[e.to];
      }
      std::shuffle(moved.edges.begin(), moved.edges.end(), rng);
      // Vertices without incoming edges share an id, so only compare when all are entered.
      std::vector<bool> entered(s.kinds.size(), false);
      for (const auto& e : s.edges) entered[e.to] = true;
      if (std::all_of(entered.begin(), entered.end(), [](bool b) { return b; })) {
        CHECK(moved.canonical() == s.canonical());
      }
    }
  }

  TEST_CASE("schemes along the protocol") {
    for (const std::string name : {"fibonacci", "thue_morse", "tribonacci"}) {
      CAPTURE(name);
      FactorOracle o(fixtures::load(name));
      Scheme s = scheme_from_rauzy_graph(build_rauzy_graph(o, choose_initial_k(o)), o);
      std::size_t scale = 0;
      for (std::size_t step = 0; step < 10; ++step) {
        CAPTURE(step);
        // Edge words are factors; scale ratios and edge lengths stay within frozen bounds.
        std::size_t longest = 0;
        for (const auto& e : s.edges()) {
          CHECK(o.is_factor(e.front));
          CHECK(o.is_factor(e.back));
          longest = std::max({longest, e.front.size(), e.back.size()});
        }
        CHECK(longest <= 2 * s.scale());
        if (scale > 0) {
          CHECK(s.scale() >= scale);
          CHECK(s.scale() <= 3 * scale);
        }
        scale = s.scale();
        const auto supports = support_edges(s);
        CHECK(std::is_sorted(supports.begin(), supports.end(), [&](auto x, auto y) {
          return s.edge(x).number < s.edge(y).number;
        }));
        // Front and back words agree on symmetric paths.
        for (const auto& p : symmetric_paths(s, 4, 2000).paths) CHECK(front_word(s, p) == back_word(s, p));
        s = deterministic_step(s, o, step).next;
      }
    }
  }

  TEST_CASE("complexity differences stay bounded") {
    FactorOracle fib(fixtures::load("fibonacci"));
    FactorOracle tm(fixtures::load("thue_morse"));
    FactorOracle trib(fixtures::load("tribonacci"));
    const std::string tm_text = fixtures::thue_morse_prefix(40000);
    for (std::size_t n = 1; n <= 120; ++n) {
      CHECK(fib.first_difference(n) == 1);
      CHECK(trib.first_difference(n) == 2);
      const std::size_t d = tm.first_difference(n);
      CHECK((d == 2 || d == 4));
      CHECK(d == fixtures::distinct_windows(tm_text, n + 1) - fixtures::distinct_windows(tm_text, n));
    }
  }
}
