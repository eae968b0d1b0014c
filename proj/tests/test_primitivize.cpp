#include "doctest.h"
#include "rauzy/primitivize.hpp"
#include "support.hpp"

using namespace rauzy;

namespace {

std::string members(const Alphabet& a, const std::vector<bool>& set) {
  std::string out;
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (set[i]) out += a.encode_letter(i);
  }
  return out;
}

LetterClassification classify(const MorphicWordSpec& s) {
  return classify_letters(s.phi, s.coding ? *s.coding : Morphism::identity(s.phi.source()));
}

MorphicWordSpec uncoded(const MorphicWordSpec& s) { return MorphicWordSpec{s.phi, s.seed, std::nullopt, s.prefix_budget}; }

bool same_factors(FactorOracle& a, FactorOracle& b, std::size_t max_length) {
  for (std::size_t n = 1; n <= max_length; ++n) {
    if (a.factors(n) != b.factors(n)) return false;
  }
  return true;
}

const char* kBoundedC = R"({"alphabet":["a","b","c"],"rules":{"a":"acb","b":"a","c":"c"},"seed":"a"})";
const char* kGrowingRuns = R"({"alphabet":["a","b","c"],"rules":{"a":"ab","b":"cbc","c":"c"},"seed":"a"})";

}  // namespace

TEST_SUITE("primitivize") {
  TEST_CASE("letter classification") {
    const auto fib = parse_spec(R"({"alphabet":["a","b"],"rules":{"a":"ab","b":"a"},"seed":"a"})");
    auto c = classify(fib);
    CHECK(members(fib.phi.source(), c.growing) == "ab");
    CHECK(members(fib.phi.source(), c.bounded).empty());
    CHECK(members(fib.phi.source(), c.erasable).empty());

    const auto erasable = fixtures::load("erasable");
    c = classify(erasable);
    CHECK(members(erasable.phi.source(), c.growing) == "ab");
    CHECK(members(erasable.phi.source(), c.bounded) == "c");
    CHECK(members(erasable.phi.source(), c.erasable) == "c");

    const auto sink = parse_spec(R"({"alphabet":["a","b"],"rules":{"a":"ab","b":"b"},"seed":"a"})");
    c = classify(sink);
    CHECK(members(sink.phi.source(), c.bounded) == "b");
    CHECK(members(sink.phi.source(), c.erasable).empty());

    // b doubles on its own; mortal letters do not count towards growth.
    const auto mortal = parse_spec(R"({"alphabet":["a","b","c"],"rules":{"a":"abc","b":"bb","c":""},"seed":"a"})");
    c = classify(mortal);
    CHECK(members(mortal.phi.source(), c.growing) == "ab");
    const auto cycle = parse_spec(R"({"alphabet":["a","b","c","d"],"rules":{"a":"ab","b":"cd","c":"b","d":""},"seed":"a"})");
    CHECK(members(cycle.phi.source(), classify(cycle).bounded) == "bcd");
  }

  TEST_CASE("stripping erasable letters keeps the word") {
    const auto spec = fixtures::load("erasable");
    const auto stripped = strip_erasable(spec);
    CHECK(stripped.phi.source().size() == 2);
    const Alphabet& a = stripped.phi.source();
    CHECK(a.encode(stripped.phi.rule(0)) == "ab");
    CHECK(a.encode(stripped.phi.rule(1)) == "a");
    CHECK(prefix(stripped, 10000).substr(0, 10000) == prefix(spec, 10000).substr(0, 10000));

    const auto fib = fixtures::load("fibonacci");
    const auto same = strip_erasable(fib);
    CHECK(same.phi == fib.phi);
    CHECK(same.coding == fib.coding);

    const auto gone = parse_spec(
        R"({"alphabet":["a","b"],"rules":{"a":"ab","b":"ba"},"seed":"a","coding":{"a":"","b":""},"coding_alphabet":["a"]})");
    CHECK_THROWS_WITH_AS(strip_erasable(gone), doctest::Contains("SeedErasable"), Error);
  }

  TEST_CASE("unbounded powers") {
    FactorOracle bp(fixtures::load("bpowers"));
    const auto v = bounded_power_check(bp);
    REQUIRE(std::holds_alternative<FoundUnboundedPowers>(v));
    CHECK(bp.alphabet().encode(std::get<FoundUnboundedPowers>(v).base) == "b");
    FactorOracle fib(fixtures::load("fibonacci"));
    CHECK(std::holds_alternative<NoneWithinBudget>(bounded_power_check(fib)));
    CHECK(std::holds_alternative<NoneWithinBudget>(bounded_power_check(fib, 0)));
  }

  TEST_CASE("triples of the Fibonacci word") {
    FactorOracle raw(fixtures::load("fibonacci"));
    const auto t = build_triples(raw, Morphism::identity(raw.alphabet()));
    std::vector<std::string> words;
    for (const auto& w : t.words) words.push_back(raw.alphabet().encode(w));
    CHECK(words == std::vector<std::string>{"aa", "ab", "ba"});
    // psi mirrors phi on two-letter factors: [ab] -> [ab][ba] since phi(a) = ab, phi(b) starts with a.
    CHECK(t.psi.source().encode(t.psi.rule(1)) == "bc");
    CHECK(words[t.start] == "ab");
  }

  TEST_CASE("triples with a bounded interior") {
    FactorOracle raw(parse_spec(kBoundedC));
    const auto t = build_triples(raw, Morphism::identity(raw.alphabet()));
    std::vector<std::string> words;
    for (const auto& w : t.words) words.push_back(raw.alphabet().encode(w));
    CHECK(std::find(words.begin(), words.end(), "acb") != words.end());
    CHECK(words[t.start] == "acb");

    FactorOracle runs(parse_spec(kGrowingRuns));
    CHECK_THROWS_WITH_AS(build_triples(runs, Morphism::identity(runs.alphabet())),
                         doctest::Contains("UnboundedInterior"), Error);
  }

  TEST_CASE("triple morphisms follow the original word") {
    for (const std::string json : {std::string(kBoundedC), dump_spec(fixtures::load("fibonacci")),
                                   dump_spec(fixtures::load("tribonacci")), dump_spec(fixtures::load("thue_morse"))}) {
      const auto spec = parse_spec(json);
      FactorOracle raw(uncoded(spec));
      const Morphism h = Morphism::identity(raw.alphabet());
      const auto t = build_triples(raw, h);
      // Prefix agreement for n <= 8.
      Word phi_n(1, letter_char(raw.spec().seed));
      Word psi_n(1, letter_char(t.start));
      for (int n = 0; n <= 8; ++n) {
        const Word expected = h.apply(phi_n);
        CHECK(t.f.apply(psi_n).starts_with(expected));
        phi_n = raw.spec().phi.apply(phi_n);
        psi_n = t.psi.apply(psi_n);
      }
      // Every symbol grows and none is erased.
      const auto c = classify_letters(t.psi, t.f);
      CHECK(std::all_of(c.growing.begin(), c.growing.end(), [](bool g) { return g; }));
      CHECK(std::none_of(c.erasable.begin(), c.erasable.end(), [](bool e) { return e; }));
    }
  }

  TEST_CASE("primitive restriction") {
    for (const char* name : {"fibonacci", "erasable"}) {
      CAPTURE(name);
      const auto spec = fixtures::load(name);
      const auto r = primitivize(spec);
      CHECK(is_primitive(r.system.rho));
      CHECK(std::any_of(r.system.g.rules().begin(), r.system.g.rules().end(), [](const Word& w) { return !w.empty(); }));
      FactorOracle original(spec);
      FactorOracle reduced(r.system.spec(spec.prefix_budget));
      CHECK(same_factors(original, reduced, 100));
      CHECK(r.report(spec).find("# primitive: true") != std::string::npos);
    }

    const Alphabet x(std::vector<char32_t>{U'x'});
    const Alphabet a(std::vector<char32_t>{U'a'});
    TripleAlphabet sink{{Word{letter_char(0), letter_char(0)}}, Morphism(x, x, {x.decode("x")}),
                        Morphism(x, a, {a.decode("a")}), 0};
    CHECK_THROWS_WITH_AS(primitive_restriction(sink, 0), doctest::Contains("NoPrimitiveComponent"), Error);
  }

  TEST_CASE("uniform recurrence verdicts") {
    CHECK(std::holds_alternative<UrEvidence>(check_uniform_recurrence(fixtures::load("fibonacci"))));
    CHECK(std::holds_alternative<UrEvidence>(check_uniform_recurrence(fixtures::load("erasable"))));
    CHECK(std::holds_alternative<NotUr>(check_uniform_recurrence(fixtures::load("bpowers"))));
    CHECK(std::holds_alternative<NotUr>(check_uniform_recurrence(parse_spec(kGrowingRuns))));
    auto tiny = fixtures::load("fibonacci");
    tiny.prefix_budget = 8;
    CHECK(std::holds_alternative<UrUnknown>(check_uniform_recurrence(tiny)));
  }
}
