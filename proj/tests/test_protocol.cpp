#include <cmath>

#include "doctest.h"
#include "rauzy/protocol.hpp"
#include "support.hpp"

using namespace rauzy;

namespace {

Protocol evolve(FactorOracle& oracle, std::size_t steps, ProtocolOptions options = {}) {
  const Scheme s0 = scheme_from_rauzy_graph(build_rauzy_graph(oracle, choose_initial_k(oracle)), oracle);
  options.max_steps = steps;
  return run(oracle, s0, options);
}

// Least m with |lambda_out - lambda^m| small, or 0.
int matching_power(double lambda_out, double lambda) {
  const int m = static_cast<int>(std::lround(std::log(lambda_out) / std::log(lambda)));
  return m > 0 && std::abs(std::pow(lambda_out, 1.0 / m) - lambda) < 1e-3 ? m : 0;
}

}  // namespace

TEST_SUITE("protocol") {
  TEST_CASE("period detection on explicit state sequences") {
    using V = std::vector<std::string>;
    CHECK(detect_period(V{"a", "b", "a", "b"}) == Period{0, 2});
    CHECK(detect_period(V{"x", "a", "b", "a", "b"}) == Period{1, 2});
    CHECK(detect_period(V{"x", "a", "a"}) == Period{1, 1});
    CHECK(detect_period(V{"a", "b", "a", "b", "c", "c"}) == Period{4, 1});
    CHECK_THROWS_WITH_AS(detect_period(V{"a", "b", "c"}), doctest::Contains("NotFoundWithinBudget"), Error);
    CHECK_THROWS_AS(detect_period(V{"a"}), Error);
    // One full period is not enough.
    CHECK_THROWS_AS(detect_period(V{"x", "a", "b"}), Error);
  }

  TEST_CASE("Fibonacci protocol") {
    FactorOracle o(fixtures::load("fibonacci"));
    std::size_t seen = 0;
    ProtocolOptions options;
    options.on_entry = [&](const ProtocolEntry& e) { CHECK(e.step == seen++); };
    const auto p = evolve(o, 20, options);
    REQUIRE_FALSE(p.failure.has_value());
    CHECK(p.entries.size() == 20);
    CHECK(seen == 20);
    CHECK(detect_period(p) == Period{0, 2});
    CHECK_FALSE(light_replay_mismatch(p).has_value());
    for (std::size_t i = 1; i < p.entries.size(); ++i) CHECK(p.entries[i].scale > p.entries[i - 1].scale);
  }

  TEST_CASE("period snapshots") {
    FactorOracle trib(fixtures::load("tribonacci"));
    CHECK(detect_period(evolve(trib, 12)) == Period{0, 3});
    FactorOracle tm(fixtures::load("thue_morse"));
    CHECK(detect_period(evolve(tm, 24)) == Period{8, 8});
  }

  TEST_CASE("runs are deterministic") {
    FactorOracle a(fixtures::load("thue_morse"));
    FactorOracle b(fixtures::load("thue_morse"));
    const std::string first = evolve(a, 12).to_jsonl();
    CHECK(first == evolve(b, 12).to_jsonl());
    CHECK(std::count(first.begin(), first.end(), '\n') == 12);
  }

  TEST_CASE("extraction reproduces the Fibonacci word") {
    FactorOracle o(fixtures::load("fibonacci"));
    const auto p = evolve(o, 8);
    const auto system = extract_substitution(p, 0, 2, o.alphabet());
    CHECK(system.phi.source().size() == 3);
    CHECK(system.coding.target() == o.alphabet());
    CHECK(matching_power(growth_rate(system.phi), fixtures::golden_ratio()) == 2);
    const auto cmp = verify_language_equality(o, system, 200);
    CHECK(cmp.equal);
    CHECK_FALSE(cmp.closure_mode);
    CHECK_FALSE(cmp.first_difference.has_value());
  }

  TEST_CASE("extraction for Tribonacci and Thue-Morse") {
    FactorOracle trib(fixtures::load("tribonacci"));
    const auto pt = evolve(trib, 9);
    const auto st = extract_substitution(pt, 0, 3, trib.alphabet());
    CHECK(matching_power(growth_rate(st.phi), fixtures::tribonacci_constant()) == 3);
    CHECK(verify_language_equality(trib, st, 200).equal);

    FactorOracle tm(fixtures::load("thue_morse"));
    const auto pm = evolve(tm, 16);
    const auto sm = extract_substitution(pm, 8, 8, tm.alphabet());
    CHECK(matching_power(growth_rate(sm.phi), 2.0) == 2);
    CHECK(verify_language_equality(tm, sm, 200).equal);
  }

  TEST_CASE("extraction errors") {
    FactorOracle o(fixtures::load("fibonacci"));
    const auto p = evolve(o, 4);
    CHECK_THROWS_WITH_AS(extract_substitution(p, 3, 2, o.alphabet()), doctest::Contains("PeriodMismatch"), Error);
    CHECK_THROWS_WITH_AS(extract_substitution(p, 0, 0, o.alphabet()), doctest::Contains("InvalidSpec"), Error);
    ProtocolOptions keep_one;
    keep_one.retain_schemes = 1;
    const auto short_memory = evolve(o, 4, keep_one);
    CHECK(short_memory.schemes.size() <= 2);
    CHECK_THROWS_WITH_AS(extract_substitution(short_memory, 0, 2, o.alphabet()), doctest::Contains("InvalidSpec"),
                         Error);
  }

  TEST_CASE("a wrong system is told apart") {
    FactorOracle fib(fixtures::load("fibonacci"));
    const auto p = evolve(fib, 4);
    auto system = extract_substitution(p, 0, 2, fib.alphabet());
    FactorOracle tm(fixtures::load("thue_morse"));
    const auto cmp = verify_language_equality(tm, system, 20);
    CHECK_FALSE(cmp.equal);
    REQUIRE(cmp.first_difference.has_value());
    CHECK(*cmp.first_difference == 2);  // tm has bb, Fibonacci does not
  }

  TEST_CASE("closure mode for a non-prolongable system") {
    // x -> yxx with y erased: the first-letter map hits an erased letter.
    const Alphabet xy(std::vector<char32_t>{U'x', U'y'});
    FactorOracle source(parse_spec(R"({"alphabet":["a","b"],"rules":{"a":"aab","b":"aab"},"seed":"a"})"));
    const Alphabet& ab = source.alphabet();
    SubstitutionSystem system{Morphism(xy, xy, {xy.decode("yxx"), ""}),
                              Morphism(xy, ab, {ab.decode("a"), ab.decode("b")}), 0, 1};
    const auto cmp = verify_language_equality(source, system, 30);
    CHECK(cmp.closure_mode);
    CHECK(cmp.equal);
  }

  TEST_CASE("degenerate runs stop with the step recorded") {
    FactorOracle o(fixtures::load("fibonacci"));
    const auto p = evolve(o, 0);
    CHECK(p.entries.empty());
    CHECK(p.to_jsonl().empty());
    CHECK_FALSE(p.failure.has_value());

    FactorOracle tiny(parse_spec(R"({"alphabet":["a","b"],"rules":{"a":"ab","b":"a"},"seed":"a","prefix_budget":2000})"));
    const auto q = evolve(tiny, 30);
    REQUIRE(q.failure.has_value());
    CHECK(q.failure->kind == ErrorKind::BudgetExceeded);
    CHECK(q.failure->step == q.entries.size());
  }
}
