#include "doctest.h"
#include "rauzy/rauzy_graph.hpp"
#include "support.hpp"

using namespace rauzy;

namespace {

std::vector<std::string> names(const RauzyGraph& g, const std::vector<std::size_t>& vs, const Alphabet& a) {
  std::vector<std::string> out;
  for (auto v : vs) out.push_back(a.encode(g.vertices()[v]));
  return out;
}

}  // namespace

TEST_SUITE("rauzy") {
  TEST_CASE("Fibonacci G2") {
    FactorOracle o(fixtures::load("fibonacci"));
    const Alphabet& a = o.alphabet();
    const auto g = build_rauzy_graph(o, 2);
    CHECK(names(g, {0, 1, 2}, a) == std::vector<std::string>{"aa", "ab", "ba"});
    REQUIRE(g.edges().size() == 4);
    std::vector<std::string> edges;
    for (const auto& e : g.edges()) {
      edges.push_back(a.encode(e.word) + ":" + a.encode(g.vertices()[e.source]) + ">" +
                      a.encode(g.vertices()[e.target]));
    }
    CHECK(edges == std::vector<std::string>{"aab:aa>ab", "aba:ab>ba", "baa:ba>aa", "bab:ba>ab"});
    const auto shape = graph_shape(g);
    CHECK(shape.strongly_connected);
    CHECK_FALSE(shape.is_cycle);
    CHECK(names(g, shape.distributing, a) == std::vector<std::string>{"ba"});
    CHECK(names(g, shape.collecting, a) == std::vector<std::string>{"ab"});
    CHECK(shape.bidirectional.empty());
  }

  TEST_CASE("Fibonacci G1 and G3") {
    FactorOracle o(fixtures::load("fibonacci"));
    const auto g1 = build_rauzy_graph(o, 1);
    CHECK(g1.vertices().size() == 2);
    CHECK(g1.edges().size() == 3);
    CHECK(names(g1, graph_shape(g1).bidirectional, o.alphabet()) == std::vector<std::string>{"a"});
    const auto g3 = build_rauzy_graph(o, 3);
    CHECK(names(g3, graph_shape(g3).bidirectional, o.alphabet()) == std::vector<std::string>{"aba"});
  }

  TEST_CASE("periodic word gives a cycle") {
    FactorOracle o(fixtures::load("periodic"));
    const auto shape = graph_shape(build_rauzy_graph(o, 3));
    CHECK(shape.is_cycle);
    CHECK(shape.strongly_connected);
    CHECK_THROWS_WITH_AS(choose_initial_k(o, 8), doctest::Contains("NoValidOrder"), Error);
  }

  TEST_CASE("initial order") {
    FactorOracle fib(fixtures::load("fibonacci"));
    CHECK(choose_initial_k(fib) == 2);
    CHECK_THROWS_WITH_AS(choose_initial_k(fib, 0), doctest::Contains("NoValidOrder"), Error);

    // Degree audit: the chosen order is the least one with no bidirectional
    // fork and both kinds of fork present.
    FactorOracle tm(fixtures::load("thue_morse"));
    const std::size_t k = choose_initial_k(tm);
    CHECK(k == 5);
    for (std::size_t j = 1; j <= k; ++j) {
      const auto shape = graph_shape(build_rauzy_graph(tm, j));
      const bool valid = shape.bidirectional.empty() && !shape.distributing.empty() && !shape.collecting.empty();
      CHECK(valid == (j == k));
    }
  }

  TEST_CASE("graph degrees match factor extensions") {
    FactorOracle o(fixtures::load("tribonacci"));
    for (std::size_t k = 1; k <= 12; ++k) {
      const auto g = build_rauzy_graph(o, k);
      CHECK(g.vertices().size() == o.complexity(k));
      CHECK(g.edges().size() == o.complexity(k + 1));
      for (std::size_t v = 0; v < g.vertices().size(); ++v) {
        CHECK(g.in_degree(v) >= 1);
        CHECK(g.out_degree(v) >= 1);
      }
      CHECK(graph_shape(g).strongly_connected);
    }
  }

  TEST_CASE("DOT export") {
    FactorOracle o(fixtures::load("fibonacci"));
    const std::string dot = to_dot(build_rauzy_graph(o, 2), o.alphabet());
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("aab") != std::string::npos);
  }
}
