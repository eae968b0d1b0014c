#include "doctest.h"
#include "rauzy/scheme.hpp"
#include "rauzy/scheme_check.hpp"
#include "support.hpp"

using namespace rauzy;

namespace {

struct FibonacciScheme {
  FactorOracle oracle{fixtures::load("fibonacci")};
  Scheme scheme = scheme_from_rauzy_graph(build_rauzy_graph(oracle, 2), oracle);

  std::size_t e(std::uint32_t n) const { return *scheme.find_edge(EdgeNumber::scalar(n)); }
  std::string text(const Word& w) const { return oracle.alphabet().encode(w); }
};

}  // namespace

TEST_SUITE("scheme") {
  TEST_CASE("Fibonacci initial scheme") {
    FibonacciScheme f;
    const Scheme& s = f.scheme;
    REQUIRE(s.vertex_count() == 2);
    REQUIRE(s.edge_count() == 3);
    const auto& e1 = s.edge(f.e(1));
    const auto& e2 = s.edge(f.e(2));
    const auto& e3 = s.edge(f.e(3));
    CHECK(f.text(e1.front) == "aba");
    CHECK(f.text(e1.back) == "aba");
    CHECK(f.text(e2.front) == "ba");
    CHECK(f.text(e2.back) == "ab");
    CHECK(f.text(e3.front) == "aba");
    CHECK(f.text(e3.back) == "aba");
    CHECK(s.kind(e1.from) == VertexKind::Collecting);
    CHECK(s.kind(e1.to) == VertexKind::Distributing);
    CHECK(e2.from == e1.to);
    CHECK(e3.from == e1.to);
    CHECK(s.is_support(f.e(1)));
    CHECK(s.scale() == 3);
  }

  TEST_CASE("path words") {
    FibonacciScheme f;
    const Path p{{f.e(1), f.e(2), f.e(1)}};
    CHECK(is_valid_path(f.scheme, p));
    CHECK(is_symmetric(f.scheme, p));
    CHECK(f.text(front_word(f.scheme, p)) == "ababa");
    CHECK(front_length(f.scheme, p) == 5);
    CHECK(front_generators(f.scheme, p) == std::vector<std::size_t>{0, 1});
    CHECK(back_generators(f.scheme, p) == std::vector<std::size_t>{1, 2});
    CHECK_FALSE(is_valid_path(f.scheme, Path{{f.e(1), f.e(1)}}));
    CHECK_THROWS_AS(front_word(f.scheme, Path{{f.e(1), f.e(1)}}), Error);
  }

  TEST_CASE("natural extensions") {
    FibonacciScheme f;
    const Path e3{{f.e(3)}};
    CHECK(natural_extension_right(f.scheme, e3) == Path{{f.e(3), f.e(1)}});
    CHECK(natural_extension_left(f.scheme, e3) == Path{{f.e(1), f.e(3)}});
    CHECK(natural_extension_right(f.scheme, Path{{f.e(1)}}) == Path{{f.e(1)}});
    CHECK(surrounding_symmetric_path(f.scheme, f.e(2)) == Path{{f.e(1), f.e(2), f.e(1)}});
  }

  TEST_CASE("overlapping sub-path counts") {
    CHECK(count_subpath(Path{{1, 1}}, Path{{1, 1, 1}}) == 2);
    CHECK(count_subpath(Path{{2}}, Path{{0, 1, 0}}) == 0);
    CHECK(count_subpath(Path{{0, 1, 0}}, Path{{0, 1, 0, 1, 0}}) == 2);
  }

  TEST_CASE("properties of the initial schemes") {
    for (const char* name : {"fibonacci", "thue_morse", "tribonacci"}) {
      CAPTURE(name);
      FactorOracle o(fixtures::load(name));
      const auto s = scheme_from_rauzy_graph(build_rauzy_graph(o, choose_initial_k(o)), o);
      const auto report = check_scheme_properties(s, o);
      INFO(report.to_text());
      CHECK(report.all_passed());
      CHECK_FALSE(report[1].sampled);
      CHECK(report[3].sampled);
    }
  }

  TEST_CASE("fault injection is detected") {
    FibonacciScheme f;
    std::vector<SchemeEdge> edges = f.scheme.edges();
    Word& front = edges[f.e(3)].front;
    front.back() = letter_char(1 - index_of(front.back()));  // aba -> abb
    const Scheme mutated(f.scheme.kinds(), edges);
    const auto report = check_scheme_properties(mutated, f.oracle);
    CHECK_FALSE(report.all_passed());
    CHECK((!report[3].passed || !report[4].passed));
  }

  TEST_CASE("admissible right extension") {
    FibonacciScheme f;
    const Alphabet& a = f.oracle.alphabet();
    const Path l{{f.e(1)}};
    const Path p = extend_admissible_right(f.scheme, l, a.decode("ab"), f.oracle);
    CHECK(p.edges.front() == f.e(1));
    CHECK(f.text(front_word(f.scheme, p)).starts_with("abaab"));
    CHECK(extend_admissible_right(f.scheme, l, "", f.oracle) == l);
    CHECK_THROWS_AS(extend_admissible_right(f.scheme, l, a.decode("bb"), f.oracle), Error);
  }

  TEST_CASE("paths inside a word") {
    FibonacciScheme f;
    const Alphabet& a = f.oracle.alphabet();
    const auto inside = paths_within(f.scheme, a.decode("abaab"));
    CHECK(std::find(inside.begin(), inside.end(), Path{{f.e(1)}}) != inside.end());
    CHECK(paths_within(f.scheme, a.decode("ab")).empty());

    const Word big = a.decode("abaababa");
    const std::size_t l_max = f.scheme.max_word_length();
    CHECK(l_max == 3);
    const auto maximal = nonextendable_paths(f.scheme, big, 6);
    REQUIRE_FALSE(maximal.empty());
    for (const auto& s : maximal) CHECK(front_length(f.scheme, s) + 2 * l_max >= big.size());
  }

  TEST_CASE("fresh numbering ignores input order") {
    FibonacciScheme f;
    std::vector<SchemeEdge> edges(f.scheme.edges().rbegin(), f.scheme.edges().rend());
    for (std::size_t i = 0; i < edges.size(); ++i) edges[i].number = EdgeNumber::scalar(static_cast<std::uint32_t>(10 + i));
    const Scheme renamed = number_fresh_scheme(Scheme(f.scheme.kinds(), edges));
    CHECK(renamed.lighten().canonical() == f.scheme.lighten().canonical());
    for (std::uint32_t n = 1; n <= 3; ++n) {
      CHECK(renamed.edge(*renamed.find_edge(EdgeNumber::scalar(n))).front == f.scheme.edge(f.e(n)).front);
    }
  }

  TEST_CASE("scheme validation") {
    FibonacciScheme f;
    std::vector<SchemeEdge> edges = f.scheme.edges();
    edges[1].number = edges[0].number;
    CHECK_THROWS_WITH_AS(Scheme(f.scheme.kinds(), edges), doctest::Contains("NotScheme"), Error);
    std::vector<VertexKind> flipped = f.scheme.kinds();
    for (auto& k : flipped) k = k == VertexKind::Collecting ? VertexKind::Distributing : VertexKind::Collecting;
    CHECK_THROWS_AS(Scheme(flipped, f.scheme.edges()), Error);
  }

  TEST_CASE("exports") {
    FibonacciScheme f;
    const std::string json = scheme_to_json(f.scheme, f.oracle.alphabet());
    CHECK(json.find("\"front\"") != std::string::npos);
    CHECK(json.find("\"aba\"") != std::string::npos);
    const std::string dot = scheme_to_dot(f.scheme, f.oracle.alphabet());
    CHECK(dot.find("2:ba/ab") != std::string::npos);
  }

  TEST_CASE("light schemes") {
    FibonacciScheme f;
    CHECK(f.scheme.lighten().canonical() == "V 1d 2c E 1:2>1 2:1>2 3:1>2");
  }
}
