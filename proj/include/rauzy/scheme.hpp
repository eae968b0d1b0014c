#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rauzy/factor_oracle.hpp"
#include "rauzy/rauzy_graph.hpp"

namespace rauzy {

// Collecting: in-degree > 1, out-degree 1. Distributing: in-degree 1, out-degree > 1.
enum class VertexKind : std::uint8_t { Collecting, Distributing };

std::string_view to_string(VertexKind kind);

// Edge numbers are scalars, or pairs (i, j) for the edges created by an
// evolution step before renumbering. Scalars order before pairs.
struct EdgeNumber {
  std::uint32_t major = 0;
  std::uint32_t minor = 0;
  bool paired = false;

  static EdgeNumber scalar(std::uint32_t n) { return {n, 0, false}; }
  static EdgeNumber pair(std::uint32_t i, std::uint32_t j) { return {i, j, true}; }

  friend bool operator==(const EdgeNumber&, const EdgeNumber&) = default;
  friend std::strong_ordering operator<=>(const EdgeNumber& a, const EdgeNumber& b) {
    if (a.paired != b.paired) return a.paired ? std::strong_ordering::greater : std::strong_ordering::less;
    if (auto c = a.major <=> b.major; c != 0) return c;
    return a.minor <=> b.minor;
  }
  std::string to_string() const;
};

struct LightEdge {
  EdgeNumber number;
  std::size_t from = 0;
  std::size_t to = 0;
};

// A numbered scheme with its words erased.
struct LightScheme {
  std::vector<VertexKind> kinds;
  std::vector<LightEdge> edges;

  // Vertices renamed to the least number among their incoming edges, edges
  // listed by number. Two light schemes are equal iff their canonical forms are.
  std::string canonical() const;
};

struct SchemeEdge {
  EdgeNumber number;
  std::size_t from = 0;
  std::size_t to = 0;
  Word front;
  Word back;
};

// Graph with words: typed vertices, numbered edges carrying front and back words.
class Scheme {
 public:
  // Throws NotScheme when degrees disagree with kinds, numbers repeat, or the
  // graph is not strongly connected with at least two edges.
  Scheme(std::vector<VertexKind> kinds, std::vector<SchemeEdge> edges);

  std::size_t vertex_count() const { return kinds_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  VertexKind kind(std::size_t v) const { return kinds_[v]; }
  const std::vector<VertexKind>& kinds() const { return kinds_; }
  const std::vector<SchemeEdge>& edges() const { return edges_; }
  const SchemeEdge& edge(std::size_t e) const { return edges_[e]; }
  const std::vector<std::size_t>& out_edges(std::size_t v) const { return out_[v]; }
  const std::vector<std::size_t>& in_edges(std::size_t v) const { return in_[v]; }
  std::optional<std::size_t> find_edge(EdgeNumber number) const;

  bool is_support(std::size_t e) const {
    return kinds_[edges_[e].from] == VertexKind::Collecting && kinds_[edges_[e].to] == VertexKind::Distributing;
  }
  // Least front-word length over support edges.
  std::size_t scale() const;
  std::size_t max_word_length() const;
  LightScheme lighten() const;

 private:
  std::vector<VertexKind> kinds_;
  std::vector<SchemeEdge> edges_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
};

bool is_strongly_connected(std::size_t vertex_count, const std::vector<LightEdge>& edges);

// Sequence of edge indices (into Scheme::edges()).
struct Path {
  std::vector<std::size_t> edges;

  friend bool operator==(const Path&, const Path&) = default;
  friend auto operator<=>(const Path&, const Path&) = default;
};

bool is_valid_path(const Scheme& s, const Path& p);
// Starts at a collecting vertex and ends at a distributing one.
bool is_symmetric(const Scheme& s, const Path& p);

// Positions in p of the front generators (first edge and edges leaving
// distributing vertices) and back generators (edges entering collecting
// vertices and the last edge).
std::vector<std::size_t> front_generators(const Scheme& s, const Path& p);
std::vector<std::size_t> back_generators(const Scheme& s, const Path& p);

Word front_word(const Scheme& s, const Path& p);  // throws InvalidPath
Word back_word(const Scheme& s, const Path& p);   // throws InvalidPath
std::size_t front_length(const Scheme& s, const Path& p);

Path natural_extension_right(const Scheme& s, const Path& p);
Path natural_extension_left(const Scheme& s, const Path& p);

// The symmetric path obtained by extending a single edge both ways.
Path surrounding_symmetric_path(const Scheme& s, std::size_t edge);

// Number of (possibly overlapping) occurrences of needle as a contiguous
// edge subsequence of haystack.
std::size_t count_subpath(const Path& needle, const Path& haystack);

// All symmetric paths of 1..max_edges edges, in lexicographic order of edge
// numbers along the path. Stops after max_paths paths (the flag reports it).
struct PathSample {
  std::vector<Path> paths;
  bool truncated = false;
};
PathSample symmetric_paths(const Scheme& s, std::size_t max_edges, std::size_t max_paths = 200'000);

struct SchemeBuildOptions {
  std::size_t check_path_budget = 8;
  bool run_property_check = true;
};

// Scheme of the order-k Rauzy graph: vertices are the special vertices, edges
// the simple chains between them, words from natural extensions; numbered
// by number_fresh_scheme. Throws BispecialOrderConflict or NotScheme.
Scheme scheme_from_rauzy_graph(const RauzyGraph& graph, FactorOracle& oracle, SchemeBuildOptions options = {});

// Numbers edges 1..n by (source kind with collecting first, front word in
// shortlex order, back word in shortlex order). Throws AmbiguousNumbering on ties.
Scheme number_fresh_scheme(const Scheme& s);

// An admissible path beginning with l whose word begins with F(l)·suffix.
// Throws InconsistentInput when l is not admissible or F(l)·suffix is not a
// factor, NotFound when no such path has at most max_edges edges.
Path extend_admissible_right(const Scheme& s, const Path& l, std::string_view suffix, FactorOracle& oracle,
                             std::size_t max_edges = 64);

// Symmetric paths (at most max_edges edges) whose words are factors of a.
std::vector<Path> paths_within(const Scheme& s, std::string_view a, std::size_t max_edges = 12);
// The maximal elements of paths_within under the sub-path order.
std::vector<Path> nonextendable_paths(const Scheme& s, std::string_view a, std::size_t max_edges = 12);

std::string scheme_to_json(const Scheme& s, const Alphabet& alphabet);
std::string scheme_to_dot(const Scheme& s, const Alphabet& alphabet);

}  // namespace rauzy
