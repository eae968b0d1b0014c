#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rauzy/factor_oracle.hpp"

namespace rauzy {

struct RauzyEdge {
  Word word;  // the length-(k+1) factor
  std::size_t source = 0;  // index of word[0, k)
  std::size_t target = 0;  // index of word[1, k+1)
};

// Order-k Rauzy graph. Vertices are the length-k factors and edges the
// length-(k+1) factors, both sorted in alphabet order.
class RauzyGraph {
 public:
  RauzyGraph(std::size_t order, std::vector<Word> vertices, std::vector<Word> edge_words);

  std::size_t order() const { return order_; }
  const std::vector<Word>& vertices() const { return vertices_; }
  const std::vector<RauzyEdge>& edges() const { return edges_; }
  const std::vector<std::size_t>& out_edges(std::size_t v) const { return out_[v]; }
  const std::vector<std::size_t>& in_edges(std::size_t v) const { return in_[v]; }
  std::size_t out_degree(std::size_t v) const { return out_[v].size(); }
  std::size_t in_degree(std::size_t v) const { return in_[v].size(); }
  std::size_t vertex_index(std::string_view word) const;

 private:
  std::size_t order_;
  std::vector<Word> vertices_;
  std::vector<RauzyEdge> edges_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
};

RauzyGraph build_rauzy_graph(FactorOracle& oracle, std::size_t k);

struct GraphShape {
  bool strongly_connected = false;
  bool is_cycle = false;
  std::vector<std::size_t> distributing;  // out-degree > 1
  std::vector<std::size_t> collecting;    // in-degree > 1
  std::vector<std::size_t> bidirectional;  // both
};

GraphShape graph_shape(const RauzyGraph& graph);

// Least k in [1, k_max] whose graph has no bidirectional fork and at least
// one distributing and one collecting vertex. Throws NoValidOrder.
std::size_t choose_initial_k(FactorOracle& oracle, std::size_t k_max = 64);

std::string to_dot(const RauzyGraph& graph, const Alphabet& alphabet);

}  // namespace rauzy
