#include "rauzy/rauzy_graph.hpp"

#include <algorithm>
#include <sstream>

namespace rauzy {

namespace {

std::vector<bool> reach(std::size_t count, std::size_t start,
                        const std::vector<std::vector<std::size_t>>& adjacency,
                        const std::vector<RauzyEdge>& edges, bool forward) {
  std::vector<bool> seen(count, false);
  std::vector<std::size_t> stack{start};
  seen[start] = true;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (auto e : adjacency[v]) {
      const auto next = forward ? edges[e].target : edges[e].source;
      if (!seen[next]) {
        seen[next] = true;
        stack.push_back(next);
      }
    }
  }
  return seen;
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

RauzyGraph::RauzyGraph(std::size_t order, std::vector<Word> vertices, std::vector<Word> edge_words)
    : order_(order), vertices_(std::move(vertices)) {
  std::sort(vertices_.begin(), vertices_.end());
  std::sort(edge_words.begin(), edge_words.end());
  out_.resize(vertices_.size());
  in_.resize(vertices_.size());
  edges_.reserve(edge_words.size());
  for (auto& w : edge_words) {
    if (w.size() != order_ + 1) throw Error(ErrorKind::InvalidSpec, "Rauzy edge has the wrong length");
    RauzyEdge e{std::move(w), 0, 0};
    e.source = vertex_index(std::string_view(e.word).substr(0, order_));
    e.target = vertex_index(std::string_view(e.word).substr(1));
    out_[e.source].push_back(edges_.size());
    in_[e.target].push_back(edges_.size());
    edges_.push_back(std::move(e));
  }
}

std::size_t RauzyGraph::vertex_index(std::string_view word) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), word,
                             [](const Word& a, std::string_view b) { return std::string_view(a) < b; });
  if (it == vertices_.end() || *it != word) {
    throw Error(ErrorKind::InvalidSpec, "edge endpoint is not a vertex of the Rauzy graph");
  }
  return static_cast<std::size_t>(it - vertices_.begin());
}

RauzyGraph build_rauzy_graph(FactorOracle& oracle, std::size_t k) {
  auto vertices = oracle.factors(k);
  auto edges = oracle.factors(k + 1);
  return RauzyGraph(k, std::move(vertices), std::move(edges));
}

GraphShape graph_shape(const RauzyGraph& graph) {
  GraphShape shape;
  const auto n = graph.vertices().size();
  if (n == 0) return shape;
  std::vector<std::vector<std::size_t>> out(n), in(n);
  for (std::size_t v = 0; v < n; ++v) {
    out[v] = graph.out_edges(v);
    in[v] = graph.in_edges(v);
  }
  const auto forward = reach(n, 0, out, graph.edges(), true);
  const auto backward = reach(n, 0, in, graph.edges(), false);
  shape.strongly_connected = std::all_of(forward.begin(), forward.end(), [](bool b) { return b; }) &&
                             std::all_of(backward.begin(), backward.end(), [](bool b) { return b; });
  bool all_simple = true;
  for (std::size_t v = 0; v < n; ++v) {
    const bool dist = graph.out_degree(v) > 1;
    const bool coll = graph.in_degree(v) > 1;
    if (dist) shape.distributing.push_back(v);
    if (coll) shape.collecting.push_back(v);
    if (dist && coll) shape.bidirectional.push_back(v);
    if (graph.out_degree(v) != 1 || graph.in_degree(v) != 1) all_simple = false;
  }
  shape.is_cycle = shape.strongly_connected && all_simple;
  return shape;
}

std::size_t choose_initial_k(FactorOracle& oracle, std::size_t k_max) {
  for (std::size_t k = 1; k <= k_max; ++k) {
    const auto shape = graph_shape(build_rauzy_graph(oracle, k));
    if (shape.bidirectional.empty() && !shape.distributing.empty() && !shape.collecting.empty()) return k;
  }
  throw Error(ErrorKind::NoValidOrder, "every order up to " + std::to_string(k_max) + " has a bidirectional fork");
}

std::string to_dot(const RauzyGraph& graph, const Alphabet& alphabet) {
  std::ostringstream out;
  out << "digraph rauzy_" << graph.order() << " {\n";
  for (std::size_t v = 0; v < graph.vertices().size(); ++v) {
    const bool dist = graph.out_degree(v) > 1;
    const bool coll = graph.in_degree(v) > 1;
    out << "  v" << v << " [label=\"" << dot_escape(alphabet.encode(graph.vertices()[v])) << "\"";
    if (dist && coll) {
      out << ", shape=doubleoctagon";
    } else if (dist) {
      out << ", shape=diamond";
    } else if (coll) {
      out << ", shape=box";
    }
    out << "];\n";
  }
  for (const auto& e : graph.edges()) {
    out << "  v" << e.source << " -> v" << e.target << " [label=\"" << dot_escape(alphabet.encode(e.word))
        << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace rauzy
