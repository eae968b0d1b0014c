#include <algorithm>
#include <map>

#include "rauzy/scheme.hpp"
#include "rauzy/scheme_check.hpp"

namespace rauzy {

namespace {

struct Chain {
  std::size_t from = 0;  // graph vertices
  std::size_t to = 0;
  std::vector<std::size_t> graph_edges;
};

// Word spelled by a walk of the Rauzy graph through the given chains.
Word walk_word(const RauzyGraph& graph, const std::vector<Chain>& chains, const Path& p) {
  Word out = graph.vertices()[chains[p.edges.front()].from];
  for (auto c : p.edges) {
    for (auto e : chains[c].graph_edges) out += graph.edges()[e].word.back();
  }
  return out;
}

}  // namespace

Scheme scheme_from_rauzy_graph(const RauzyGraph& graph, FactorOracle& oracle, SchemeBuildOptions options) {
  const auto shape = graph_shape(graph);
  if (!shape.bidirectional.empty()) {
    throw Error(ErrorKind::BispecialOrderConflict,
                "Rauzy graph of order " + std::to_string(graph.order()) + " has a vertex that is both a fork and a join");
  }
  if (!shape.strongly_connected || shape.is_cycle || shape.distributing.empty() || shape.collecting.empty()) {
    throw Error(ErrorKind::NotScheme, "Rauzy graph must be strongly connected and not a cycle");
  }

  std::map<std::size_t, std::size_t> special;  // graph vertex -> scheme vertex
  std::vector<VertexKind> kinds;
  for (std::size_t v = 0; v < graph.vertices().size(); ++v) {
    if (graph.out_degree(v) > 1) {
      special.emplace(v, kinds.size());
      kinds.push_back(VertexKind::Distributing);
    } else if (graph.in_degree(v) > 1) {
      special.emplace(v, kinds.size());
      kinds.push_back(VertexKind::Collecting);
    }
  }

  std::vector<Chain> chains;
  for (const auto& [v, _] : special) {
    for (auto first : graph.out_edges(v)) {
      Chain c{v, 0, {first}};
      std::size_t head = graph.edges()[first].target;
      while (!special.count(head)) {
        const auto next = graph.out_edges(head).front();
        c.graph_edges.push_back(next);
        head = graph.edges()[next].target;
      }
      c.to = head;
      chains.push_back(std::move(c));
    }
  }

  // Provisional scheme with placeholder words, used only to walk natural extensions.
  std::vector<SchemeEdge> provisional;
  for (std::size_t i = 0; i < chains.size(); ++i) {
    provisional.push_back({EdgeNumber::scalar(static_cast<std::uint32_t>(i + 1)), special.at(chains[i].from),
                           special.at(chains[i].to), {}, {}});
  }
  const Scheme shell(kinds, provisional);

  const std::size_t k = graph.order();
  std::vector<SchemeEdge> edges;
  for (std::size_t i = 0; i < shell.edge_count(); ++i) {
    SchemeEdge e = shell.edge(i);
    const auto right = natural_extension_right(shell, Path{{i}});
    Word front = walk_word(graph, chains, right);
    if (shell.kind(e.from) == VertexKind::Distributing) front.erase(0, k);
    const auto left = natural_extension_left(shell, Path{{i}});
    Word back = walk_word(graph, chains, left);
    if (shell.kind(e.to) == VertexKind::Collecting) back.resize(back.size() - k);
    e.front = std::move(front);
    e.back = std::move(back);
    edges.push_back(std::move(e));
  }
  Scheme scheme = number_fresh_scheme(Scheme(std::move(kinds), std::move(edges)));

  if (options.run_property_check) {
    CheckOptions check;
    check.path_budget = options.check_path_budget;
    const auto report = check_scheme_properties(scheme, oracle, check);
    if (!report.all_passed()) throw Error(ErrorKind::NotScheme, "property check failed:\n" + report.to_text());
  }
  return scheme;
}

}  // namespace rauzy
