#include "rauzy/scheme.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>

#include "json.hpp"

namespace rauzy {

std::string_view to_string(VertexKind kind) {
  return kind == VertexKind::Collecting ? "collecting" : "distributing";
}

std::string EdgeNumber::to_string() const {
  if (!paired) return std::to_string(major);
  return "(" + std::to_string(major) + "," + std::to_string(minor) + ")";
}

namespace {

nlohmann::ordered_json number_json(const EdgeNumber& n) {
  if (!n.paired) return n.major;
  return nlohmann::ordered_json::array({n.major, n.minor});
}

// Least incoming edge number per vertex.
std::vector<EdgeNumber> vertex_ids(std::size_t vertex_count, const std::vector<LightEdge>& edges) {
  std::vector<std::optional<EdgeNumber>> ids(vertex_count);
  for (const auto& e : edges) {
    if (!ids[e.to] || e.number < *ids[e.to]) ids[e.to] = e.number;
  }
  std::vector<EdgeNumber> out;
  out.reserve(vertex_count);
  for (const auto& id : ids) out.push_back(id.value_or(EdgeNumber::scalar(0)));
  return out;
}

std::string join_words(const std::vector<const Word*>& parts) {
  std::size_t total = 0;
  for (auto* p : parts) total += p->size();
  std::string out;
  out.reserve(total);
  for (auto* p : parts) out += *p;
  return out;
}

}  // namespace

std::string LightScheme::canonical() const {
  const auto ids = vertex_ids(kinds.size(), edges);
  std::vector<std::pair<EdgeNumber, VertexKind>> vertices;
  for (std::size_t v = 0; v < kinds.size(); ++v) vertices.emplace_back(ids[v], kinds[v]);
  std::sort(vertices.begin(), vertices.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<LightEdge> sorted = edges;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.number < b.number; });
  std::ostringstream out;
  out << "V";
  for (const auto& [id, kind] : vertices) out << ' ' << id.to_string() << (kind == VertexKind::Collecting ? 'c' : 'd');
  out << " E";
  for (const auto& e : sorted) {
    out << ' ' << e.number.to_string() << ':' << ids[e.from].to_string() << '>' << ids[e.to].to_string();
  }
  return out.str();
}

bool is_strongly_connected(std::size_t vertex_count, const std::vector<LightEdge>& edges) {
  if (vertex_count == 0) return false;
  auto sweep = [&](bool forward) {
    std::vector<std::vector<std::size_t>> adjacency(vertex_count);
    for (const auto& e : edges) {
      if (forward) {
        adjacency[e.from].push_back(e.to);
      } else {
        adjacency[e.to].push_back(e.from);
      }
    }
    std::vector<bool> seen(vertex_count, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (auto w : adjacency[v]) {
        if (!seen[w]) {
          seen[w] = true;
          ++count;
          stack.push_back(w);
        }
      }
    }
    return count == vertex_count;
  };
  return sweep(true) && sweep(false);
}

Scheme::Scheme(std::vector<VertexKind> kinds, std::vector<SchemeEdge> edges)
    : kinds_(std::move(kinds)), edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end(), [](const auto& a, const auto& b) { return a.number < b.number; });
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i].number == edges_[i - 1].number) {
      throw Error(ErrorKind::NotScheme, "edge number " + edges_[i].number.to_string() + " is used twice");
    }
  }
  out_.resize(kinds_.size());
  in_.resize(kinds_.size());
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (edges_[e].from >= kinds_.size() || edges_[e].to >= kinds_.size()) {
      throw Error(ErrorKind::NotScheme, "edge endpoint out of range");
    }
    out_[edges_[e].from].push_back(e);
    in_[edges_[e].to].push_back(e);
  }
  for (std::size_t v = 0; v < kinds_.size(); ++v) {
    const bool ok = kinds_[v] == VertexKind::Collecting ? (out_[v].size() == 1 && in_[v].size() > 1)
                                                        : (in_[v].size() == 1 && out_[v].size() > 1);
    if (!ok) {
      throw Error(ErrorKind::NotScheme, "vertex " + std::to_string(v) + " has degrees (" +
                                            std::to_string(in_[v].size()) + " in, " + std::to_string(out_[v].size()) +
                                            " out) that contradict its kind");
    }
  }
  if (edges_.size() < 2 || !is_strongly_connected(kinds_.size(), lighten().edges)) {
    throw Error(ErrorKind::NotScheme, "graph is not strongly connected with at least two edges");
  }
}

std::optional<std::size_t> Scheme::find_edge(EdgeNumber number) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), number,
                             [](const SchemeEdge& e, const EdgeNumber& n) { return e.number < n; });
  if (it == edges_.end() || it->number != number) return std::nullopt;
  return static_cast<std::size_t>(it - edges_.begin());
}

std::size_t Scheme::scale() const {
  std::optional<std::size_t> best;
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (is_support(e)) best = std::min(best.value_or(edges_[e].front.size()), edges_[e].front.size());
  }
  if (!best) throw Error(ErrorKind::NoSupportEdge, "scheme has no support edge");
  return *best;
}

std::size_t Scheme::max_word_length() const {
  std::size_t best = 0;
  for (const auto& e : edges_) best = std::max({best, e.front.size(), e.back.size()});
  return best;
}

LightScheme Scheme::lighten() const {
  LightScheme light;
  light.kinds = kinds_;
  light.edges.reserve(edges_.size());
  for (const auto& e : edges_) light.edges.push_back({e.number, e.from, e.to});
  return light;
}

bool is_valid_path(const Scheme& s, const Path& p) {
  if (p.edges.empty()) return false;
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    if (p.edges[i] >= s.edge_count()) return false;
    if (i > 0 && s.edge(p.edges[i - 1]).to != s.edge(p.edges[i]).from) return false;
  }
  return true;
}

bool is_symmetric(const Scheme& s, const Path& p) {
  return is_valid_path(s, p) && s.kind(s.edge(p.edges.front()).from) == VertexKind::Collecting &&
         s.kind(s.edge(p.edges.back()).to) == VertexKind::Distributing;
}

std::vector<std::size_t> front_generators(const Scheme& s, const Path& p) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    if (i == 0 || s.kind(s.edge(p.edges[i]).from) == VertexKind::Distributing) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> back_generators(const Scheme& s, const Path& p) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    if (i + 1 == p.edges.size() || s.kind(s.edge(p.edges[i]).to) == VertexKind::Collecting) out.push_back(i);
  }
  return out;
}

Word front_word(const Scheme& s, const Path& p) {
  if (!is_valid_path(s, p)) throw Error(ErrorKind::InvalidPath, "not a path of the scheme");
  std::vector<const Word*> parts;
  for (auto i : front_generators(s, p)) parts.push_back(&s.edge(p.edges[i]).front);
  return join_words(parts);
}

Word back_word(const Scheme& s, const Path& p) {
  if (!is_valid_path(s, p)) throw Error(ErrorKind::InvalidPath, "not a path of the scheme");
  std::vector<const Word*> parts;
  for (auto i : back_generators(s, p)) parts.push_back(&s.edge(p.edges[i]).back);
  return join_words(parts);
}

std::size_t front_length(const Scheme& s, const Path& p) {
  std::size_t total = 0;
  for (auto i : front_generators(s, p)) total += s.edge(p.edges[i]).front.size();
  return total;
}

Path natural_extension_right(const Scheme& s, const Path& p) {
  if (!is_valid_path(s, p)) throw Error(ErrorKind::InvalidPath, "not a path of the scheme");
  Path out = p;
  for (std::size_t guard = 0; s.kind(s.edge(out.edges.back()).to) == VertexKind::Collecting; ++guard) {
    if (guard > s.edge_count()) throw Error(ErrorKind::NotScheme, "no distributing vertex ahead");
    out.edges.push_back(s.out_edges(s.edge(out.edges.back()).to).front());
  }
  return out;
}

Path natural_extension_left(const Scheme& s, const Path& p) {
  if (!is_valid_path(s, p)) throw Error(ErrorKind::InvalidPath, "not a path of the scheme");
  std::vector<std::size_t> prefix;
  std::size_t start = s.edge(p.edges.front()).from;
  for (std::size_t guard = 0; s.kind(start) == VertexKind::Distributing; ++guard) {
    if (guard > s.edge_count()) throw Error(ErrorKind::NotScheme, "no collecting vertex behind");
    const auto e = s.in_edges(start).front();
    prefix.push_back(e);
    start = s.edge(e).from;
  }
  Path out;
  out.edges.assign(prefix.rbegin(), prefix.rend());
  out.edges.insert(out.edges.end(), p.edges.begin(), p.edges.end());
  return out;
}

Path surrounding_symmetric_path(const Scheme& s, std::size_t edge) {
  return natural_extension_left(s, natural_extension_right(s, Path{{edge}}));
}

std::size_t count_subpath(const Path& needle, const Path& haystack) {
  if (needle.edges.empty() || needle.edges.size() > haystack.edges.size()) return 0;
  std::size_t count = 0;
  for (std::size_t i = 0; i + needle.edges.size() <= haystack.edges.size(); ++i) {
    if (std::equal(needle.edges.begin(), needle.edges.end(), haystack.edges.begin() + static_cast<std::ptrdiff_t>(i))) {
      ++count;
    }
  }
  return count;
}

PathSample symmetric_paths(const Scheme& s, std::size_t max_edges, std::size_t max_paths) {
  PathSample sample;
  Path current;
  auto visit = [&](auto&& self, std::size_t vertex) -> void {
    if (sample.truncated) return;
    for (auto e : s.out_edges(vertex)) {
      current.edges.push_back(e);
      const auto head = s.edge(e).to;
      if (s.kind(head) == VertexKind::Distributing) {
        if (sample.paths.size() >= max_paths) {
          sample.truncated = true;
          current.edges.pop_back();
          return;
        }
        sample.paths.push_back(current);
      }
      if (current.edges.size() < max_edges) self(self, head);
      current.edges.pop_back();
      if (sample.truncated) return;
    }
  };
  for (std::size_t v = 0; v < s.vertex_count(); ++v) {
    if (s.kind(v) == VertexKind::Collecting) visit(visit, v);
  }
  std::sort(sample.paths.begin(), sample.paths.end());
  return sample;
}

Scheme number_fresh_scheme(const Scheme& s) {
  std::vector<std::size_t> order(s.edge_count());
  std::iota(order.begin(), order.end(), 0);
  auto key = [&](std::size_t e) {
    const auto& edge = s.edge(e);
    return std::make_tuple(s.kind(edge.from) == VertexKind::Collecting ? 0 : 1, edge.front.size(),
                           std::string_view(edge.front), edge.back.size(), std::string_view(edge.back));
  };
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return key(a) < key(b); });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (key(order[i - 1]) == key(order[i])) {
      throw Error(ErrorKind::AmbiguousNumbering, "two edges carry identical words and source kinds");
    }
  }
  std::vector<SchemeEdge> edges;
  edges.reserve(order.size());
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    SchemeEdge e = s.edge(order[rank]);
    e.number = EdgeNumber::scalar(static_cast<std::uint32_t>(rank + 1));
    edges.push_back(std::move(e));
  }
  return Scheme(s.kinds(), std::move(edges));
}

Path extend_admissible_right(const Scheme& s, const Path& l, std::string_view suffix, FactorOracle& oracle,
                             std::size_t max_edges) {
  if (!is_symmetric(s, l)) throw Error(ErrorKind::InconsistentInput, "starting path is not symmetric");
  const Word u = front_word(s, l);
  if (!oracle.is_factor(u)) throw Error(ErrorKind::InconsistentInput, "starting path is not admissible");
  if (suffix.empty()) return l;
  const Word target = u + Word(suffix);
  if (!oracle.is_factor(target)) throw Error(ErrorKind::InconsistentInput, "extended word is not a factor");

  std::optional<Path> found;
  Path current = l;
  auto compatible = [&](const Word& w) {
    const auto n = std::min(w.size(), target.size());
    return std::string_view(w).substr(0, n) == std::string_view(target).substr(0, n);
  };
  auto search = [&](auto&& self, Word word) -> void {
    if (found) return;
    const auto head = s.edge(current.edges.back()).to;
    if (word.size() >= target.size()) {
      // Front words only grow along an extension, so a non-factor prunes the branch.
      if (!oracle.is_factor(word)) return;
      if (s.kind(head) == VertexKind::Distributing) {
        found = current;
        return;
      }
    }
    if (current.edges.size() >= max_edges) return;
    for (auto e : s.out_edges(head)) {
      Word next = word;
      if (s.kind(head) == VertexKind::Distributing) next += s.edge(e).front;
      if (!compatible(next)) continue;
      current.edges.push_back(e);
      self(self, std::move(next));
      current.edges.pop_back();
      if (found) return;
    }
  };
  search(search, u);
  if (!found) throw Error(ErrorKind::NotFound, "no admissible extension within the edge budget");
  return *found;
}

std::vector<Path> paths_within(const Scheme& s, std::string_view a, std::size_t max_edges) {
  std::vector<Path> out;
  Path current;
  auto visit = [&](auto&& self, std::size_t vertex, const Word& word) -> void {
    for (auto e : s.out_edges(vertex)) {
      Word next = word;
      if (current.edges.empty() || s.kind(vertex) == VertexKind::Distributing) next += s.edge(e).front;
      if (a.find(next) == std::string_view::npos) continue;
      current.edges.push_back(e);
      const auto head = s.edge(e).to;
      if (s.kind(head) == VertexKind::Distributing) out.push_back(current);
      if (current.edges.size() < max_edges) self(self, head, next);
      current.edges.pop_back();
    }
  };
  for (std::size_t v = 0; v < s.vertex_count(); ++v) {
    if (s.kind(v) == VertexKind::Collecting) visit(visit, v, Word{});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Path> nonextendable_paths(const Scheme& s, std::string_view a, std::size_t max_edges) {
  const auto all = paths_within(s, a, max_edges);
  std::vector<Path> out;
  for (const auto& p : all) {
    const bool dominated = std::any_of(all.begin(), all.end(), [&](const Path& q) {
      return q.edges.size() > p.edges.size() && count_subpath(p, q) > 0;
    });
    if (!dominated) out.push_back(p);
  }
  return out;
}

std::string scheme_to_json(const Scheme& s, const Alphabet& alphabet) {
  using nlohmann::ordered_json;
  const auto light = s.lighten();
  const auto ids = vertex_ids(s.vertex_count(), light.edges);
  std::vector<std::size_t> order(s.vertex_count());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return ids[a] < ids[b]; });
  ordered_json doc;
  doc["vertices"] = ordered_json::array();
  for (auto v : order) {
    ordered_json vertex;
    vertex["id"] = number_json(ids[v]);
    vertex["kind"] = std::string(to_string(s.kind(v)));
    doc["vertices"].push_back(vertex);
  }
  doc["edges"] = ordered_json::array();
  for (const auto& e : s.edges()) {
    ordered_json edge;
    edge["number"] = number_json(e.number);
    edge["from"] = number_json(ids[e.from]);
    edge["to"] = number_json(ids[e.to]);
    edge["front"] = alphabet.encode(e.front);
    edge["back"] = alphabet.encode(e.back);
    doc["edges"].push_back(edge);
  }
  return doc.dump();
}

std::string scheme_to_dot(const Scheme& s, const Alphabet& alphabet) {
  const auto ids = vertex_ids(s.vertex_count(), s.lighten().edges);
  std::ostringstream out;
  out << "digraph scheme {\n";
  for (std::size_t v = 0; v < s.vertex_count(); ++v) {
    out << "  v" << v << " [label=\"" << ids[v].to_string() << "\", shape="
        << (s.kind(v) == VertexKind::Distributing ? "diamond" : "box") << "];\n";
  }
  for (const auto& e : s.edges()) {
    out << "  v" << e.from << " -> v" << e.to << " [label=\"" << e.number.to_string() << ':'
        << alphabet.encode(e.front) << '/' << alphabet.encode(e.back) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace rauzy
