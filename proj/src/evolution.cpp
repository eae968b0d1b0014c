#include "rauzy/evolution.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace rauzy {

namespace {

// Structure of S' without words: edges sorted by number, atoms for word assembly.
struct Gadget {
  std::vector<VertexKind> kinds;
  std::vector<LightEdge> edges;
  std::vector<bool> good;
  std::vector<Monomial> front_atoms;
  std::vector<Monomial> back_atoms;
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::vector<std::size_t>> in;
};

// S'' structure: provisional numbers and the S' path behind each edge.
struct Contracted {
  std::vector<VertexKind> kinds;
  std::vector<LightEdge> edges;
  std::vector<std::vector<std::size_t>> paths;
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::vector<std::size_t>> in;
};

std::size_t light_support_index(const LightScheme& s, std::uint32_t support) {
  for (std::size_t e = 0; e < s.edges.size(); ++e) {
    const auto& edge = s.edges[e];
    if (edge.number == EdgeNumber::scalar(support)) {
      if (s.kinds[edge.from] != VertexKind::Collecting || s.kinds[edge.to] != VertexKind::Distributing) {
        throw Error(ErrorKind::InconsistentInput, "edge " + std::to_string(support) + " is not a support edge");
      }
      return e;
    }
  }
  throw Error(ErrorKind::InconsistentInput, "no edge numbered " + std::to_string(support));
}

Gadget build_gadget(const LightScheme& s, std::size_t support, const BadPairs& bad) {
  for (const auto& e : s.edges) {
    if (e.number.paired) throw Error(ErrorKind::InconsistentInput, "evolution needs scalar edge numbers");
  }
  const auto& v = s.edges[support];
  const auto c = v.from;
  const auto d = v.to;
  std::vector<std::size_t> xs, ys;
  for (std::size_t e = 0; e < s.edges.size(); ++e) {
    if (s.edges[e].to == c) xs.push_back(e);
    if (s.edges[e].from == d) ys.push_back(e);
  }
  auto by_number = [&](auto a, auto b) { return s.edges[a].number < s.edges[b].number; };
  std::sort(xs.begin(), xs.end(), by_number);
  std::sort(ys.begin(), ys.end(), by_number);
  for (const auto& [i, j] : bad) {
    const bool known_x = std::any_of(xs.begin(), xs.end(), [&](auto e) { return s.edges[e].number.major == i; });
    const bool known_y = std::any_of(ys.begin(), ys.end(), [&](auto e) { return s.edges[e].number.major == j; });
    if (!known_x || !known_y) {
      throw Error(ErrorKind::InconsistentInput,
                  "bad pair (" + std::to_string(i) + "," + std::to_string(j) + ") does not surround the support edge");
    }
  }

  Gadget g;
  std::vector<std::size_t> old_vertex(s.kinds.size(), SIZE_MAX);
  for (std::size_t w = 0; w < s.kinds.size(); ++w) {
    if (w == c || w == d) continue;
    old_vertex[w] = g.kinds.size();
    g.kinds.push_back(s.kinds[w]);
  }
  std::vector<std::size_t> a_vertex(s.edges.size(), SIZE_MAX), b_vertex(s.edges.size(), SIZE_MAX);
  for (auto x : xs) {
    a_vertex[x] = g.kinds.size();
    g.kinds.push_back(VertexKind::Distributing);
  }
  for (auto y : ys) {
    b_vertex[y] = g.kinds.size();
    g.kinds.push_back(VertexKind::Collecting);
  }

  const auto vnum = v.number.major;
  struct Pending {
    LightEdge edge;
    bool good;
    Monomial front;
    Monomial back;
  };
  std::vector<Pending> pending;
  for (std::size_t e = 0; e < s.edges.size(); ++e) {
    if (e == support) continue;
    const auto& edge = s.edges[e];
    const bool is_x = a_vertex[e] != SIZE_MAX;
    const bool is_y = b_vertex[e] != SIZE_MAX;
    const auto from = is_y ? b_vertex[e] : old_vertex[edge.from];
    const auto to = is_x ? a_vertex[e] : old_vertex[edge.to];
    Monomial front = is_y ? Monomial{vnum, edge.number.major} : Monomial{edge.number.major};
    Monomial back = is_x ? Monomial{edge.number.major, vnum} : Monomial{edge.number.major};
    pending.push_back({{edge.number, from, to}, true, std::move(front), std::move(back)});
  }
  for (auto x : xs) {
    for (auto y : ys) {
      const auto i = s.edges[x].number.major;
      const auto j = s.edges[y].number.major;
      pending.push_back({{EdgeNumber::pair(i, j), a_vertex[x], b_vertex[y]}, !bad.count({i, j}), {j}, {i}});
    }
  }
  std::sort(pending.begin(), pending.end(), [](const auto& a, const auto& b) { return a.edge.number < b.edge.number; });
  g.out.resize(g.kinds.size());
  g.in.resize(g.kinds.size());
  for (auto& p : pending) {
    g.out[p.edge.from].push_back(g.edges.size());
    g.in[p.edge.to].push_back(g.edges.size());
    g.edges.push_back(p.edge);
    g.good.push_back(p.good);
    g.front_atoms.push_back(std::move(p.front));
    g.back_atoms.push_back(std::move(p.back));
  }
  return g;
}

Contracted contract(const Gadget& g) {
  const auto n = g.kinds.size();
  std::vector<std::size_t> good_out(n, 0), good_in(n, 0);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (!g.good[e]) continue;
    ++good_out[g.edges[e].from];
    ++good_in[g.edges[e].to];
  }
  std::vector<std::size_t> index(n, SIZE_MAX);
  Contracted c;
  for (std::size_t w = 0; w < n; ++w) {
    if (good_out[w] == 0 || good_in[w] == 0) {
      throw Error(ErrorKind::DegenerateResult, "a vertex of S' has no good incoming or outgoing edge");
    }
    if (good_out[w] > 1 || good_in[w] > 1) {
      index[w] = c.kinds.size();
      c.kinds.push_back(g.kinds[w]);
    }
  }
  if (c.kinds.empty()) throw Error(ErrorKind::DegenerateResult, "no vertex survives the evolution");

  c.out.resize(c.kinds.size());
  c.in.resize(c.kinds.size());
  for (std::size_t w = 0; w < n; ++w) {
    if (index[w] == SIZE_MAX) continue;
    for (auto first : g.out[w]) {
      if (!g.good[first]) continue;
      std::vector<std::size_t> path{first};
      auto head = g.edges[first].to;
      while (index[head] == SIZE_MAX) {
        if (path.size() > g.edges.size()) throw Error(ErrorKind::DegenerateResult, "good edges close a plain cycle");
        const auto& outs = g.out[head];
        const auto next = *std::find_if(outs.begin(), outs.end(), [&](auto e) { return g.good[e]; });
        path.push_back(next);
        head = g.edges[next].to;
      }
      c.out[index[w]].push_back(c.edges.size());
      c.in[index[head]].push_back(c.edges.size());
      c.edges.push_back({g.edges[first].number, index[w], index[head]});
      c.paths.push_back(std::move(path));
    }
  }
  if (c.edges.size() < 2 || !is_strongly_connected(c.kinds.size(), c.edges)) {
    throw Error(ErrorKind::DegenerateResult, "S'' is not strongly connected");
  }
  return c;
}

// Atoms of a front (or back) word of the S'' edge e: the S' path of its
// natural right (left) extension, read through the S' generators.
Monomial front_monomial(const Gadget& g, const Contracted& c, std::size_t e) {
  std::vector<std::size_t> walk = c.paths[e];
  for (auto cur = e; c.kinds[c.edges[cur].to] == VertexKind::Collecting;) {
    cur = c.out[c.edges[cur].to].front();
    walk.insert(walk.end(), c.paths[cur].begin(), c.paths[cur].end());
    if (walk.size() > g.edges.size() * c.edges.size() + 1) throw Error(ErrorKind::DegenerateResult, "no distributing vertex ahead");
  }
  Monomial out;
  for (std::size_t i = 0; i < walk.size(); ++i) {
    if (i == 0 || g.kinds[g.edges[walk[i]].from] == VertexKind::Distributing) {
      const auto& atoms = g.front_atoms[walk[i]];
      out.insert(out.end(), atoms.begin(), atoms.end());
    }
  }
  return out;
}

Monomial back_monomial(const Gadget& g, const Contracted& c, std::size_t e) {
  std::vector<std::size_t> walk = c.paths[e];
  for (auto cur = e; c.kinds[c.edges[cur].from] == VertexKind::Distributing;) {
    cur = c.in[c.edges[cur].from].front();
    walk.insert(walk.begin(), c.paths[cur].begin(), c.paths[cur].end());
    if (walk.size() > g.edges.size() * c.edges.size() + 1) throw Error(ErrorKind::DegenerateResult, "no collecting vertex behind");
  }
  Monomial out;
  for (std::size_t i = 0; i < walk.size(); ++i) {
    if (i + 1 == walk.size() || g.kinds[g.edges[walk[i]].to] == VertexKind::Collecting) {
      const auto& atoms = g.back_atoms[walk[i]];
      out.insert(out.end(), atoms.begin(), atoms.end());
    }
  }
  return out;
}

Word expand(const Scheme& s, const Monomial& atoms, bool front) {
  std::size_t total = 0;
  std::vector<const Word*> parts;
  for (auto a : atoms) {
    const auto e = s.find_edge(EdgeNumber::scalar(a));
    const Word& w = front ? s.edge(*e).front : s.edge(*e).back;
    parts.push_back(&w);
    total += w.size();
  }
  Word out;
  out.reserve(total);
  for (auto* p : parts) out += *p;
  return out;
}

nlohmann::ordered_json number_json(const EdgeNumber& n) {
  if (!n.paired) return n.major;
  return nlohmann::ordered_json::array({n.major, n.minor});
}

}  // namespace

std::vector<std::size_t> support_edges(const Scheme& s) {
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < s.edge_count(); ++e) {
    if (s.is_support(e)) out.push_back(e);
  }
  if (out.empty()) throw Error(ErrorKind::NoSupportEdge, "scheme has no support edge");
  return out;
}

SupportContext support_context(const Scheme& s, std::size_t support) {
  if (support >= s.edge_count() || !s.is_support(support)) {
    throw Error(ErrorKind::InconsistentInput, "not a support edge");
  }
  return {support, s.in_edges(s.edge(support).from), s.out_edges(s.edge(support).to)};
}

BadPairs bad_pairs(const Scheme& s, std::size_t support, FactorOracle& oracle) {
  const auto ctx = support_context(s, support);
  const Word& v = s.edge(support).front;
  BadPairs bad;
  for (auto x : ctx.incoming) {
    for (auto y : ctx.outgoing) {
      const Word& xw = s.edge(x).back;
      const Word& yw = s.edge(y).front;
      Word probe;
      probe.reserve(xw.size() + v.size() + yw.size());
      probe += xw;
      probe += v;
      probe += yw;
      if (!oracle.is_factor(probe)) bad.emplace(s.edge(x).number.major, s.edge(y).number.major);
    }
  }
  return bad;
}

Evolution elementary_evolution(const Scheme& s, std::size_t support, FactorOracle& oracle) {
  return elementary_evolution(s, support, bad_pairs(s, support, oracle));
}

Evolution elementary_evolution(const Scheme& s, std::size_t support, const BadPairs& bad) {
  support_context(s, support);
  const auto g = build_gadget(s.lighten(), support, bad);
  const auto c = contract(g);

  std::vector<SchemeEdge> prime_edges;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    prime_edges.push_back({g.edges[e].number, g.edges[e].from, g.edges[e].to, expand(s, g.front_atoms[e], true),
                           expand(s, g.back_atoms[e], false)});
  }

  std::vector<SchemeEdge> next_edges;
  std::vector<Monomial> monomials;
  for (std::size_t e = 0; e < c.edges.size(); ++e) {
    auto front = front_monomial(g, c, e);
    next_edges.push_back({c.edges[e].number, c.edges[e].from, c.edges[e].to, expand(s, front, true),
                          expand(s, back_monomial(g, c, e), false)});
    monomials.push_back(std::move(front));
  }
  // Scheme sorts edges by number; keep monomials and paths aligned with it.
  std::vector<std::size_t> order(c.edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return c.edges[a].number < c.edges[b].number; });
  std::vector<Monomial> sorted_monomials;
  std::vector<std::vector<std::size_t>> sorted_paths;
  for (auto i : order) {
    sorted_monomials.push_back(std::move(monomials[i]));
    sorted_paths.push_back(c.paths[i]);
  }

  try {
    IntermediateScheme prime{Scheme(g.kinds, std::move(prime_edges)), g.good};
    return Evolution{std::move(prime), Scheme(c.kinds, std::move(next_edges)), std::move(sorted_monomials),
                     std::move(sorted_paths)};
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotScheme) throw;
    throw Error(ErrorKind::DegenerateResult, e.what());
  }
}

LightScheme renumber(const LightScheme& s) {
  LightScheme out = s;
  std::sort(out.edges.begin(), out.edges.end(), [](const auto& a, const auto& b) { return a.number < b.number; });
  for (std::size_t i = 0; i < out.edges.size(); ++i) out.edges[i].number = EdgeNumber::scalar(static_cast<std::uint32_t>(i + 1));
  return out;
}

Scheme renumber(const Scheme& s) {
  auto edges = s.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) edges[i].number = EdgeNumber::scalar(static_cast<std::uint32_t>(i + 1));
  return Scheme(s.kinds(), std::move(edges));
}

std::string ProtocolEntry::state() const {
  std::ostringstream out;
  out << scheme.canonical() << " S " << support << " B";
  for (const auto& [i, j] : bad_pairs) out << ' ' << i << ',' << j;
  return out.str();
}

std::string ProtocolEntry::to_json() const {
  using nlohmann::ordered_json;
  // Vertex ids are the least incoming edge number.
  std::vector<std::optional<EdgeNumber>> ids(scheme.kinds.size());
  for (const auto& e : scheme.edges) {
    if (!ids[e.to] || e.number < *ids[e.to]) ids[e.to] = e.number;
  }
  std::vector<std::size_t> vorder(scheme.kinds.size());
  std::iota(vorder.begin(), vorder.end(), 0);
  std::sort(vorder.begin(), vorder.end(), [&](auto a, auto b) { return *ids[a] < *ids[b]; });
  ordered_json doc;
  doc["step"] = step;
  ordered_json vertices = ordered_json::array();
  for (auto v : vorder) {
    vertices.push_back({{"id", number_json(*ids[v])}, {"kind", std::string(to_string(scheme.kinds[v]))}});
  }
  auto edges_sorted = scheme.edges;
  std::sort(edges_sorted.begin(), edges_sorted.end(), [](const auto& a, const auto& b) { return a.number < b.number; });
  ordered_json edges = ordered_json::array();
  for (const auto& e : edges_sorted) {
    edges.push_back({{"number", number_json(e.number)}, {"from", number_json(*ids[e.from])}, {"to", number_json(*ids[e.to])}});
  }
  doc["scheme"] = {{"vertices", vertices}, {"edges", edges}};
  doc["support"] = support;
  ordered_json bad = ordered_json::array();
  for (const auto& [i, j] : bad_pairs) bad.push_back({i, j});
  doc["bad_pairs"] = bad;
  ordered_json mono = ordered_json::object();
  for (std::size_t i = 0; i < monomials.size(); ++i) mono[std::to_string(i + 1)] = monomials[i];
  doc["monomials"] = mono;
  doc["scale"] = scale;
  doc["edge_word_lengths"] = edge_word_lengths;
  return doc.dump();
}

Step deterministic_step(const Scheme& s, FactorOracle& oracle, std::size_t step) {
  const auto support = support_edges(s).front();
  auto bad = bad_pairs(s, support, oracle);
  auto evo = elementary_evolution(s, support, bad);

  ProtocolEntry entry;
  entry.step = step;
  entry.scheme = s.lighten();
  entry.support = s.edge(support).number.major;
  entry.bad_pairs = std::move(bad);
  entry.monomials = std::move(evo.monomials);
  entry.scale = s.scale();
  for (const auto& e : s.edges()) entry.edge_word_lengths.push_back(e.front.size());
  return Step{renumber(evo.next), std::move(entry)};
}

LightScheme light_evolve(const LightScheme& s, std::uint32_t support, const BadPairs& bad) {
  LightScheme sorted = s;
  std::sort(sorted.edges.begin(), sorted.edges.end(), [](const auto& a, const auto& b) { return a.number < b.number; });
  const auto index = light_support_index(sorted, support);
  const auto c = contract(build_gadget(sorted, index, bad));
  return renumber(LightScheme{c.kinds, c.edges});
}

}  // namespace rauzy
