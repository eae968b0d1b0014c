#include "rauzy/scheme_check.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <unordered_set>

#include "rolling_hash.hpp"

namespace rauzy {

bool PropertyReport::all_passed() const {
  return std::all_of(results.begin(), results.end(), [](const PropertyResult& r) { return r.passed; });
}

std::string PropertyReport::to_text() const {
  std::ostringstream out;
  for (const auto& r : results) {
    out << "property " << r.property << ": " << (r.passed ? "pass" : "FAIL") << " ("
        << (r.sampled ? "sampled" : "exact") << ")";
    if (!r.detail.empty()) out << ' ' << r.detail;
    out << '\n';
  }
  return out.str();
}

namespace {

using hashing::PrefixHashes;

std::string path_text(const Scheme& s, const Path& p) {
  std::string out;
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    if (i > 0) out += ' ';
    out += s.edge(p.edges[i]).number.to_string();
  }
  return out;
}

bool contains_edge(const Path& p, std::size_t e) { return std::find(p.edges.begin(), p.edges.end(), e) != p.edges.end(); }

// The sampled symmetric paths with hashed front words and memoized admissibility.
class Sample {
 public:
  Sample(const Scheme& s, FactorOracle& oracle, std::vector<Path> paths) : s_(s), oracle_(oracle), paths_(std::move(paths)) {
    std::vector<std::uint64_t> edge_hash;
    for (const auto& e : s_.edges()) edge_hash.push_back(hashing::hash_of(e.front));
    for (std::size_t i = 0; i < paths_.size(); ++i) {
      index_.emplace(paths_[i], i);
      std::uint64_t h = 0;
      std::size_t len = 0;
      for (auto g : front_generators(s_, paths_[i])) {
        const auto e = paths_[i].edges[g];
        h = hashing::concat(h, edge_hash[e], s_.edge(e).front.size());
        len += s_.edge(e).front.size();
      }
      hash_.push_back(h);
      length_.push_back(len);
    }
    admissible_.resize(paths_.size());
    by_length_.resize(paths_.size());
    for (std::size_t i = 0; i < paths_.size(); ++i) by_length_[i] = i;
    std::stable_sort(by_length_.begin(), by_length_.end(), [&](auto a, auto b) { return length_[a] < length_[b]; });
  }

  std::size_t size() const { return paths_.size(); }
  const Path& path(std::size_t i) const { return paths_[i]; }
  std::size_t length(std::size_t i) const { return length_[i]; }
  std::uint64_t hash(std::size_t i) const { return hash_[i]; }
  // Path indices in ascending order of front word length.
  const std::vector<std::size_t>& by_length() const { return by_length_; }
  Word word(std::size_t i) const { return front_word(s_, paths_[i]); }

  // F(prefix) is a prefix of F(p) and B(suffix) a suffix of B(p), so an
  // inadmissible symmetric prefix or suffix settles p without the oracle.
  bool admissible(std::size_t i) {
    if (admissible_[i]) return *admissible_[i];
    const auto& edges = paths_[i].edges;
    bool ok = true;
    for (std::size_t j = edges.size() - 1; j >= 1 && ok; --j) {
      if (s_.kind(s_.edge(edges[j - 1]).to) != VertexKind::Distributing) continue;
      if (auto it = index_.find(Path{{edges.begin(), edges.begin() + static_cast<std::ptrdiff_t>(j)}}); it != index_.end()) {
        ok = admissible(it->second);
      }
      break;
    }
    for (std::size_t j = 1; j < edges.size() && ok; ++j) {
      if (s_.kind(s_.edge(edges[j]).from) != VertexKind::Collecting) continue;
      if (auto it = index_.find(Path{{edges.begin() + static_cast<std::ptrdiff_t>(j), edges.end()}}); it != index_.end()) {
        ok = admissible(it->second);
      }
      break;
    }
    if (ok) ok = oracle_.is_factor(word(i));
    admissible_[i] = ok;
    return ok;
  }

 private:
  const Scheme& s_;
  FactorOracle& oracle_;
  std::vector<Path> paths_;
  std::map<Path, std::size_t> index_;
  std::vector<std::uint64_t> hash_;
  std::vector<std::size_t> length_;
  std::vector<std::size_t> by_length_;
  std::vector<std::optional<bool>> admissible_;
};

// Occurrences of a fixed word in the walked text, kept in step with it.
struct Watch {
  std::uint64_t hash = 0;
  std::size_t length = 0;
  std::vector<std::size_t> positions;
};

// Front word of the current path, rebuilt incrementally as paths are visited
// in lexicographic order so that shared prefixes are spelled once.
class Walk {
 public:
  explicit Walk(const Scheme& s) : s_(s) {}

  std::vector<Watch> watches;

  const Word& text() const { return text_; }
  const PrefixHashes& hashes() const { return hashes_; }

  void move_to(const Path& p) {
    std::size_t common = 0;
    while (common < current_.size() && common < p.edges.size() && current_[common] == p.edges[common]) ++common;
    current_.resize(common);
    ends_.resize(common);
    truncate(common == 0 ? 0 : ends_.back());
    for (std::size_t i = common; i < p.edges.size(); ++i) {
      const auto e = p.edges[i];
      if (i == 0 || s_.kind(s_.edge(e).from) == VertexKind::Distributing) append(s_.edge(e).front);
      current_.push_back(e);
      ends_.push_back(text_.size());
    }
  }

 private:
  void truncate(std::size_t len) {
    text_.resize(len);
    hashes_.truncate(len);
    for (auto& w : watches) {
      while (!w.positions.empty() && w.positions.back() + w.length > len) w.positions.pop_back();
    }
  }
  void append(std::string_view block) {
    const std::size_t old = text_.size();
    text_ += block;
    hashes_.append(block);
    for (auto& w : watches) {
      if (text_.size() < w.length) continue;
      for (std::size_t pos = old + 1 > w.length ? old + 1 - w.length : 0; pos + w.length <= text_.size(); ++pos) {
        if (hashes_.window(pos, w.length) == w.hash) w.positions.push_back(pos);
      }
    }
  }

  const Scheme& s_;
  Word text_;
  PrefixHashes hashes_;
  std::vector<std::size_t> current_;
  std::vector<std::size_t> ends_;
};

PropertyResult check_connectivity(const Scheme& s) {
  PropertyResult r{1, true, false, {}};
  if (!is_strongly_connected(s.vertex_count(), s.lighten().edges)) {
    r.passed = false;
    r.detail = "graph is not strongly connected";
  }
  return r;
}

PropertyResult check_first_letters(const Scheme& s) {
  PropertyResult r{2, true, false, {}};
  for (std::size_t v = 0; v < s.vertex_count() && r.passed; ++v) {
    const bool dist = s.kind(v) == VertexKind::Distributing;
    const auto& edges = dist ? s.out_edges(v) : s.in_edges(v);
    std::unordered_set<Letter> seen;
    for (auto e : edges) {
      const Word& w = dist ? s.edge(e).front : s.edge(e).back;
      if (w.empty()) {
        r.passed = false;
        r.detail = "edge " + s.edge(e).number.to_string() + " has an empty word";
        break;
      }
      const Letter letter = dist ? w.front() : w.back();
      if (!seen.insert(letter).second) {
        r.passed = false;
        r.detail = std::string(dist ? "front words leaving" : "back words entering") + " the vertex of edge " +
                   s.edge(e).number.to_string() + " share a " + (dist ? "first" : "last") + " letter";
        break;
      }
    }
  }
  return r;
}

PropertyResult check_edge_words(const Scheme& s, FactorOracle& oracle) {
  PropertyResult r{5, true, false, {}};
  for (const auto& e : s.edges()) {
    if (!oracle.is_factor(e.front) || !oracle.is_factor(e.back)) {
      r.passed = false;
      r.detail = "a word of edge " + e.number.to_string() + " is not a factor";
      break;
    }
  }
  return r;
}

PropertyResult check_coverage(FactorOracle& oracle, Sample& sample, std::size_t cap) {
  PropertyResult r{6, true, true, "length " + std::to_string(cap)};
  const auto& factors = oracle.factors(cap);
  std::unordered_set<std::string_view> missing(factors.begin(), factors.end());
  for (auto i : sample.by_length()) {
    if (missing.empty()) break;
    if (sample.length(i) < cap) continue;
    const Word word = sample.word(i);
    const std::string_view w = word;
    std::vector<std::string_view> fresh;
    for (std::size_t p = 0; p + cap <= w.size(); ++p) {
      if (missing.count(w.substr(p, cap))) fresh.push_back(w.substr(p, cap));
    }
    if (fresh.empty() || !sample.admissible(i)) continue;
    for (auto f : fresh) missing.erase(f);
  }
  if (!missing.empty()) {
    r.passed = false;
    std::vector<std::string_view> left(missing.begin(), missing.end());
    r.detail += ", " + std::to_string(left.size()) + " factors not covered, e.g. " +
                oracle.alphabet().encode(Word(*std::min_element(left.begin(), left.end())));
  }
  return r;
}

// A word per edge such that admissible paths containing it pass the edge:
// F of the surrounding symmetric path, else the shortest admissible sampled path through the edge.
std::vector<std::optional<Word>> edge_witnesses(const Scheme& s, FactorOracle& oracle, Sample& sample) {
  std::vector<std::optional<Word>> out(s.edge_count());
  for (std::size_t e = 0; e < s.edge_count(); ++e) {
    Word around = front_word(s, surrounding_symmetric_path(s, e));
    if (oracle.is_factor(around)) {
      out[e] = std::move(around);
      continue;
    }
    for (auto i : sample.by_length()) {
      if (contains_edge(sample.path(i), e) && sample.admissible(i)) {
        out[e] = sample.word(i);
        break;
      }
    }
  }
  return out;
}

bool front_equals_back(const Scheme& s, const Path& p, std::string_view front) {
  std::size_t pos = 0;
  for (auto g : back_generators(s, p)) {
    const Word& b = s.edge(p.edges[g]).back;
    if (front.substr(pos, b.size()) != b) return false;
    pos += b.size();
  }
  return pos == front.size();
}

// Properties 3, 4 and 7 in one walk over the sample.
void check_paths(const Scheme& s, FactorOracle& oracle, Sample& sample, PropertyResult& p3, PropertyResult& p4,
                 PropertyResult& p7) {
  Walk walk(s);
  // Watches 0..E-1: front words of edges leaving collecting vertices (first blocks
  // of symmetric paths); E..2E-1: edge witnesses.
  const auto witnesses = edge_witnesses(s, oracle, sample);
  constexpr std::size_t kIdle = SIZE_MAX / 2;  // a watch that never matches
  for (std::size_t e = 0; e < s.edge_count(); ++e) {
    const Word& f = s.edge(e).front;
    const bool first = s.kind(s.edge(e).from) == VertexKind::Collecting;
    walk.watches.push_back({hashing::hash_of(f), first ? f.size() : kIdle, {}});
  }
  for (std::size_t e = 0; e < s.edge_count(); ++e) {
    if (!witnesses[e]) {
      p7.passed = false;
      p7.detail = "no admissible sampled path passes edge " + s.edge(e).number.to_string();
      walk.watches.push_back({0, kIdle, {}});
    } else {
      walk.watches.push_back({hashing::hash_of(*witnesses[e]), witnesses[e]->size(), {}});
    }
  }

  for (std::size_t b = 0; b < sample.size(); ++b) {
    const Path& p = sample.path(b);
    walk.move_to(p);
    const Word& text = walk.text();

    if (p3.passed && !front_equals_back(s, p, text)) {
      p3.passed = false;
      p3.detail = "F != B on path [" + path_text(s, p) + "]";
    }

    if (p4.passed) {
      for (auto a : sample.by_length()) {
        const auto len = sample.length(a);
        if (len > text.size()) break;
        const auto& starts = walk.watches[sample.path(a).edges.front()].positions;
        std::size_t words = 0;
        for (auto pos : starts) {
          if (pos + len <= text.size() && walk.hashes().window(pos, len) == sample.hash(a)) ++words;
        }
        if (words == 0) continue;
        const auto paths = count_subpath(sample.path(a), p);
        if (words > paths) words = count_occurrences(sample.word(a), text);  // confirm without hashing
        if (words > paths) {
          p4.passed = false;
          p4.detail = "F([" + path_text(s, sample.path(a)) + "]) occurs " + std::to_string(words) + " times in F([" +
                      path_text(s, p) + "]) but the path occurs " + std::to_string(paths) + " times";
          break;
        }
      }
    }

    if (p7.passed) {
      for (std::size_t e = 0; e < s.edge_count(); ++e) {
        if (walk.watches[s.edge_count() + e].positions.empty() || contains_edge(p, e)) continue;
        if (!sample.admissible(b)) continue;
        p7.passed = false;
        p7.detail = "admissible path [" + path_text(s, p) + "] contains the witness of edge " +
                    s.edge(e).number.to_string() + " without passing it";
        break;
      }
    }
    if (!p3.passed && !p4.passed && !p7.passed) break;
  }
}

}  // namespace

PropertyReport check_scheme_properties(const Scheme& s, FactorOracle& oracle, const CheckOptions& options) {
  PropertyReport report;
  auto drawn = symmetric_paths(s, options.path_budget, options.max_paths);
  const bool truncated = drawn.truncated;
  Sample sample(s, oracle, std::move(drawn.paths));

  report.results[0] = check_connectivity(s);
  report.results[1] = check_first_letters(s);
  report.results[2] = {3, true, true, {}};
  report.results[3] = {4, true, true, {}};
  report.results[6] = {7, true, true, {}};
  report.results[4] = check_edge_words(s, oracle);
  check_paths(s, oracle, sample, report.results[2], report.results[3], report.results[6]);
  const std::size_t cap = options.factor_cap != 0 ? options.factor_cap : std::min<std::size_t>(64, s.scale());
  report.results[5] = check_coverage(oracle, sample, cap);
  if (truncated) {
    for (auto& r : report.results) {
      if (r.sampled) r.detail += (r.detail.empty() ? "" : ", ") + std::string("sample truncated");
    }
  }
  return report;
}

}  // namespace rauzy
