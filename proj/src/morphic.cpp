#include "rauzy/morphic.hpp"

#include <algorithm>
#include <cmath>

namespace rauzy {

void MorphicWordSpec::validate() const {
  if (!phi.is_endomorphism()) throw Error(ErrorKind::NotEndomorphism, "phi must map A* to A*");
  if (seed >= phi.source().size()) throw Error(ErrorKind::InvalidSpec, "seed is not a letter of A");
  if (coding && !(coding->source() == phi.source())) {
    throw Error(ErrorKind::InvalidSpec, "coding must be defined on the alphabet of phi");
  }
  if (prefix_budget < 1) throw Error(ErrorKind::InvalidSpec, "prefix_budget must be positive");
}

Prolongation make_prolongable(const MorphicWordSpec& spec) {
  spec.validate();
  const auto n = spec.phi.source().size();
  auto first_letter = [&](std::size_t letter) -> std::size_t {
    const auto& image = spec.phi.rule(letter);
    if (image.empty()) {
      throw Error(ErrorKind::NotProlongable,
                  "first-letter map reaches erased letter '" + spec.phi.source().encode_letter(letter) + "'");
    }
    return index_of(image.front());
  };

  // Walk the first-letter map from the seed until it revisits a letter.
  std::vector<std::size_t> order;
  std::vector<std::size_t> position(n, n);
  std::size_t current = spec.seed;
  while (position[current] == n) {
    position[current] = order.size();
    order.push_back(current);
    current = first_letter(current);
  }
  const std::size_t cycle_start = position[current];
  const std::size_t cycle_length = order.size() - cycle_start;

  Prolongation out{spec, 1, false};
  if (position[spec.seed] >= cycle_start) {
    out.power = cycle_length;  // seed lies on the cycle
  } else {
    out.power = cycle_length;
    out.spec.seed = order[cycle_start];
    out.rewritten = true;
  }
  if (out.power != 1) {
    out.spec.phi = spec.phi.power(out.power);
    out.rewritten = true;
  }
  return out;
}

Word prefix(const MorphicWordSpec& spec, std::size_t min_len) {
  if (min_len > spec.prefix_budget) {
    throw Error(ErrorKind::BudgetExceeded, "requested prefix longer than prefix_budget");
  }
  auto prolonged = make_prolongable(spec);
  const auto& phi = prolonged.spec.phi;
  const auto letters = phi.source().size();

  Word raw(1, letter_char(prolonged.spec.seed));
  Word coded = prolonged.spec.code(raw);
  std::size_t stalls = 0;
  while (coded.size() < min_len) {
    Word next = phi.apply(raw);
    if (next.size() == raw.size()) {
      throw Error(ErrorKind::WordFinite, "the fixed point is a finite word");
    }
    Word next_coded = prolonged.spec.code(next);
    stalls = next_coded.size() == coded.size() ? stalls + 1 : 0;
    if (stalls > letters) throw Error(ErrorKind::WordFinite, "the coding erases all growth");
    raw = std::move(next);
    coded = std::move(next_coded);
    if (raw.size() > 64 * spec.prefix_budget + 64) {
      throw Error(ErrorKind::BudgetExceeded, "uncoded prefix outgrew the budget");
    }
  }
  return coded;
}

Word expand_letterwise(const Morphism& m, std::string_view word) {
  Word out;
  for (char c : word) {
    const auto i = index_of(c);
    if (i >= m.source().size()) throw Error(ErrorKind::UnknownLetter, "letter outside source alphabet");
    for (char d : m.rules()[i]) out.push_back(d);
  }
  return out;
}

std::vector<std::vector<double>> incidence_matrix(const Morphism& m) {
  const auto rows = m.target().size();
  const auto cols = m.source().size();
  std::vector<std::vector<double>> matrix(rows, std::vector<double>(cols, 0.0));
  for (std::size_t j = 0; j < cols; ++j) {
    for (char c : m.rule(j)) matrix[index_of(c)][j] += 1.0;
  }
  return matrix;
}

bool is_primitive(const Morphism& m) {
  if (!m.is_endomorphism()) throw Error(ErrorKind::NotEndomorphism, "primitivity needs an endomorphism");
  const auto n = m.source().size();
  using BoolMatrix = std::vector<std::vector<bool>>;
  BoolMatrix base(n, std::vector<bool>(n, false));
  for (std::size_t j = 0; j < n; ++j) {
    for (char c : m.rule(j)) base[index_of(c)][j] = true;
  }
  auto multiply = [n](const BoolMatrix& a, const BoolMatrix& b) {
    BoolMatrix out(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        if (!a[i][k]) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (b[k][j]) out[i][j] = true;
        }
      }
    }
    return out;
  };
  auto positive = [](const BoolMatrix& a) {
    return std::all_of(a.begin(), a.end(),
                       [](const auto& row) { return std::all_of(row.begin(), row.end(), [](bool x) { return x; }); });
  };
  BoolMatrix power = base;
  for (std::size_t k = 1; k <= n * n; ++k) {
    if (positive(power)) return true;
    power = multiply(power, base);
  }
  return false;
}

double growth_rate(const Morphism& m, double tolerance, std::size_t max_iterations) {
  if (!m.is_endomorphism()) throw Error(ErrorKind::NotEndomorphism, "growth rate needs an endomorphism");
  // Iterating M + I keeps the Perron root dominant even for periodic matrices;
  // its spectral radius is rho(M) + 1.
  auto matrix = incidence_matrix(m);
  const auto n = matrix.size();
  for (std::size_t i = 0; i < n; ++i) matrix[i][i] += 1.0;

  std::vector<double> v(n, 1.0);
  double estimate = 0.0;
  for (std::size_t it = 0; it < max_iterations; ++it) {
    std::vector<double> w(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) w[i] += matrix[i][j] * v[j];
    }
    double norm = 0.0;
    for (double x : w) norm = std::max(norm, x);
    if (norm == 0.0) return 0.0;
    for (auto& x : w) x /= norm;
    // v is normalised to max 1, so norm is the growth of the max entry.
    const double next = norm;
    v = std::move(w);
    if (it > 0 && std::abs(next - estimate) <= tolerance * std::abs(next)) {
      estimate = next;
      break;
    }
    estimate = next;
  }
  return estimate - 1.0;
}

std::vector<bool> reachable_letters(const Morphism& m, std::size_t from) {
  std::vector<bool> seen(m.source().size(), false);
  std::vector<std::size_t> stack{from};
  seen[from] = true;
  while (!stack.empty()) {
    auto letter = stack.back();
    stack.pop_back();
    for (char c : m.rule(letter)) {
      auto next = index_of(c);
      if (next < seen.size() && !seen[next]) {
        seen[next] = true;
        stack.push_back(next);
      }
    }
  }
  return seen;
}

}  // namespace rauzy
