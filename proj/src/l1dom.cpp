#include "fembed/l1dom.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "fembed/errors.hpp"

namespace fembed {

FiniteMetric SignedLineEmbedding::line_metric() const {
  const std::size_t n = leaves.size();
  std::vector<std::vector<Rational>> raw(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) raw[i][j] = abs(phi[i] - phi[j]);
  }
  return FiniteMetric::trusted(std::move(raw), leaves);
}

SignedLineEmbedding line_embedding_with_signs(const WeightedRootedTree& hst,
                                              std::vector<int> signs,
                                              const Rational& magnitude) {
  const FiniteMetric rho = hst_metric(hst);  // also validates the labels
  if (signs.size() != hst.size()) throw InvalidArgument("one sign per vertex required");
  SignedLineEmbedding out;
  out.magnitude = magnitude;
  out.signs = std::move(signs);
  out.signs[hst.root()] = 0;
  std::vector<Rational> position(hst.size());
  for (VertexIndex v : hst.preorder()) {
    const auto up = hst.parent(v);
    if (!up) continue;
    const int s = out.signs[v];
    if (s != 1 && s != -1) throw InvalidArgument("edge signs must be +1 or -1");
    position[v] = position[*up] + *hst.delta(*up) * magnitude * s;
  }
  for (VertexIndex v : hst.leaves()) {
    out.leaves.push_back(hst.id(v));
    out.phi.push_back(position[v]);
  }
  out.dominated = true;
  for (std::size_t i = 0; i < out.leaves.size() && out.dominated; ++i) {
    for (std::size_t j = i + 1; j < out.leaves.size(); ++j) {
      if (abs(out.phi[i] - out.phi[j]) > rho.dist(i, j)) {
        out.dominated = false;
        break;
      }
    }
  }
  return out;
}

namespace {

std::vector<int> draw_signs(const WeightedRootedTree& hst, Rng& rng) {
  std::vector<int> signs(hst.size(), 0);
  for (VertexIndex v : hst.preorder()) {
    if (hst.parent(v)) signs[v] = (rng() >> 63) ? 1 : -1;
  }
  return signs;
}

// Upper limit on distinct (position, offset) states per leaf pair.
constexpr std::size_t kStateBudget = std::size_t{1} << 22;

// E|c + sum_i s_i w_i| over independent uniform signs. Once |c| reaches the
// total of the remaining weights the sign of the sum is fixed and the
// expectation is |c|, which prunes almost everything on HST paths.
class AbsSumExpectation {
 public:
  explicit AbsSumExpectation(std::vector<Rational> weights) : weights_(std::move(weights)) {
    std::sort(weights_.begin(), weights_.end(), std::greater<>());
    suffix_.assign(weights_.size() + 1, Rational(0));
    for (std::size_t i = weights_.size(); i-- > 0;) suffix_[i] = suffix_[i + 1] + weights_[i];
  }

  std::optional<Rational> operator()() { return eval(0, Rational(0)); }

 private:
  std::optional<Rational> eval(std::size_t i, Rational c) {
    if (c < 0) c = -c;
    if (c >= suffix_[i]) return c;
    auto key = std::make_pair(i, c);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (memo_.size() >= kStateBudget) return std::nullopt;
    auto plus = eval(i + 1, c + weights_[i]);
    if (!plus) return std::nullopt;
    auto minus = eval(i + 1, c - weights_[i]);
    if (!minus) return std::nullopt;
    Rational value = (*plus + *minus) / 2;
    memo_.emplace(std::move(key), value);
    return value;
  }

  std::vector<Rational> weights_;
  std::vector<Rational> suffix_;
  std::map<std::pair<std::size_t, Rational>, Rational> memo_;
};

Rational expected_abs_sum(std::vector<Rational> weights, const std::string& x,
                          const std::string& y) {
  const std::size_t edges = weights.size();
  auto value = AbsSumExpectation(std::move(weights))();
  if (!value) {
    throw PathTooLong("leaf pair (" + x + ", " + y + ") over " + std::to_string(edges) +
                      " edges exceeds the enumeration budget");
  }
  return *value;
}

}  // namespace

SignedLineEmbedding sample_line_embedding(const WeightedRootedTree& hst, std::uint64_t seed,
                                          const Rational& magnitude) {
  Rng rng(seed);
  return line_embedding_with_signs(hst, draw_signs(hst, rng), magnitude);
}

FiniteMetric expected_line_metric(const WeightedRootedTree& hst, const Rational& magnitude) {
  FiniteMetric rho = hst_metric(hst);
  const auto leaves = hst.leaves();
  const std::size_t n = leaves.size();
  std::vector<std::vector<Rational>> raw(n, std::vector<Rational>(n, Rational(0)));
  std::vector<Rational> weights;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const VertexIndex top = lca_depth(hst, leaves[i], leaves[j]).lca;
      weights.clear();
      for (VertexIndex end : {leaves[i], leaves[j]}) {
        for (VertexIndex v = end; v != top; v = *hst.parent(v)) {
          weights.push_back(*hst.delta(*hst.parent(v)) * magnitude);
        }
      }
      if (weights.size() > kMaxPairEdges) {
        throw PathTooLong("leaf pair (" + hst.id(leaves[i]) + ", " + hst.id(leaves[j]) +
                          ") spans " + std::to_string(weights.size()) + " edges");
      }
      raw[i][j] = expected_abs_sum(weights, hst.id(leaves[i]), hst.id(leaves[j]));
      raw[j][i] = raw[i][j];
    }
  }
  return FiniteMetric::trusted(std::move(raw), rho.ids());
}

namespace {

std::optional<Rational> max_ratio(const FiniteMetric& top, const FiniteMetric& bottom) {
  Rational best = 0;
  for (std::size_t i = 0; i < top.size(); ++i) {
    for (std::size_t j = i + 1; j < top.size(); ++j) {
      const Rational& b = bottom.dist(bottom.index_of(top.id(i)), bottom.index_of(top.id(j)));
      if (b == 0) return std::nullopt;
      Rational r = top.dist(i, j) / b;
      if (r > best) best = r;
    }
  }
  return best;
}

}  // namespace

DominatedCombination monte_carlo_combination(const WeightedRootedTree& hst,
                                             std::size_t samples, std::uint64_t seed,
                                             const Rational& magnitude) {
  if (samples == 0) throw InvalidArgument("monte carlo mode needs at least one sample");
  const FiniteMetric rho = hst_metric(hst);
  Rng rng(seed);
  DominatedCombination out{{}, {}, rho, std::nullopt};
  std::size_t attempts = 0;
  while (out.components.size() < samples) {
    if (++attempts > 16 * samples) {
      throw InvalidArgument("too many non-dominated draws; the tree is not separated enough");
    }
    auto line = line_embedding_with_signs(hst, draw_signs(hst, rng), magnitude);
    if (!line.dominated) continue;
    out.components.push_back(line.line_metric());
  }
  const Rational weight(1, static_cast<unsigned long>(samples));
  const std::size_t n = rho.size();
  std::vector<std::vector<Rational>> raw(n, std::vector<Rational>(n, Rational(0)));
  for (const auto& component : out.components) {
    out.weights.push_back(weight);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) raw[i][j] += weight * component.dist(i, j);
    }
  }
  out.averaged = FiniteMetric::trusted(std::move(raw), rho.ids());
  out.equivalence_factor = max_ratio(rho, out.averaged);
  return out;
}

CertificateReport certify_l1dom(const FiniteMetric& rho, CertifyMode mode, std::size_t samples,
                                std::uint64_t seed) {
  WeightedRootedTree hst = ultrametric_to_k_hst(rho, 4);
  const FiniteMetric rho_hst = hst_metric(hst);
  FiniteMetric sigma = mode == CertifyMode::kExact
                           ? expected_line_metric(hst)
                           : monte_carlo_combination(hst, samples, seed).averaged;

  CertificateReport out{1, 1, 1, 1, true, true, hst, sigma, {}};
  Rational max_up = 0;    // rho / sigma
  Rational max_down = 0;  // sigma / rho
  Rational max_hst = 0;   // rho / rho_hst
  Rational max_line = 0;  // rho_hst / sigma
  bool have_pairs = false;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    for (std::size_t j = i + 1; j < rho.size(); ++j) {
      const PointIndex a = rho_hst.index_of(rho.id(i));
      const PointIndex b = rho_hst.index_of(rho.id(j));
      const Rational& original = rho.dist(i, j);
      const Rational& quantized = rho_hst.dist(a, b);
      const Rational& line = sigma.dist(a, b);
      if (line == 0) {
        throw InvalidArgument("averaged line metric collapses (" + rho.id(i) + ", " +
                              rho.id(j) + "); use more samples");
      }
      have_pairs = true;
      if (!(line <= quantized && quantized <= original)) out.dominated = false;
      Rational r = original / line;
      if (r > max_up) max_up = r;
      r = line / original;
      if (r > max_down) max_down = r;
      r = original / quantized;
      if (r > max_hst) max_hst = r;
      r = quantized / line;
      if (r > max_line) max_line = r;
      out.pairs.push_back({rho.id(i), rho.id(j), original, line});
    }
  }
  if (have_pairs) {
    out.factor = max_up;
    out.hst_factor = max_hst;
    out.line_factor = max_line;
    out.distortion = max_up * max_down;
  }
  out.within_bound = out.factor <= 16;
  return out;
}

}  // namespace fembed
