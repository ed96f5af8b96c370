#include "fembed/construction.hpp"

#include <bit>
#include <cmath>

#include "fembed/errors.hpp"

namespace fembed {

namespace {

std::string bits(std::size_t value, int width) {
  std::string out(static_cast<std::size_t>(width), '0');
  for (int i = 0; i < width; ++i) {
    if ((value >> (width - 1 - i)) & 1u) out[static_cast<std::size_t>(i)] = '1';
  }
  return out;
}

// Powers k^{-l} for l = 0..h.
std::vector<Rational> level_labels(int h, const Rational& k) {
  std::vector<Rational> out;
  Rational value = 1;
  for (int l = 0; l <= h; ++l) {
    out.push_back(value);
    value /= k;
  }
  return out;
}

// Depth of the lca of two leaves of the height-h complete binary tree.
int lca_level(std::size_t a, std::size_t b, int h) {
  if (a == b) return h;
  return h - std::bit_width(a ^ b);
}

void check_tree_params(int h, const Rational& k) {
  if (h < 1 || h > 20) throw ParameterOutOfRange("h must lie in [1, 20]");
  if (k <= 1) throw ParameterOutOfRange("k must exceed 1");
}

WeightedRootedTree binary_tree(int h, const Rational& k) {
  const auto labels = level_labels(h, k);
  WeightedRootedTree::EdgeList edges;
  std::map<std::string, Rational> delta;
  delta.emplace("r", labels[0]);
  // Preorder so that the "0" child precedes the "1" child everywhere.
  std::vector<std::string> stack{""};
  while (!stack.empty()) {
    std::string prefix = stack.back();
    stack.pop_back();
    if (static_cast<int>(prefix.size()) == h) continue;
    const std::string self = prefix.empty() ? "r" : prefix;
    for (const char* bit : {"1", "0"}) {
      const std::string child = prefix + bit;
      stack.push_back(child);
      if (static_cast<int>(child.size()) < h) delta.emplace(child, labels[child.size()]);
    }
    edges.emplace_back(self, prefix + "0");
    edges.emplace_back(self, prefix + "1");
  }
  return WeightedRootedTree::from_edges("r", edges, std::move(delta), k);
}

}  // namespace

LeafSpace build_X(int h, const Rational& k) {
  check_tree_params(h, k);
  const std::size_t leaves = std::size_t{1} << h;
  if (leaves > kMaxMetricPoints) {
    throw ParameterOutOfRange("2^h leaves exceed the dense metric limit");
  }
  WeightedRootedTree tree = binary_tree(h, k);
  const auto labels = level_labels(h, k);
  std::vector<std::vector<Rational>> raw(leaves, std::vector<Rational>(leaves));
  std::vector<std::string> ids;
  for (std::size_t a = 0; a < leaves; ++a) {
    ids.push_back(bits(a, h));
    for (std::size_t b = 0; b < leaves; ++b) {
      raw[a][b] = a == b ? Rational(0) : labels[static_cast<std::size_t>(lca_level(a, b, h))];
    }
  }
  return {std::move(tree), FiniteMetric::trusted(std::move(raw), std::move(ids))};
}

LineSpace build_Y(int m, const Rational& eps) {
  if (m < 2 || m > 32) throw ParameterOutOfRange("m must lie in [2, 32]");
  if (eps <= 0) throw ParameterOutOfRange("eps must be positive");
  std::vector<Rational> values;
  Rational partial = 0;
  Rational term = 1;
  for (int j = 0; j < m; ++j) {
    partial += term;
    term /= 4;
    values.push_back(eps * partial);
  }
  const auto size = static_cast<std::size_t>(m);
  std::vector<std::vector<Rational>> raw(size, std::vector<Rational>(size));
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < size; ++i) {
    ids.push_back("y" + std::to_string(i));
    for (std::size_t j = 0; j < size; ++j) raw[i][j] = abs(values[i] - values[j]);
  }
  return {values, FiniteMetric::trusted(std::move(raw), std::move(ids))};
}

ZSpace::ZSpace(int h, int m, Rational k, Rational eps, WeightedRootedTree tree,
               std::vector<Rational> y_values, FiniteMetric metric, Rational diam_y,
               std::vector<std::string> warnings)
    : h_(h),
      m_(m),
      k_(std::move(k)),
      eps_(std::move(eps)),
      tree_(std::move(tree)),
      y_values_(std::move(y_values)),
      metric_(std::move(metric)),
      diam_y_(std::move(diam_y)),
      warnings_(std::move(warnings)) {}

std::string ZSpace::leaf_id(std::size_t leaf) const { return bits(leaf, h_); }

std::string ZSpace::point_id(std::size_t leaf, std::size_t j) const {
  return leaf_id(leaf) + ":" + std::to_string(j);
}

bool ZSpace::in_gamma_regime() const {
  return k_ >= 4 && pow_int(k_, -h_) >= eps_;
}

std::pair<std::size_t, std::size_t> ZSpace::leaf_range(VertexIndex v) const {
  const std::string& id = tree_.id(v);
  const std::string prefix = id == "r" ? "" : id;
  const int below = h_ - static_cast<int>(prefix.size());
  std::size_t value = 0;
  for (char c : prefix) value = value * 2 + (c == '1' ? 1 : 0);
  const std::size_t first = value << below;
  return {first, first + (std::size_t{1} << below)};
}

Rational ZSpace::leaf_distance(std::size_t a, std::size_t b) const {
  if (a == b) return 0;
  return pow_int(k_, -lca_level(a, b, h_));
}

ZSpace build_Z(int h, const Rational& k, int m, const Rational& eps) {
  check_tree_params(h, k);
  LineSpace line = build_Y(m, eps);
  const std::size_t leaves = std::size_t{1} << h;
  const auto tail = static_cast<std::size_t>(m);
  const std::size_t n = leaves * tail;
  if (n > kMaxMetricPoints) {
    throw ParameterOutOfRange("2^h * m = " + std::to_string(n) +
                              " exceeds the dense metric limit");
  }
  std::vector<std::string> warnings;
  if (k < 4) warnings.push_back("k < 4: outside the regime of the tail-weight bound");
  if (pow_int(k, -h) < eps) {
    warnings.push_back("k^{-h} < eps: outside the regime of the tail-weight bound");
  }

  const auto labels = level_labels(h, k);
  const auto& y = line.values;
  std::vector<Rational> lift(tail);  // d_Y(y_j, y_0)
  for (std::size_t j = 0; j < tail; ++j) lift[j] = y[j] - y[0];

  std::vector<std::vector<Rational>> raw(n, std::vector<Rational>(n));
  std::vector<std::string> ids;
  ids.reserve(n);
  for (std::size_t a = 0; a < leaves; ++a) {
    const std::string leaf = bits(a, h);
    for (std::size_t i = 0; i < tail; ++i) {
      ids.push_back(leaf + ":" + std::to_string(i));
      const std::size_t row = a * tail + i;
      for (std::size_t b = 0; b < leaves; ++b) {
        for (std::size_t j = 0; j < tail; ++j) {
          const std::size_t col = b * tail + j;
          if (a == b) {
            raw[row][col] = abs(y[i] - y[j]);
          } else {
            raw[row][col] =
                lift[i] + labels[static_cast<std::size_t>(lca_level(a, b, h))] + lift[j];
          }
        }
      }
    }
  }
  Rational diam = y.back() - y.front();
  return ZSpace(h, m, k, eps, binary_tree(h, k), std::move(line.values),
                FiniteMetric::trusted(std::move(raw), std::move(ids)), std::move(diam),
                std::move(warnings));
}

ZParameters choose_params(std::size_t n_target, double delta, const Rational& k, double p) {
  if (n_target < 16) throw ParameterOutOfRange("n_target must be at least 16");
  if (!(delta > 0.5 && delta <= 1.0)) throw ParameterOutOfRange("delta must lie in (1/2, 1]");
  if (k <= 1) throw ParameterOutOfRange("k must exceed 1");
  check_exponent(p);
  const double exponent = delta * std::log2(static_cast<double>(n_target));
  // Guard against 5.0000000001 style rounding before taking the ceiling.
  const int h = static_cast<int>(std::ceil(exponent - 1e-9));
  if (h < 1 || h > 20) throw ParameterOutOfRange("derived h out of range");
  const std::size_t leaves = std::size_t{1} << h;
  const std::size_t m = std::max<std::size_t>(2, (n_target + leaves - 1) / leaves);
  if (m > 32) throw ParameterOutOfRange("derived m exceeds 32; raise delta");
  Rational eps = pow_int(k, -h) / 2;
  return {h, static_cast<int>(m), std::move(eps), leaves * m};
}

}  // namespace fembed
