#ifndef FEMBED_CONSTRUCTION_HPP_
#define FEMBED_CONSTRUCTION_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "fembed/metric.hpp"
#include "fembed/rational.hpp"
#include "fembed/tree.hpp"

namespace fembed {

// Leaves of the complete binary tree of height h under d = k^{-depth(lca)}.
// Internal vertices are named by their bit prefix, the root is "r".
struct LeafSpace {
  WeightedRootedTree tree;
  FiniteMetric metric;
};

// 1 <= h <= 20 for the tree; the metric additionally needs 2^h <= kMaxMetricPoints.
LeafSpace build_X(int h, const Rational& k);

// m points on the line at y_j = eps * sum_{i<=j} 4^{-i}.
struct LineSpace {
  std::vector<Rational> values;
  FiniteMetric metric;
};

// 2 <= m <= 32, eps > 0.
LineSpace build_Y(int m, const Rational& eps);

// The amalgam X x Y: a copy ("tail") of Y hangs off every leaf of X and two
// points in different tails are joined through the tails' base points y_0.
// Point ids are "<leaf bits>:<j>"; point index = leaf * m + j.
class ZSpace {
 public:
  int h() const { return h_; }
  int m() const { return m_; }
  const Rational& k() const { return k_; }
  const Rational& eps() const { return eps_; }
  const WeightedRootedTree& tree() const { return tree_; }
  const std::vector<Rational>& y_values() const { return y_values_; }
  const FiniteMetric& metric() const { return metric_; }
  const Rational& diam_y() const { return diam_y_; }
  // Human-readable notes, e.g. when the parameters leave the k >= 4,
  // k^{-h} >= eps regime where the tail-weight bound is proved.
  const std::vector<std::string>& warnings() const { return warnings_; }

  std::size_t size() const { return metric_.size(); }
  std::size_t leaf_count() const { return std::size_t{1} << h_; }
  std::size_t leaf_of(PointIndex p) const { return p / static_cast<std::size_t>(m_); }
  std::size_t tail_of(PointIndex p) const { return p % static_cast<std::size_t>(m_); }
  PointIndex point(std::size_t leaf, std::size_t j) const {
    return leaf * static_cast<std::size_t>(m_) + j;
  }
  // Zero-padded bit string of a leaf index, most significant bit first.
  std::string leaf_id(std::size_t leaf) const;
  std::string point_id(std::size_t leaf, std::size_t j) const;
  // True iff k >= 4 and k^{-h} >= eps.
  bool in_gamma_regime() const;

  // Half-open range [first, last) of leaf indices below a tree vertex.
  std::pair<std::size_t, std::size_t> leaf_range(VertexIndex v) const;

  // d(x, x') in X for leaf indices, exactly k^{-depth(lca)}.
  Rational leaf_distance(std::size_t a, std::size_t b) const;

  friend ZSpace build_Z(int h, const Rational& k, int m, const Rational& eps);

 private:
  ZSpace(int h, int m, Rational k, Rational eps, WeightedRootedTree tree,
         std::vector<Rational> y_values, FiniteMetric metric, Rational diam_y,
         std::vector<std::string> warnings);

  int h_;
  int m_;
  Rational k_;
  Rational eps_;
  WeightedRootedTree tree_;
  std::vector<Rational> y_values_;
  FiniteMetric metric_;
  Rational diam_y_;
  std::vector<std::string> warnings_;
};

ZSpace build_Z(int h, const Rational& k, int m, const Rational& eps);

struct ZParameters {
  int h;
  int m;
  Rational eps;
  std::size_t n;  // achieved 2^h * m
};

// h = ceil(delta * log2 n_target), m = max(2, ceil(n_target / 2^h)),
// eps = k^{-h} / 2. Needs n_target >= 16, delta in (1/2, 1], k > 1, p >= 1.
ZParameters choose_params(std::size_t n_target, double delta, const Rational& k, double p);

}  // namespace fembed

#endif  // FEMBED_CONSTRUCTION_HPP_
