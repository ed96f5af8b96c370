#include "fembed/ramsey.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fembed/errors.hpp"

namespace fembed {

namespace {

struct Pruner {
  const ZSpace& z;
  double eta;
  WeightedRootedTree::EdgeList edges;

  std::vector<std::size_t> within(const std::vector<std::size_t>& leaves, VertexIndex v) const {
    const auto [first, last] = z.leaf_range(v);
    std::vector<std::size_t> out;
    for (std::size_t x : leaves) {
      if (x >= first && x < last) out.push_back(x);
    }
    return out;
  }

  void descend(VertexIndex v, const std::vector<std::size_t>& local) {
    const auto& tree = z.tree();
    if (tree.is_leaf(v)) return;
    const VertexIndex left = tree.children(v)[0];
    const VertexIndex right = tree.children(v)[1];
    const auto s_left = within(local, left);
    const auto s_right = within(local, right);
    const double threshold = eta * static_cast<double>(local.size());
    if (static_cast<double>(std::min(s_left.size(), s_right.size())) >= threshold) {
      edges.emplace_back(tree.id(v), tree.id(left));
      edges.emplace_back(tree.id(v), tree.id(right));
      descend(left, s_left);
      descend(right, s_right);
    } else if (s_left.size() >= s_right.size()) {
      edges.emplace_back(tree.id(v), tree.id(left));
      descend(left, s_left);
    } else {
      edges.emplace_back(tree.id(v), tree.id(right));
      descend(right, s_right);
    }
  }
};

}  // namespace

ExtractionResult extract_subset(const ZSpace& z, const PointSet& V) {
  for (PointIndex v : V) {
    if (v >= z.size()) throw InvalidArgument("V contains a point outside the space");
  }
  const std::size_t leaves = z.leaf_count();
  const auto m = static_cast<std::size_t>(z.m());
  if (!(V.size() > 2 * m + leaves)) {
    throw TooSmallV("|V| = " + std::to_string(V.size()) + " must exceed 2m + 2^h = " +
                    std::to_string(2 * m + leaves));
  }

  std::vector<std::vector<PointIndex>> per_tail(leaves);
  for (PointIndex v : V) per_tail[z.leaf_of(v)].push_back(v);  // V is sorted
  std::vector<std::size_t> S;
  for (std::size_t x = 0; x < leaves; ++x) {
    if (per_tail[x].size() >= 2) S.push_back(x);
  }

  ExtractionResult out{};
  const double h = z.h();
  out.rho = std::pow(static_cast<double>(V.size() - leaves) / static_cast<double>(m), 1.0 / h) - 1.0;
  out.eta = out.rho / (2.0 + out.rho);
  out.h_hat_bound = out.rho * h / (6.0 * std::log2(2.0 / out.rho));
  out.S = S;

  Pruner pruner{z, out.eta, {}};
  pruner.descend(z.tree().root(), S);
  std::map<std::string, Rational> labels;
  for (const auto& [parent, child] : pruner.edges) {
    for (const auto* id : {&parent, &child}) {
      const VertexIndex v = z.tree().index_of(*id);
      if (z.tree().delta(v)) labels.emplace(*id, *z.tree().delta(v));
    }
  }
  const WeightedRootedTree pruned = WeightedRootedTree::from_edges(
      z.tree().id(z.tree().root()), pruner.edges, std::move(labels), z.k());
  WeightedRootedTree skel = skeleton(pruned);

  std::size_t h_hat = std::numeric_limits<std::size_t>::max();
  for (VertexIndex v : skel.leaves()) h_hat = std::min(h_hat, skel.depth(v));
  out.h_hat = static_cast<int>(h_hat);

  // Leaves of the pruned tree, which all lie in S, in left-to-right order.
  std::vector<std::size_t> pruned_leaves;
  for (VertexIndex v : pruned.leaves()) {
    pruned_leaves.push_back(z.leaf_range(z.tree().index_of(pruned.id(v))).first);
  }
  for (VertexIndex u : skel.preorder()) {
    if (skel.depth(u) != h_hat) continue;
    const auto [first, last] = z.leaf_range(z.tree().index_of(skel.id(u)));
    auto it = std::find_if(pruned_leaves.begin(), pruned_leaves.end(),
                           [&](std::size_t x) { return x >= first && x < last; });
    out.chosen.push_back(*it);
  }

  std::vector<PointIndex> u_points;
  std::vector<std::string> chosen_ids;
  for (std::size_t x : out.chosen) {
    u_points.push_back(per_tail[x][0]);
    u_points.push_back(per_tail[x][1]);
    chosen_ids.push_back(z.leaf_id(x));
  }
  out.U = make_point_set(std::move(u_points));
  out.pruned_skeleton = std::move(skel);
  out.skeleton_tree = skeleton(spanned_subtree(z.tree(), chosen_ids));
  return out;
}

namespace {

double binomial_capped(std::size_t n, std::size_t s, double cap) {
  double value = 1;
  for (std::size_t i = 1; i <= s; ++i) {
    value = value * static_cast<double>(n - s + i) / static_cast<double>(i);
    if (value > cap) return value;
  }
  return value;
}

}  // namespace

SubsetSearchResult brute_force_best_subset(const EmbeddingImage& image,
                                           const FiniteMetric& source, std::size_t s) {
  const std::size_t n = source.size();
  if (image.points() != source.ids()) {
    throw InvalidArgument("embedding image does not cover the source points in order");
  }
  if (s < 2 || s > n) throw InvalidArgument("subset size must lie in [2, n]");
  constexpr double kLimit = 2e6;
  if (binomial_capped(n, s, kLimit) > kLimit) {
    throw CombinatorialBlowup("C(" + std::to_string(n) + ", " + std::to_string(s) +
                              ") exceeds 2e6 subsets");
  }

  std::vector<double> ratio(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double r = image.distance(i, j) / source.dist_double(i, j);
      ratio[i * n + j] = ratio[j * n + i] = r;
    }
  }

  SubsetSearchResult best{{}, kInfinity};
  std::vector<std::size_t> pick(s);
  for (std::size_t i = 0; i < s; ++i) pick[i] = i;
  bool first = true;
  while (true) {
    double expansion = 0;
    double min_ratio = kInfinity;
    for (std::size_t a = 0; a < s; ++a) {
      for (std::size_t b = a + 1; b < s; ++b) {
        const double r = ratio[pick[a] * n + pick[b]];
        expansion = std::max(expansion, r);
        min_ratio = std::min(min_ratio, r);
      }
    }
    const double value = min_ratio == 0.0 ? kInfinity : expansion / min_ratio;
    if (first || value < best.distortion) {
      best.distortion = value;
      best.subset = pick;
      first = false;
    }
    // Advance to the next combination in lexicographic order.
    std::size_t i = s;
    while (i > 0 && pick[i - 1] == n - s + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < s; ++j) pick[j] = pick[j - 1] + 1;
  }
  return best;
}

}  // namespace fembed
