#include "fembed/frechet.hpp"

#include <algorithm>
#include <cmath>

#include "fembed/errors.hpp"

namespace fembed {

PointSet make_point_set(std::vector<PointIndex> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

PointSet point_set_from_ids(const FiniteMetric& metric, const std::vector<std::string>& ids) {
  std::vector<PointIndex> points;
  points.reserve(ids.size());
  for (const auto& id : ids) points.push_back(metric.index_of(id));
  return make_point_set(std::move(points));
}

CoordinateSystem::CoordinateSystem(std::vector<std::string> ambient,
                                   std::vector<Coordinate> coords)
    : ambient_(std::move(ambient)), coords_(std::move(coords)) {
  for (auto& c : coords_) {
    c.members = make_point_set(std::move(c.members));
    if (c.members.empty()) throw InvalidArgument("coordinate '" + c.id + "' has an empty set");
    if (c.members.back() >= ambient_.size()) {
      throw InvalidArgument("coordinate '" + c.id + "' leaves the ambient space");
    }
    if (!std::isfinite(c.alpha) || c.alpha < 0) {
      throw InvalidArgument("coordinate '" + c.id + "' needs a finite alpha >= 0");
    }
  }
}

CoordinateSystem frechet_classical(const FiniteMetric& universe) {
  std::vector<Coordinate> coords;
  coords.reserve(universe.size());
  for (PointIndex i = 0; i < universe.size(); ++i) {
    coords.push_back({"{" + universe.id(i) + "}", {i}, 1.0});
  }
  return CoordinateSystem(universe.ids(), std::move(coords));
}

CoordinateSystem bourgain_system(const FiniteMetric& universe, std::uint64_t seed, int q,
                                 double p) {
  const std::size_t n = universe.size();
  if (n < 2) throw InvalidArgument("bourgain_system needs at least two points");
  if (q < 1) throw InvalidArgument("bourgain_system needs q >= 1");
  check_exponent(p);
  int scales = 0;
  while ((std::size_t{1} << scales) < n) ++scales;
  const double alpha =
      p == kInfinity ? 1.0 : std::pow(static_cast<double>(q) * scales, -1.0 / p);

  Rng rng(seed);
  std::vector<Coordinate> coords;
  for (int t = 1; t <= scales; ++t) {
    const double keep = std::ldexp(1.0, -t);
    for (int j = 1; j <= q; ++j) {
      std::vector<PointIndex> members;
      for (int attempt = 0; attempt <= 8 && members.empty(); ++attempt) {
        for (PointIndex x = 0; x < n; ++x) {
          if (uniform01(rng) < keep) members.push_back(x);
        }
      }
      if (members.empty()) continue;
      coords.push_back({"B" + std::to_string(t) + "." + std::to_string(j),
                        std::move(members), alpha});
    }
  }
  return CoordinateSystem(universe.ids(), std::move(coords));
}

EmbeddingImage evaluate_embedding(const CoordinateSystem& system,
                                  const FiniteMetric& universe, double p) {
  check_exponent(p);
  if (system.ambient() != universe.ids()) {
    throw InvalidArgument("coordinate system was built for a different point universe");
  }
  const std::size_t n = universe.size();
  const std::size_t dim = system.size();
  std::vector<std::vector<Rational>> exact(n, std::vector<Rational>(dim));
  std::vector<std::vector<double>> approx(n, std::vector<double>(dim));
  std::vector<std::string> coordinate_ids;
  coordinate_ids.reserve(dim);
  std::vector<bool> inside(n);
  for (std::size_t c = 0; c < dim; ++c) {
    const Coordinate& coord = system.coordinates()[c];
    coordinate_ids.push_back(coord.id);
    const Rational alpha(coord.alpha);
    std::fill(inside.begin(), inside.end(), false);
    for (PointIndex a : coord.members) inside[a] = true;
    for (PointIndex x = 0; x < n; ++x) {
      if (inside[x]) continue;  // distance 0, already zero-initialised
      const Rational* best = &universe.dist(x, coord.members.front());
      for (PointIndex a : coord.members) {
        const Rational& d = universe.dist(x, a);
        if (d < *best) best = &d;
      }
      exact[x][c] = alpha * *best;
      approx[x][c] = to_double(exact[x][c]);
    }
  }
  return EmbeddingImage(p, universe.ids(), std::move(coordinate_ids), std::move(approx),
                        std::move(exact));
}

std::vector<std::size_t> tail_leaves(const PointSet& U, const ZSpace& z) {
  std::vector<std::size_t> leaves;
  for (PointIndex u : U) {
    if (u >= z.size()) throw InvalidArgument("point index outside the space");
    leaves.push_back(z.leaf_of(u));
  }
  leaves.erase(std::unique(leaves.begin(), leaves.end()), leaves.end());
  return leaves;
}

namespace {

std::vector<bool> membership(const PointSet& A, std::size_t n) {
  std::vector<bool> in(n, false);
  for (PointIndex a : A) {
    if (a >= n) throw InvalidArgument("point index outside the space");
    in[a] = true;
  }
  return in;
}

bool tail_meets(const std::vector<bool>& in, std::size_t leaf, const ZSpace& z) {
  for (std::size_t j = 0; j < static_cast<std::size_t>(z.m()); ++j) {
    if (in[z.point(leaf, j)]) return true;
  }
  return false;
}

Rational miss_fraction(const std::vector<bool>& in_a, const std::vector<std::size_t>& leaves,
                       const ZSpace& z) {
  std::size_t missed = 0;
  for (std::size_t x : leaves) {
    if (!tail_meets(in_a, x, z)) ++missed;
  }
  Rational out(static_cast<unsigned long>(missed), static_cast<unsigned long>(leaves.size()));
  out.canonicalize();
  return out;
}

}  // namespace

Rational tail_miss_fraction(const PointSet& A, const PointSet& U, const ZSpace& z) {
  if (U.empty()) throw EmptyU("U must be nonempty");
  return miss_fraction(membership(A, z.size()), tail_leaves(U, z), z);
}

TailAnalysis beta_gamma(const CoordinateSystem& system, const PointSet& U, const ZSpace& z,
                        double p) {
  if (p == kInfinity) throw PInfinite("beta and gamma are defined for finite p only");
  check_exponent(p);
  if (U.empty()) throw EmptyU("U must be nonempty");
  if (system.ambient() != z.metric().ids()) {
    throw InvalidArgument("coordinate system was built for a different point universe");
  }
  TailAnalysis out;
  out.U = U;
  out.U_X = tail_leaves(U, z);
  out.p = p;
  for (std::size_t x : out.U_X) {
    std::size_t count = 0;
    for (PointIndex u : U) count += z.leaf_of(u) == x ? 1 : 0;
    if (count < 2) {
      out.warnings.push_back("tail " + z.leaf_id(x) + " holds fewer than two points of U");
    }
  }
  double beta_p = 0;
  double gamma_p = 0;
  for (const Coordinate& c : system.coordinates()) {
    Rational zeta = miss_fraction(membership(c.members, z.size()), out.U_X, z);
    const double weight = std::pow(c.alpha, p);
    beta_p += weight * to_double(zeta);
    if (!std::includes(c.members.begin(), c.members.end(), U.begin(), U.end())) {
      gamma_p += weight;
    }
    out.zeta.push_back(std::move(zeta));
  }
  out.beta = std::pow(beta_p, 1.0 / p);
  out.gamma = std::pow(gamma_p, 1.0 / p);
  return out;
}

SplitContext::SplitContext(const PointSet& U, const ZSpace& z)
    : z_(&z),
      skeleton_([&] {
        if (U.empty()) throw EmptyU("U must be nonempty");
        std::vector<std::string> ids;
        for (std::size_t x : tail_leaves(U, z)) ids.push_back(z.leaf_id(x));
        return fembed::skeleton(spanned_subtree(z.tree(), ids));
      }()) {
  const bool small = z.size() <= 64;
  for (VertexIndex v : skeleton_.preorder()) {
    if (skeleton_.is_leaf(v)) continue;
    const VertexIndex full = z.tree().index_of(skeleton_.id(v));
    const auto& kids = z.tree().children(full);
    Branch b{skeleton_.id(v), skeleton_.depth(v), z.leaf_range(kids[0]),
             z.leaf_range(kids[1])};
    if (small) {
      const auto m = static_cast<std::size_t>(z.m());
      for (std::size_t leaf = b.left.first; leaf < b.left.second; ++leaf) {
        for (std::size_t j = 0; j < m; ++j) b.left_mask |= std::uint64_t{1} << z.point(leaf, j);
      }
      for (std::size_t leaf = b.right.first; leaf < b.right.second; ++leaf) {
        for (std::size_t j = 0; j < m; ++j) b.right_mask |= std::uint64_t{1} << z.point(leaf, j);
      }
    }
    branches_.push_back(std::move(b));
  }
}

bool SplitContext::meets(const std::vector<bool>& in_a,
                         std::pair<std::size_t, std::size_t> range) const {
  for (std::size_t leaf = range.first; leaf < range.second; ++leaf) {
    if (tail_meets(in_a, leaf, *z_)) return true;
  }
  return false;
}

bool SplitContext::splits_branch(const Branch& b, const std::vector<bool>& in_a) const {
  return meets(in_a, b.left) != meets(in_a, b.right);
}

bool SplitContext::splits(const PointSet& A, const std::string& u) const {
  if (!skeleton_.find(u)) {
    throw VertexNotInSkeleton("vertex '" + u + "' is not in the skeleton");
  }
  const auto in_a = membership(A, z_->size());
  for (const Branch& b : branches_) {
    if (b.id == u) return splits_branch(b, in_a);
  }
  return false;  // skeleton leaf
}

Rational SplitContext::split_sum(const PointSet& A) const {
  const auto in_a = membership(A, z_->size());
  Rational total = 0;
  for (const Branch& b : branches_) {
    if (splits_branch(b, in_a)) total += pow_int(Rational(2), -static_cast<int>(b.depth));
  }
  return total;
}

Rational SplitContext::split_sum_mask(std::uint64_t A) const {
  if (z_->size() > 64) throw InvalidArgument("mask form needs at most 64 points");
  Rational total = 0;
  for (const Branch& b : branches_) {
    const bool left = (A & b.left_mask) != 0;
    const bool right = (A & b.right_mask) != 0;
    if (left != right) total += pow_int(Rational(2), -static_cast<int>(b.depth));
  }
  return total;
}

bool split_test(const PointSet& A, const std::string& u, const PointSet& U, const ZSpace& z) {
  return SplitContext(U, z).splits(A, u);
}

Rational split_sum(const PointSet& A, const PointSet& U, const ZSpace& z) {
  return SplitContext(U, z).split_sum(A);
}

LowerBoundReport lower_bound_from_aggregates(double beta, double gamma, double p, int h_hat,
                                             const ZSpace& z) {
  if (p == kInfinity) throw PInfinite("the lower-bound calculus needs finite p");
  check_exponent(p);
  if (h_hat < 1) throw ParameterOutOfRange("h_hat must be at least 1");
  LowerBoundReport out;
  out.beta = beta;
  out.gamma = gamma;
  out.gamma_regime = z.in_gamma_regime();
  const double n = static_cast<double>(z.size());
  const double m = z.m();
  out.beta_bound = beta;
  out.gamma_bound = std::exp2(-2.0 * m - n / p) * gamma;

  const double k = to_double(z.k());
  const double k_to_h = to_double(pow_int(z.k(), z.h()));
  const double leak = (2.0 + 2.0 * k_to_h * to_double(z.diam_y())) / k;
  const double sum =
      2.0 * std::pow(beta, p) / h_hat + std::pow(leak, p) * std::pow(gamma, p);
  out.inverse_bound = sum == 0.0 ? kInfinity : std::pow(sum, -1.0 / p);
  const double expansion = std::max(out.beta_bound, out.gamma_bound);
  // A zero expansion bound makes the product 0 * inf; 0 is the honest bound.
  out.combined = expansion == 0.0 ? 0.0 : expansion * out.inverse_bound;
  return out;
}

LowerBoundReport distortion_lower_bound(const CoordinateSystem& system, const PointSet& U,
                                        const ZSpace& z, double p, int h_hat) {
  if (p == kInfinity) throw PInfinite("the lower-bound calculus needs finite p");
  const TailAnalysis tails = beta_gamma(system, U, z, p);
  return lower_bound_from_aggregates(tails.beta, tails.gamma, p, h_hat, z);
}

}  // namespace fembed
