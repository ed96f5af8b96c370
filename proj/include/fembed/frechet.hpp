#ifndef FEMBED_FRECHET_HPP_
#define FEMBED_FRECHET_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "fembed/construction.hpp"
#include "fembed/metric.hpp"
#include "fembed/rational.hpp"
#include "fembed/tree.hpp"

namespace fembed {

// Sorted, duplicate-free point indices.
using PointSet = std::vector<PointIndex>;

PointSet make_point_set(std::vector<PointIndex> points);
PointSet point_set_from_ids(const FiniteMetric& metric, const std::vector<std::string>& ids);

// One coordinate x -> alpha * d(x, A).
struct Coordinate {
  std::string id;
  PointSet members;  // A, nonempty
  double alpha = 0;  // >= 0
};

// Sparse family {(A, alpha_A)} over a fixed point universe. Sets with
// alpha = 0 are simply absent.
class CoordinateSystem {
 public:
  // Throws InvalidArgument on an empty or out-of-range A and on a negative or
  // non-finite alpha.
  CoordinateSystem(std::vector<std::string> ambient, std::vector<Coordinate> coords);

  const std::vector<std::string>& ambient() const { return ambient_; }
  const std::vector<Coordinate>& coordinates() const { return coords_; }
  std::size_t size() const { return coords_.size(); }

 private:
  std::vector<std::string> ambient_;
  std::vector<Coordinate> coords_;
};

// One singleton coordinate per point, alpha = 1. Isometric under l_inf.
CoordinateSystem frechet_classical(const FiniteMetric& universe);

// Bourgain's sampling: scales t = 1..ceil(log2 n), q sets per scale, each point
// kept with probability 2^{-t}. Empty draws are retried up to 8 times and then
// dropped. Every kept set weighs (qT)^{-1/p} (1 for p = inf).
CoordinateSystem bourgain_system(const FiniteMetric& universe, std::uint64_t seed, int q,
                                 double p);

// f(x)_A = alpha_A * min_{a in A} d(x, a), kept exactly alongside the doubles.
EmbeddingImage evaluate_embedding(const CoordinateSystem& system,
                                  const FiniteMetric& universe, double p);

// Leaves whose tail meets U.
std::vector<std::size_t> tail_leaves(const PointSet& U, const ZSpace& z);

// Fraction of the tails of U_X that A misses. Throws EmptyU.
Rational tail_miss_fraction(const PointSet& A, const PointSet& U, const ZSpace& z);

struct TailAnalysis {
  PointSet U;
  std::vector<std::size_t> U_X;
  std::vector<Rational> zeta;  // per coordinate, in system order
  double beta = 0;
  double gamma = 0;
  double p = 1;
  std::vector<std::string> warnings;
};

// beta^p = sum alpha^p zeta_A and gamma^p = sum over A not containing U of
// alpha^p. Throws PInfinite. Warns when a tail of U_X holds fewer than two
// points of U.
TailAnalysis beta_gamma(const CoordinateSystem& system, const PointSet& U,
                        const ZSpace& z, double p);

// The skeleton of the subtree spanned by U_X, with the bookkeeping needed to
// test which of its vertices a set splits.
class SplitContext {
 public:
  SplitContext(const PointSet& U, const ZSpace& z);

  const WeightedRootedTree& skeleton() const { return skeleton_; }
  const ZSpace& space() const { return *z_; }

  // A splits u when it meets exactly one of the two leaf cones (times Y)
  // under u's children in the full tree. Leaves of the skeleton are never
  // split. `u` is a vertex id of the full tree; throws VertexNotInSkeleton.
  bool splits(const PointSet& A, const std::string& u) const;
  // Sum of 2^{-depth} over skeleton vertices split by A, depth measured in
  // the skeleton.
  Rational split_sum(const PointSet& A) const;

  // Fast path for universes of at most 64 points: A as a bit mask.
  Rational split_sum_mask(std::uint64_t A) const;

 private:
  struct Branch {
    std::string id;
    std::size_t depth;
    std::pair<std::size_t, std::size_t> left;   // leaf range
    std::pair<std::size_t, std::size_t> right;  // leaf range
    std::uint64_t left_mask = 0;
    std::uint64_t right_mask = 0;
  };

  bool meets(const std::vector<bool>& in_a, std::pair<std::size_t, std::size_t> range) const;
  bool splits_branch(const Branch& b, const std::vector<bool>& in_a) const;

  const ZSpace* z_;
  WeightedRootedTree skeleton_;
  std::vector<Branch> branches_;
};

bool split_test(const PointSet& A, const std::string& u, const PointSet& U, const ZSpace& z);
Rational split_sum(const PointSet& A, const PointSet& U, const ZSpace& z);

struct LowerBoundReport {
  double beta = 0;
  double gamma = 0;
  double beta_bound = 0;     // lower bound on Lip(f|_U)
  double gamma_bound = 0;    // lower bound on Lip(f|_U), tail-weight route
  double inverse_bound = 0;  // lower bound on Lip((f|_U)^{-1})
  double combined = 0;       // max(beta_bound, gamma_bound) * inverse_bound
  bool gamma_regime = false; // k >= 4 and k^{-h} >= eps
};

// The three bounds from the aggregates alone. n is |X| * |Y|.
LowerBoundReport lower_bound_from_aggregates(double beta, double gamma, double p, int h_hat,
                                             const ZSpace& z);

// Throws PInfinite; h_hat >= 1 comes from the subset extraction.
LowerBoundReport distortion_lower_bound(const CoordinateSystem& system, const PointSet& U,
                                        const ZSpace& z, double p, int h_hat);

}  // namespace fembed

#endif  // FEMBED_FRECHET_HPP_
