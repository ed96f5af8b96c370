#ifndef FEMBED_METRIC_HPP_
#define FEMBED_METRIC_HPP_

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fembed/rational.hpp"

namespace fembed {

using PointIndex = std::size_t;
using PointPair = std::pair<PointIndex, PointIndex>;

// Dense metrics are capped so the n x n rational matrix stays in memory.
inline constexpr std::size_t kMaxMetricPoints = 2048;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Exact finite metric over indexed points. Immutable once built.
class FiniteMetric {
 public:
  // Checks shape, zero diagonal, positivity, symmetry and every triangle.
  // Throws DegeneracyError, AsymmetryError or TriangleViolation with the
  // first witness found in (i, j, k) lexicographic order.
  static FiniteMetric validate(std::vector<std::vector<Rational>> raw,
                               std::vector<std::string> ids);

  // For builders whose output is a metric by construction (tree metrics,
  // the amalgam space). Only the shape and id uniqueness are checked.
  static FiniteMetric trusted(std::vector<std::vector<Rational>> raw,
                             std::vector<std::string> ids);

  std::size_t size() const { return ids_.size(); }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::string& id(PointIndex i) const { return ids_[i]; }
  std::optional<PointIndex> find(std::string_view id) const;
  PointIndex index_of(std::string_view id) const;  // throws InvalidArgument

  const Rational& dist(PointIndex i, PointIndex j) const {
    return dist_[i * ids_.size() + j];
  }
  double dist_double(PointIndex i, PointIndex j) const {
    return approx_[i * ids_.size() + j];
  }

  // Induced submetric on `indices` (kept in the given order).
  FiniteMetric restrict(const std::vector<PointIndex>& indices) const;

  Rational diameter() const;

  bool operator==(const FiniteMetric& other) const;

 private:
  FiniteMetric() = default;
  static FiniteMetric assemble(std::vector<std::vector<Rational>> raw,
                               std::vector<std::string> ids);

  std::vector<std::string> ids_;
  std::vector<Rational> dist_;
  std::vector<double> approx_;
  std::unordered_map<std::string, PointIndex> index_;
};

// Image of a finite point set in l_p. Coordinates are floating point; when the
// producer knows them exactly (Frechet evaluation does) the exact rationals are
// carried too, which enables exact distances for p = 1 and p = infinity.
class EmbeddingImage {
 public:
  EmbeddingImage(double p, std::vector<std::string> points,
                 std::vector<std::string> coordinate_ids,
                 std::vector<std::vector<double>> coords,
                 std::optional<std::vector<std::vector<Rational>>> exact = {});

  double p() const { return p_; }
  bool is_sup_norm() const { return p_ == kInfinity; }
  std::size_t size() const { return points_.size(); }
  std::size_t dimension() const { return coordinate_ids_.size(); }
  const std::vector<std::string>& points() const { return points_; }
  const std::vector<std::string>& coordinate_ids() const { return coordinate_ids_; }
  const std::vector<double>& coords(PointIndex i) const { return coords_[i]; }
  bool has_exact() const { return exact_.has_value(); }
  const std::vector<Rational>& exact_coords(PointIndex i) const { return (*exact_)[i]; }

  double distance(PointIndex i, PointIndex j) const;
  // Defined only for p in {1, inf} with exact coordinates present.
  std::optional<Rational> exact_distance(PointIndex i, PointIndex j) const;

  EmbeddingImage restrict(const std::vector<PointIndex>& indices) const;
  // Every coordinate multiplied by c.
  EmbeddingImage scaled(double c) const;

 private:
  double p_;
  std::vector<std::string> points_;
  std::vector<std::string> coordinate_ids_;
  std::vector<std::vector<double>> coords_;
  std::optional<std::vector<std::vector<Rational>>> exact_;
};

struct DistortionReport {
  double expansion = 0.0;             // Lip(f)
  double contraction_inverse = 0.0;   // Lip(f^-1); infinite if f is not injective
  double distortion = 0.0;
  PointPair expansion_witness{0, 0};
  PointPair contraction_witness{0, 0};
  // Filled when the image supports exact distances (p = 1 or p = inf).
  std::optional<Rational> exact_expansion;
  std::optional<Rational> exact_contraction_inverse;  // empty if non-injective
  std::optional<Rational> exact_distortion;
  bool injective = true;
};

// Exact suprema over all pairs. `image` must list the points of `source` in
// the same order. Throws SinglePoint for fewer than two points.
DistortionReport distortion(const FiniteMetric& source, const EmbeddingImage& image);

struct MetricClass {
  bool is_ultrametric = false;
  bool is_k_hst = false;
};

// Exact three-point checks; k >= 1.
MetricClass classify_metric(const FiniteMetric& metric, const Rational& k);

// Rejects p outside [1, 64] and not infinite.
void check_exponent(double p);

}  // namespace fembed

#endif  // FEMBED_METRIC_HPP_
