#include "fembed/metric.hpp"

#include <algorithm>
#include <cmath>

#include "fembed/errors.hpp"

namespace fembed {

FiniteMetric FiniteMetric::assemble(std::vector<std::vector<Rational>> raw,
                                    std::vector<std::string> ids) {
  const std::size_t n = ids.size();
  if (n > kMaxMetricPoints) {
    throw ParameterOutOfRange("metric with " + std::to_string(n) +
                              " points exceeds the dense limit of " +
                              std::to_string(kMaxMetricPoints));
  }
  if (raw.size() != n) {
    throw InvalidArgument("distance matrix has " + std::to_string(raw.size()) +
                          " rows for " + std::to_string(n) + " ids");
  }
  FiniteMetric m;
  m.ids_ = std::move(ids);
  m.dist_.reserve(n * n);
  m.approx_.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (raw[i].size() != n) {
      throw InvalidArgument("distance matrix row " + std::to_string(i) +
                            " has wrong length");
    }
    for (std::size_t j = 0; j < n; ++j) {
      m.approx_.push_back(to_double(raw[i][j]));
      m.dist_.push_back(std::move(raw[i][j]));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!m.index_.emplace(m.ids_[i], i).second) {
      throw InvalidArgument("duplicate point id '" + m.ids_[i] + "'");
    }
  }
  return m;
}

FiniteMetric FiniteMetric::trusted(std::vector<std::vector<Rational>> raw,
                                   std::vector<std::string> ids) {
  return assemble(std::move(raw), std::move(ids));
}

FiniteMetric FiniteMetric::validate(std::vector<std::vector<Rational>> raw,
                                    std::vector<std::string> ids) {
  FiniteMetric m = assemble(std::move(raw), std::move(ids));
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (m.dist(i, i) != 0) throw DegeneracyError(i, i);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (m.dist(i, j) <= 0) throw DegeneracyError(i, j);
      if (m.dist(i, j) != m.dist(j, i)) throw AsymmetryError(i, j);
    }
  }
  Rational through;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        through = m.dist(i, k) + m.dist(k, j);
        if (m.dist(i, j) > through) throw TriangleViolation(i, j, k);
      }
    }
  }
  return m;
}

std::optional<PointIndex> FiniteMetric::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

PointIndex FiniteMetric::index_of(std::string_view id) const {
  if (auto i = find(id)) return *i;
  throw InvalidArgument("unknown point id '" + std::string(id) + "'");
}

FiniteMetric FiniteMetric::restrict(const std::vector<PointIndex>& indices) const {
  std::vector<std::vector<Rational>> raw(indices.size());
  std::vector<std::string> ids;
  ids.reserve(indices.size());
  for (std::size_t a = 0; a < indices.size(); ++a) {
    if (indices[a] >= size()) throw InvalidArgument("restrict: index out of range");
    ids.push_back(ids_[indices[a]]);
    raw[a].reserve(indices.size());
    for (std::size_t b = 0; b < indices.size(); ++b) {
      raw[a].push_back(dist(indices[a], indices[b]));
    }
  }
  return assemble(std::move(raw), std::move(ids));
}

Rational FiniteMetric::diameter() const {
  Rational best = 0;
  for (const auto& d : dist_) {
    if (d > best) best = d;
  }
  return best;
}

bool FiniteMetric::operator==(const FiniteMetric& other) const {
  return ids_ == other.ids_ && dist_ == other.dist_;
}

void check_exponent(double p) {
  if (p == kInfinity) return;
  if (!(p >= 1.0 && p <= 64.0)) {
    throw ParameterOutOfRange("exponent p must lie in [1, 64] or be infinite");
  }
}

EmbeddingImage::EmbeddingImage(
    double p, std::vector<std::string> points,
    std::vector<std::string> coordinate_ids,
    std::vector<std::vector<double>> coords,
    std::optional<std::vector<std::vector<Rational>>> exact)
    : p_(p),
      points_(std::move(points)),
      coordinate_ids_(std::move(coordinate_ids)),
      coords_(std::move(coords)),
      exact_(std::move(exact)) {
  check_exponent(p_);
  if (coords_.size() != points_.size()) {
    throw InvalidArgument("embedding image: one coordinate row per point required");
  }
  for (const auto& row : coords_) {
    if (row.size() != coordinate_ids_.size()) {
      throw InvalidArgument("embedding image: ragged coordinate rows");
    }
  }
  if (exact_) {
    if (exact_->size() != points_.size()) {
      throw InvalidArgument("embedding image: exact rows do not match points");
    }
    for (const auto& row : *exact_) {
      if (row.size() != coordinate_ids_.size()) {
        throw InvalidArgument("embedding image: ragged exact rows");
      }
    }
  }
}

double EmbeddingImage::distance(PointIndex i, PointIndex j) const {
  const auto& a = coords_[i];
  const auto& b = coords_[j];
  const std::size_t dim = a.size();
  if (p_ == kInfinity) {
    double best = 0.0;
    for (std::size_t c = 0; c < dim; ++c) best = std::max(best, std::abs(a[c] - b[c]));
    return best;
  }
  if (p_ == 1.0) {
    double sum = 0.0;
    for (std::size_t c = 0; c < dim; ++c) sum += std::abs(a[c] - b[c]);
    return sum;
  }
  if (p_ == 2.0) {
    double sum = 0.0;
    for (std::size_t c = 0; c < dim; ++c) {
      const double d = a[c] - b[c];
      sum += d * d;
    }
    return std::sqrt(sum);
  }
  // Scale by the largest component so large p cannot overflow.
  double scale = 0.0;
  for (std::size_t c = 0; c < dim; ++c) scale = std::max(scale, std::abs(a[c] - b[c]));
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  for (std::size_t c = 0; c < dim; ++c) sum += std::pow(std::abs(a[c] - b[c]) / scale, p_);
  return scale * std::pow(sum, 1.0 / p_);
}

std::optional<Rational> EmbeddingImage::exact_distance(PointIndex i, PointIndex j) const {
  if (!exact_ || (p_ != 1.0 && p_ != kInfinity)) return std::nullopt;
  const auto& a = (*exact_)[i];
  const auto& b = (*exact_)[j];
  Rational result = 0;
  Rational diff;
  for (std::size_t c = 0; c < a.size(); ++c) {
    diff = a[c] - b[c];
    if (diff < 0) diff = -diff;
    if (p_ == 1.0) {
      result += diff;
    } else if (diff > result) {
      result = diff;
    }
  }
  return result;
}

EmbeddingImage EmbeddingImage::restrict(const std::vector<PointIndex>& indices) const {
  std::vector<std::string> pts;
  std::vector<std::vector<double>> rows;
  std::optional<std::vector<std::vector<Rational>>> exact_rows;
  if (exact_) exact_rows.emplace();
  for (PointIndex i : indices) {
    if (i >= size()) throw InvalidArgument("restrict: index out of range");
    pts.push_back(points_[i]);
    rows.push_back(coords_[i]);
    if (exact_) exact_rows->push_back((*exact_)[i]);
  }
  return EmbeddingImage(p_, std::move(pts), coordinate_ids_, std::move(rows),
                        std::move(exact_rows));
}

EmbeddingImage EmbeddingImage::scaled(double c) const {
  auto rows = coords_;
  for (auto& row : rows) {
    for (auto& v : row) v *= c;
  }
  std::optional<std::vector<std::vector<Rational>>> exact_rows;
  if (exact_) {
    exact_rows = *exact_;
    const Rational factor(c);
    for (auto& row : *exact_rows) {
      for (auto& v : row) v *= factor;
    }
  }
  return EmbeddingImage(p_, points_, coordinate_ids_, std::move(rows),
                        std::move(exact_rows));
}

namespace {

void fill_exact(const FiniteMetric& source, const EmbeddingImage& image,
                DistortionReport& report) {
  const std::size_t n = source.size();
  Rational best_expansion = -1;
  std::optional<Rational> best_contraction = Rational(-1);
  Rational ratio;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Rational image_dist = *image.exact_distance(i, j);
      const Rational& d = source.dist(i, j);
      ratio = image_dist / d;
      if (ratio > best_expansion) best_expansion = ratio;
      if (image_dist == 0) {
        best_contraction.reset();
      } else if (best_contraction) {
        ratio = d / image_dist;
        if (ratio > *best_contraction) *best_contraction = ratio;
      }
    }
  }
  report.exact_expansion = best_expansion;
  report.exact_contraction_inverse = best_contraction;
  if (best_contraction) report.exact_distortion = best_expansion * *best_contraction;
}

}  // namespace

DistortionReport distortion(const FiniteMetric& source, const EmbeddingImage& image) {
  const std::size_t n = source.size();
  if (n < 2) throw SinglePoint("distortion needs at least two points");
  if (image.points() != source.ids()) {
    throw InvalidArgument("embedding image does not cover the source points in order");
  }
  DistortionReport report;
  report.expansion = -1.0;
  report.contraction_inverse = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double image_dist = image.distance(i, j);
      const double d = source.dist_double(i, j);
      const double expansion = image_dist / d;
      if (expansion > report.expansion) {
        report.expansion = expansion;
        report.expansion_witness = {i, j};
      }
      const double contraction = image_dist == 0.0 ? kInfinity : d / image_dist;
      if (contraction > report.contraction_inverse) {
        report.contraction_inverse = contraction;
        report.contraction_witness = {i, j};
      }
    }
  }
  if (image.has_exact() && (image.p() == 1.0 || image.is_sup_norm())) {
    fill_exact(source, image, report);
    report.injective = report.exact_contraction_inverse.has_value();
    report.expansion = to_double(*report.exact_expansion);
    report.contraction_inverse = report.injective
                                     ? to_double(*report.exact_contraction_inverse)
                                     : kInfinity;
  } else {
    report.injective = report.contraction_inverse != kInfinity;
  }
  report.distortion = report.injective ? report.expansion * report.contraction_inverse
                                       : kInfinity;
  if (report.exact_distortion) report.distortion = to_double(*report.exact_distortion);
  return report;
}

MetricClass classify_metric(const FiniteMetric& metric, const Rational& k) {
  if (k < 1) throw ParameterOutOfRange("classify_metric needs k >= 1");
  const std::size_t n = metric.size();
  MetricClass out{true, true};
  std::vector<Rational> scaled(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) scaled[i * n + j] = k * metric.dist(i, j);
  }
  for (std::size_t x = 0; x < n && (out.is_ultrametric || out.is_k_hst); ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (y == x) continue;
      const Rational& dxy = metric.dist(x, y);
      for (std::size_t z = 0; z < n; ++z) {
        if (z == x || z == y) continue;
        const Rational& dxz = metric.dist(x, z);
        const Rational& dyz = metric.dist(y, z);
        if (out.is_ultrametric && dxz > dxy && dxz > dyz) out.is_ultrametric = false;
        if (out.is_k_hst && dxy < dxz) {
          if (dxz != dyz || dxz < scaled[x * n + y]) out.is_k_hst = false;
        }
      }
    }
  }
  return out;
}

}  // namespace fembed
