#include "fembed/json_io.hpp"

#include <fstream>
#include <sstream>

#include "fembed/errors.hpp"

namespace fembed {

namespace {

template <typename Fn>
auto guarded(const char* what, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("malformed ") + what + ": " + e.what());
  }
}

Rational rational_from_json(const Json& value) {
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number_integer()) return Rational(value.get<long>());
  if (value.is_number()) return Rational(value.get<double>());
  throw InvalidArgument("expected a rational string or number");
}

double real_from_json(const Json& value) {
  if (value.is_string()) {
    const auto s = value.get<std::string>();
    if (s == "inf" || s == "infinity") return kInfinity;
    return to_double(parse_rational(s));
  }
  return value.get<double>();
}

}  // namespace

Json real_to_json(double value) {
  if (value == kInfinity) return "inf";
  return value;
}

Json to_json(const FiniteMetric& metric) {
  Json dist = Json::array();
  for (std::size_t i = 0; i < metric.size(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < metric.size(); ++j) row.push_back(to_string(metric.dist(i, j)));
    dist.push_back(std::move(row));
  }
  return {{"points", metric.ids()}, {"dist", std::move(dist)}};
}

FiniteMetric metric_from_json(const Json& doc) {
  return guarded("metric", [&] {
    auto ids = doc.at("points").get<std::vector<std::string>>();
    std::vector<std::vector<Rational>> raw;
    for (const auto& row : doc.at("dist")) {
      std::vector<Rational> values;
      for (const auto& cell : row) values.push_back(rational_from_json(cell));
      raw.push_back(std::move(values));
    }
    return FiniteMetric::validate(std::move(raw), std::move(ids));
  });
}

Json to_json(const EmbeddingImage& image) {
  Json coords = Json::object();
  for (std::size_t i = 0; i < image.size(); ++i) coords[image.points()[i]] = image.coords(i);
  return {{"p", real_to_json(image.p())},
          {"points", image.points()},
          {"coordinate_ids", image.coordinate_ids()},
          {"coords", std::move(coords)}};
}

EmbeddingImage image_from_json(const Json& doc) {
  return guarded("embedding image", [&] {
    const double p = real_from_json(doc.at("p"));
    auto coordinate_ids = doc.at("coordinate_ids").get<std::vector<std::string>>();
    std::vector<std::string> points;
    if (doc.contains("points")) {
      points = doc.at("points").get<std::vector<std::string>>();
    } else {
      for (const auto& item : doc.at("coords").items()) points.push_back(item.key());
    }
    std::vector<std::vector<double>> rows;
    for (const auto& id : points) rows.push_back(doc.at("coords").at(id).get<std::vector<double>>());
    return EmbeddingImage(p, std::move(points), std::move(coordinate_ids), std::move(rows));
  });
}

Json to_json(const WeightedRootedTree& tree) {
  Json edges = Json::array();
  for (const auto& [parent, child] : tree.edges()) edges.push_back({parent, child});
  Json delta = Json::object();
  for (const auto& [id, value] : tree.labels()) delta[id] = to_string(value);
  Json out{{"root", tree.id(tree.root())}, {"edges", std::move(edges)}, {"delta", std::move(delta)}};
  if (tree.hst_parameter()) out["hst_parameter"] = to_string(*tree.hst_parameter());
  return out;
}

WeightedRootedTree tree_from_json(const Json& doc) {
  return guarded("tree", [&] {
    WeightedRootedTree::EdgeList edges;
    for (const auto& e : doc.at("edges")) {
      edges.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
    }
    std::map<std::string, Rational> delta;
    if (doc.contains("delta")) {
      for (const auto& item : doc.at("delta").items()) {
        delta.emplace(item.key(), rational_from_json(item.value()));
      }
    }
    std::optional<Rational> k;
    if (doc.contains("hst_parameter")) k = rational_from_json(doc.at("hst_parameter"));
    return WeightedRootedTree::from_edges(doc.at("root").get<std::string>(), edges,
                                          std::move(delta), std::move(k));
  });
}

Json to_json(const CoordinateSystem& system) {
  Json coords = Json::array();
  for (const auto& c : system.coordinates()) {
    std::vector<std::string> members;
    for (PointIndex i : c.members) members.push_back(system.ambient()[i]);
    coords.push_back({{"id", c.id}, {"A", std::move(members)}, {"alpha", c.alpha}});
  }
  return {{"coords", std::move(coords)}};
}

CoordinateSystem system_from_json(const Json& doc, const FiniteMetric& universe) {
  return guarded("coordinate system", [&] {
    std::vector<Coordinate> coords;
    std::size_t counter = 0;
    for (const auto& c : doc.at("coords")) {
      Coordinate coord;
      coord.id = c.contains("id") ? c.at("id").get<std::string>() : "c" + std::to_string(counter);
      coord.members = point_set_from_ids(universe, c.at("A").get<std::vector<std::string>>());
      coord.alpha = c.at("alpha").get<double>();
      coords.push_back(std::move(coord));
      ++counter;
    }
    return CoordinateSystem(universe.ids(), std::move(coords));
  });
}

Json to_json(const ZSpace& z) {
  std::vector<std::string> ys;
  for (const auto& y : z.y_values()) ys.push_back(to_string(y));
  return {{"h", z.h()},
          {"m", z.m()},
          {"k", to_string(z.k())},
          {"eps", to_string(z.eps())},
          {"n", z.size()},
          {"y_values", std::move(ys)},
          {"diam_y", to_string(z.diam_y())},
          {"warnings", z.warnings()},
          {"tree", to_json(z.tree())},
          {"metric", to_json(z.metric())}};
}

ZSpace zspace_from_json(const Json& doc) {
  return guarded("space", [&] {
    return build_Z(doc.at("h").get<int>(), rational_from_json(doc.at("k")),
                   doc.at("m").get<int>(), rational_from_json(doc.at("eps")));
  });
}

Json to_json(const DistortionReport& report, const FiniteMetric& source) {
  auto pair = [&](PointPair p) { return Json::array({source.id(p.first), source.id(p.second)}); };
  Json out{{"expansion", real_to_json(report.expansion)},
           {"contraction_inverse", real_to_json(report.contraction_inverse)},
           {"distortion", real_to_json(report.distortion)},
           {"injective", report.injective},
           {"expansion_witness", pair(report.expansion_witness)},
           {"contraction_witness", pair(report.contraction_witness)}};
  if (report.exact_distortion) out["exact_distortion"] = to_string(*report.exact_distortion);
  return out;
}

Json to_json(const TailAnalysis& tails, const ZSpace& z) {
  std::vector<std::string> u_ids;
  for (PointIndex u : tails.U) u_ids.push_back(z.metric().id(u));
  std::vector<std::string> leaves;
  for (std::size_t x : tails.U_X) leaves.push_back(z.leaf_id(x));
  std::vector<std::string> zeta;
  for (const auto& value : tails.zeta) zeta.push_back(to_string(value));
  return {{"U", std::move(u_ids)}, {"U_X", std::move(leaves)}, {"zeta", std::move(zeta)},
          {"beta", tails.beta},    {"gamma", tails.gamma},      {"p", tails.p},
          {"warnings", tails.warnings}};
}

Json to_json(const LowerBoundReport& bounds) {
  return {{"beta", bounds.beta},
          {"gamma", bounds.gamma},
          {"beta_bound", bounds.beta_bound},
          {"gamma_bound", bounds.gamma_bound},
          {"inverse_bound", real_to_json(bounds.inverse_bound)},
          {"combined", real_to_json(bounds.combined)},
          {"gamma_regime", bounds.gamma_regime}};
}

Json to_json(const ExtractionResult& result, const ZSpace& z) {
  std::vector<std::string> u_ids;
  for (PointIndex u : result.U) u_ids.push_back(z.metric().id(u));
  auto leaf_ids = [&](const std::vector<std::size_t>& leaves) {
    std::vector<std::string> out;
    for (std::size_t x : leaves) out.push_back(z.leaf_id(x));
    return out;
  };
  return {{"U", std::move(u_ids)},
          {"S", leaf_ids(result.S)},
          {"chosen_leaves", leaf_ids(result.chosen)},
          {"rho", result.rho},
          {"eta", result.eta},
          {"h_hat", result.h_hat},
          {"h_hat_bound", result.h_hat_bound},
          {"skeleton", to_json(result.skeleton_tree)},
          {"pruned_skeleton", to_json(result.pruned_skeleton)}};
}

Json to_json(const CertificateReport& report) {
  Json pairs = Json::array();
  for (const auto& p : report.pairs) {
    pairs.push_back({{"x", p.x},
                     {"y", p.y},
                     {"rho", to_string(p.rho)},
                     {"sigma", to_string(p.sigma)},
                     {"ratio", to_string(Rational(p.rho / p.sigma))}});
  }
  return {{"factor", to_string(report.factor)},
          {"factor_value", to_double(report.factor)},
          {"hst_factor", to_string(report.hst_factor)},
          {"line_factor", to_string(report.line_factor)},
          {"distortion", to_string(report.distortion)},
          {"dominated", report.dominated},
          {"within_bound", report.within_bound},
          {"hst", to_json(report.hst)},
          {"sigma", to_json(report.sigma)},
          {"pairs", std::move(pairs)}};
}

std::vector<std::string> point_ids_from_json(const Json& doc) {
  return guarded("point list", [&] {
    if (doc.is_array()) return doc.get<std::vector<std::string>>();
    return doc.at("points").get<std::vector<std::string>>();
  });
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw InvalidArgument("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace fembed
