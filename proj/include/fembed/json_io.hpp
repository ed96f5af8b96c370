#ifndef FEMBED_JSON_IO_HPP_
#define FEMBED_JSON_IO_HPP_

#include <string>

#include "json.hpp"

#include "fembed/construction.hpp"
#include "fembed/frechet.hpp"
#include "fembed/l1dom.hpp"
#include "fembed/metric.hpp"
#include "fembed/ramsey.hpp"
#include "fembed/tree.hpp"

namespace fembed {

using Json = nlohmann::json;

// {"points": [ids], "dist": [["p/q", ...], ...]}
Json to_json(const FiniteMetric& metric);
// Runs full validation; malformed documents raise InvalidArgument.
FiniteMetric metric_from_json(const Json& doc);

// {"p": value | "inf", "coordinate_ids": [...], "coords": {id: [floats]}}
Json to_json(const EmbeddingImage& image);
EmbeddingImage image_from_json(const Json& doc);

// {"root": id, "edges": [[parent, child]], "delta": {id: "p/q"}}, plus
// "hst_parameter" when the tree carries one.
Json to_json(const WeightedRootedTree& tree);
WeightedRootedTree tree_from_json(const Json& doc);

// {"coords": [{"id": ..., "A": [ids], "alpha": float}]}
Json to_json(const CoordinateSystem& system);
CoordinateSystem system_from_json(const Json& doc, const FiniteMetric& universe);

// Parameters, tail values, tree and metric. Reading rebuilds the space from
// the parameters.
Json to_json(const ZSpace& z);
ZSpace zspace_from_json(const Json& doc);

Json to_json(const DistortionReport& report, const FiniteMetric& source);
Json to_json(const TailAnalysis& tails, const ZSpace& z);
Json to_json(const LowerBoundReport& bounds);
Json to_json(const ExtractionResult& result, const ZSpace& z);
Json to_json(const CertificateReport& report);

// Point ids as a list, or {"points": [...]}.
std::vector<std::string> point_ids_from_json(const Json& doc);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// "inf" for infinity, a number otherwise.
Json real_to_json(double value);

}  // namespace fembed

#endif  // FEMBED_JSON_IO_HPP_
