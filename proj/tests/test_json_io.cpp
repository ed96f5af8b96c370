#include "doctest.h"
#include "fembed/errors.hpp"
#include "fembed/json_io.hpp"

using fembed::Json;
using fembed::Rational;

TEST_SUITE("json") {
  TEST_CASE("metric round trip and validation") {
    const auto z = fembed::build_Z(2, 4, 2, Rational(1, 32));
    const Json doc = fembed::to_json(z.metric());
    CHECK(doc.at("dist").at(0).at(3) == "33/128");
    CHECK(fembed::metric_from_json(doc) == z.metric());

    const Json bad = Json::parse(R"({"points": ["a","b","c"], "dist": [["0","1","3"],["1","0","1"],["3","1","0"]]})");
    CHECK_THROWS_AS(fembed::metric_from_json(bad), fembed::TriangleViolation);
    CHECK_THROWS_AS(fembed::metric_from_json(Json::parse(R"({"points": ["a"]})")),
                    fembed::InvalidArgument);
    const Json numbers = Json::parse(R"({"points": ["a","b"], "dist": [[0, 0.5],[0.5, 0]]})");
    CHECK(fembed::metric_from_json(numbers).dist(0, 1) == Rational(1, 2));
  }

  TEST_CASE("image round trip") {
    const fembed::EmbeddingImage image(fembed::kInfinity, {"a", "b"}, {"x", "y"}, {{0, 1.5}, {2, -1}});
    const Json doc = fembed::to_json(image);
    CHECK(doc.at("p") == "inf");
    const auto back = fembed::image_from_json(doc);
    CHECK(back.points() == image.points());
    CHECK(back.coords(1) == image.coords(1));
    CHECK(back.p() == fembed::kInfinity);
  }

  TEST_CASE("tree round trip") {
    const auto x = fembed::build_X(3, 5);
    const auto back = fembed::tree_from_json(fembed::to_json(x.tree));
    CHECK(back.same_shape(x.tree));
    CHECK(fembed::to_json(back).at("delta").at("r") == "1");
    const Json t = Json::parse(R"({"root": "r", "edges": [["r","a"],["r","b"]], "delta": {"r": "3/2"}})");
    CHECK(*fembed::tree_from_json(t).delta(0) == Rational(3, 2));
  }

  TEST_CASE("coordinate system round trip") {
    const auto z = fembed::build_Z(2, 4, 2, Rational(1, 32));
    const auto system = fembed::bourgain_system(z.metric(), 4, 3, 2);
    const auto back = fembed::system_from_json(fembed::to_json(system), z.metric());
    REQUIRE(back.size() == system.size());
    for (std::size_t c = 0; c < back.size(); ++c) {
      CHECK(back.coordinates()[c].members == system.coordinates()[c].members);
      CHECK(back.coordinates()[c].alpha == system.coordinates()[c].alpha);
      CHECK(back.coordinates()[c].id == system.coordinates()[c].id);
    }
    const Json anon = Json::parse(R"({"coords": [{"A": ["00:0"], "alpha": 1.0}]})");
    CHECK(fembed::system_from_json(anon, z.metric()).size() == 1);
    const Json unknown = Json::parse(R"({"coords": [{"A": ["99:0"], "alpha": 1.0}]})");
    CHECK_THROWS_AS(fembed::system_from_json(unknown, z.metric()), fembed::InvalidArgument);
  }

  TEST_CASE("space round trip") {
    const auto z = fembed::build_Z(3, 4, 3, Rational(1, 128));
    const Json doc = fembed::to_json(z);
    CHECK(doc.at("n") == 24);
    const auto back = fembed::zspace_from_json(doc);
    CHECK(back.metric() == z.metric());
    CHECK(back.eps() == z.eps());
  }

  TEST_CASE("reports serialize") {
    const auto z = fembed::build_Z(2, 4, 3, Rational(1, 32));
    fembed::PointSet V(z.size());
    for (std::size_t i = 0; i < V.size(); ++i) V[i] = i;
    const auto extraction = fembed::extract_subset(z, V);
    const Json e = fembed::to_json(extraction, z);
    CHECK(e.at("h_hat") == 2);
    CHECK(e.at("U").size() == 8);
    const auto system = fembed::frechet_classical(z.metric());
    const auto tails = fembed::beta_gamma(system, extraction.U, z, 2);
    CHECK(fembed::to_json(tails, z).at("zeta").size() == system.size());
    const auto bounds = fembed::distortion_lower_bound(system, extraction.U, z, 2, extraction.h_hat);
    CHECK(fembed::to_json(bounds).contains("combined"));
    const auto image = fembed::evaluate_embedding(system, z.metric(), fembed::kInfinity);
    const Json d = fembed::to_json(fembed::distortion(z.metric(), image), z.metric());
    CHECK(d.at("exact_distortion") == "1");
    const auto cert = fembed::certify_l1dom(fembed::build_X(2, 4).metric);
    const Json c = fembed::to_json(cert);
    CHECK(c.at("pairs").size() == 6);
    CHECK(c.at("within_bound") == true);
  }

  TEST_CASE("point lists and files") {
    CHECK(fembed::point_ids_from_json(Json::parse(R"(["a","b"])")) == std::vector<std::string>{"a", "b"});
    CHECK(fembed::point_ids_from_json(Json::parse(R"({"points": ["c"]})")) == std::vector<std::string>{"c"});
    CHECK_THROWS_AS(fembed::point_ids_from_json(Json::parse("3")), fembed::InvalidArgument);
    CHECK_THROWS_AS(fembed::read_json_file("/nonexistent/x.json"), fembed::IoError);
    CHECK(fembed::real_to_json(fembed::kInfinity) == "inf");
    CHECK(fembed::real_to_json(2.5) == 2.5);
  }
}
