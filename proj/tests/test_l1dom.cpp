#include <random>
#include <set>

#include "doctest.h"
#include "fembed/construction.hpp"
#include "fembed/errors.hpp"
#include "fembed/l1dom.hpp"
#include "fembed/tree.hpp"
#include "test_support.hpp"

using fembed::Rational;
using fembed::WeightedRootedTree;

namespace {

const Rational kThreeEighths(3, 8);

WeightedRootedTree star(const Rational& delta = 1) {
  return WeightedRootedTree::from_edges("r", {{"r", "x"}, {"r", "y"}}, {{"r", delta}});
}

WeightedRootedTree two_level(const Rational& scale = 1) {
  return WeightedRootedTree::from_edges("r", {{"r", "u"}, {"u", "a"}, {"u", "b"}, {"r", "c"}},
                                        {{"r", 4 * scale}, {"u", scale}});
}

fembed::FiniteMetric metric_of(const testsupport::RandomUltrametric& u) {
  return fembed::FiniteMetric::validate(u.dist, u.ids);
}

}  // namespace

TEST_SUITE("line embeddings") {
  TEST_CASE("star: every sign pattern") {
    const auto t = star();
    std::set<Rational> gaps;
    for (int sx : {-1, 1}) {
      for (int sy : {-1, 1}) {
        std::vector<int> signs(t.size(), 0);
        signs[t.index_of("x")] = sx;
        signs[t.index_of("y")] = sy;
        const auto e = fembed::line_embedding_with_signs(t, signs);
        CHECK(e.dominated);
        gaps.insert(abs(e.phi[0] - e.phi[1]));
      }
    }
    CHECK(gaps == std::set<Rational>{Rational(0), Rational(3, 4)});
  }

  TEST_CASE("two-level tree: worst pattern") {
    const auto t = two_level();
    Rational worst = 0;
    const auto edges = testsupport::edges_below_lca(t, t.index_of("a"), t.index_of("c"));
    CHECK(edges.size() == 3);
    for (int mask = 0; mask < 8; ++mask) {
      std::vector<int> signs(t.size(), 0);
      for (int e = 0; e < 3; ++e) signs[edges[e]] = (mask >> e) & 1 ? 1 : -1;
      signs[t.index_of("b")] = 1;
      const auto e = fembed::line_embedding_with_signs(t, signs);
      CHECK(e.dominated);
      worst = std::max(worst, Rational(abs(e.phi[0] - e.phi[2])));
    }
    CHECK(worst == Rational(27, 8));
  }

  TEST_CASE("phi matches a parent walk") {
    std::mt19937_64 rng(73);
    for (int trial = 0; trial < 20; ++trial) {
      const auto u = testsupport::random_ultrametric(12, rng);
      const auto t = fembed::ultrametric_to_k_hst(metric_of(u), 4);
      const auto e = fembed::sample_line_embedding(t, trial);
      const auto leaves = t.leaves();
      REQUIRE(e.phi.size() == leaves.size());
      for (std::size_t i = 0; i < leaves.size(); ++i) {
        CHECK(e.phi[i] == testsupport::phi_by_walk(t, leaves[i], e.signs, kThreeEighths));
        CHECK(e.leaves[i] == t.id(leaves[i]));
      }
      CHECK(e.dominated);
      const auto line = e.line_metric();
      for (std::size_t i = 0; i < leaves.size(); ++i) {
        for (std::size_t j = 0; j < leaves.size(); ++j) CHECK(line.dist(i, j) == abs(e.phi[i] - e.phi[j]));
      }
    }
  }

  TEST_CASE("single leaf and label errors") {
    const auto single = WeightedRootedTree::from_edges("x", {});
    const auto e = fembed::sample_line_embedding(single, 1);
    CHECK(e.phi.size() == 1);
    CHECK(e.dominated);
    CHECK_THROWS_AS(fembed::sample_line_embedding(
                        WeightedRootedTree::from_edges("r", {{"r", "x"}, {"r", "y"}}), 1),
                    fembed::MissingLabel);
  }

  TEST_CASE("sampling is seeded") {
    const auto t = fembed::ultrametric_to_k_hst(fembed::FiniteMetric::validate(
                                                    testsupport::Matrix{{0, 1, 4}, {1, 0, 4}, {4, 4, 0}},
                                                    {"a", "b", "c"}),
                                                4);
    CHECK(fembed::sample_line_embedding(t, 5).signs == fembed::sample_line_embedding(t, 5).signs);
  }
}

TEST_SUITE("expected_line_metric") {
  TEST_CASE("hand-enumerable instances") {
    const auto s = fembed::expected_line_metric(star());
    CHECK(s.dist(0, 1) == kThreeEighths);
    const auto t = fembed::expected_line_metric(two_level());
    CHECK(t.dist(t.index_of("a"), t.index_of("c")) == Rational(27, 16));
    CHECK(Rational(4) / t.dist(t.index_of("a"), t.index_of("c")) == Rational(64, 27));
    CHECK(t.dist(t.index_of("a"), t.index_of("b")) == kThreeEighths);
  }

  TEST_CASE("doubling the labels doubles the expectation") {
    const auto one = fembed::expected_line_metric(two_level(1));
    const auto two = fembed::expected_line_metric(two_level(2));
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) CHECK(two.dist(i, j) == 2 * one.dist(i, j));
    }
  }

  TEST_CASE("matches full enumeration, dominated, metric, quarter bound") {
    std::mt19937_64 rng(79);
    for (int trial = 0; trial < 25; ++trial) {
      const auto u = testsupport::random_ultrametric(3 + trial % 14, rng);
      const auto t = fembed::ultrametric_to_k_hst(metric_of(u), 4);
      const auto sigma = fembed::expected_line_metric(t);
      const auto rho = fembed::hst_metric(t);
      const auto leaves = t.leaves();
      for (std::size_t i = 0; i < leaves.size(); ++i) {
        for (std::size_t j = i + 1; j < leaves.size(); ++j) {
          const auto oracle = testsupport::enumerate_pair(t, leaves[i], leaves[j], kThreeEighths);
          CHECK(sigma.dist(i, j) == oracle.expectation);
          CHECK(oracle.maximum <= rho.dist(i, j));
          CHECK(4 * sigma.dist(i, j) >= rho.dist(i, j));
        }
      }
      CHECK(testsupport::is_metric(testsupport::matrix_of(sigma)));
    }
  }

  TEST_CASE("path guard") {
    WeightedRootedTree::EdgeList edges;
    std::map<std::string, Rational> delta;
    std::string prev = "v0";
    Rational label = 1;
    // A caterpillar deep enough that some pair has more than the allowed
    // number of non-cancelling edges.
    for (int i = 1; i <= 62; ++i) {
      const std::string v = "v" + std::to_string(i);
      delta[prev] = label;
      edges.emplace_back(prev, v);
      edges.emplace_back(prev, "w" + std::to_string(i));
      label /= 4;
      prev = v;
    }
    const auto t = WeightedRootedTree::from_edges("v0", edges, delta);
    CHECK_THROWS_AS(fembed::expected_line_metric(t), fembed::PathTooLong);
  }
}

TEST_SUITE("monte_carlo_combination") {
  TEST_CASE("convex weights, dominated components, average") {
    const auto t = two_level();
    const auto c = fembed::monte_carlo_combination(t, 64, 3);
    REQUIRE(c.components.size() == 64);
    Rational total = 0;
    for (const auto& w : c.weights) total += w;
    CHECK(total == 1);
    const auto rho = fembed::hst_metric(t);
    for (const auto& comp : c.components) {
      for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) CHECK(comp.dist(i, j) <= rho.dist(i, j));
      }
    }
    Rational avg = 0;
    for (std::size_t s = 0; s < 64; ++s) avg += c.weights[s] * c.components[s].dist(0, 2);
    CHECK(c.averaged.dist(0, 2) == avg);
    const auto again = fembed::monte_carlo_combination(t, 64, 3);
    CHECK(again.averaged == c.averaged);
  }
}

TEST_SUITE("certify_l1dom") {
  TEST_CASE("4-HST input with power-of-4 levels") {
    const auto x = fembed::build_X(3, 4);
    const auto r = fembed::certify_l1dom(x.metric);
    CHECK(r.hst_factor == 1);
    CHECK(r.factor == r.line_factor);
    CHECK(r.line_factor <= 4);
    CHECK(r.dominated);
    CHECK(r.within_bound);
  }

  TEST_CASE("equilateral gives 8/3") {
    for (std::size_t n : {2u, 3u, 6u}) {
      testsupport::Matrix d(n, std::vector<Rational>(n, 1));
      for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
      const auto r = fembed::certify_l1dom(fembed::FiniteMetric::validate(d, testsupport::numbered_ids(n)));
      CHECK(r.factor == Rational(8, 3));
      for (const auto& p : r.pairs) CHECK(p.sigma == kThreeEighths);
    }
  }

  TEST_CASE("random ultrametrics stay within 16") {
    std::mt19937_64 rng(83);
    for (int trial = 0; trial < 20; ++trial) {
      const auto u = testsupport::random_ultrametric(2 + trial, rng);
      const auto m = metric_of(u);
      const auto r = fembed::certify_l1dom(m);
      CHECK(r.factor <= 16);
      CHECK(r.hst_factor < 4);
      CHECK(r.line_factor <= 4);
      CHECK(r.dominated);
      CHECK(r.within_bound);
      for (const auto& p : r.pairs) {
        CHECK(p.sigma <= p.rho);
        CHECK(p.rho == m.dist(m.index_of(p.x), m.index_of(p.y)));
      }
    }
  }

  TEST_CASE("scaling by powers of four keeps the factor") {
    std::mt19937_64 rng(89);
    for (int trial = 0; trial < 10; ++trial) {
      auto u = testsupport::random_ultrametric(8, rng);
      const auto base = fembed::certify_l1dom(metric_of(u));
      for (auto& row : u.dist) {
        for (auto& v : row) v *= 16;
      }
      const auto scaled = fembed::certify_l1dom(metric_of(u));
      CHECK(scaled.factor == base.factor);
      CHECK(scaled.line_factor == base.line_factor);
    }
  }

  TEST_CASE("Monte Carlo mode and errors") {
    const auto x = fembed::build_X(2, 4);
    const auto r = fembed::certify_l1dom(x.metric, fembed::CertifyMode::kMonteCarlo, 200, 7);
    CHECK(r.dominated);
    CHECK(r.factor > 0);
    const testsupport::Matrix d{{0, 1, 2}, {1, 0, 1}, {2, 1, 0}};
    CHECK_THROWS_AS(fembed::certify_l1dom(fembed::FiniteMetric::validate(d, {"a", "b", "c"})),
                    fembed::NotUltrametric);
  }
}
