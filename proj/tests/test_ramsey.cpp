#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "fembed/construction.hpp"
#include "fembed/errors.hpp"
#include "fembed/frechet.hpp"
#include "fembed/ramsey.hpp"
#include "test_support.hpp"

using fembed::PointSet;
using fembed::Rational;

namespace {

fembed::ZSpace make_z(int h, int m) {
  return fembed::build_Z(h, 4, m, fembed::pow_int(Rational(4), -h) / 2);
}

PointSet random_valid_v(const fembed::ZSpace& z, std::mt19937_64& rng) {
  const std::size_t need = 2 * static_cast<std::size_t>(z.m()) + z.leaf_count() + 1;
  std::vector<std::size_t> all(z.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  std::shuffle(all.begin(), all.end(), rng);
  const std::size_t size = need + rng() % (z.size() - need + 1);
  all.resize(size);
  return fembed::make_point_set(all);
}

// The three guarantees of the extraction, checked from the output alone.
void check_invariants(const fembed::ZSpace& z, const PointSet& V,
                      const fembed::ExtractionResult& r) {
  std::map<std::size_t, int> per_tail;
  for (auto u : r.U) {
    CHECK(std::binary_search(V.begin(), V.end(), u));
    per_tail[z.leaf_of(u)]++;
  }
  for (const auto& [leaf, count] : per_tail) CHECK(count >= 2);

  std::vector<std::string> leaves;
  for (const auto& [leaf, count] : per_tail) leaves.push_back(z.leaf_id(leaf));
  const auto skel = fembed::skeleton(fembed::spanned_subtree(z.tree(), leaves));
  CHECK(fembed::is_complete_binary(skel, static_cast<std::size_t>(r.h_hat)));
  CHECK(per_tail.size() == (std::size_t{1} << r.h_hat));

  const double rho = std::pow(static_cast<double>(V.size() - z.leaf_count()) / z.m(), 1.0 / z.h()) - 1;
  CHECK(r.rho == doctest::Approx(rho));
  CHECK(r.eta == doctest::Approx(rho / (2 + rho)));
  const double bound = rho * z.h() / (6 * std::log2(2 / rho));
  CHECK(r.h_hat >= bound - 1e-12);
  if (bound > 0) CHECK(r.h_hat >= 1);
}

}  // namespace

TEST_SUITE("extract_subset") {
  TEST_CASE("thirteen of sixteen points") {
    const auto z = make_z(3, 2);
    PointSet V;
    for (std::size_t i = 0; i < 16; ++i) {
      if (i != 1 && i != 6 && i != 11) V.push_back(i);
    }
    const auto r = fembed::extract_subset(z, V);
    CHECK(r.rho == doctest::Approx(std::cbrt(2.5) - 1));
    CHECK(r.h_hat_bound == doctest::Approx(0.357 * 3 / (6 * std::log2(2 / 0.357))).epsilon(0.01));
    CHECK(r.h_hat >= 1);
    check_invariants(z, V, r);
    std::vector<std::size_t> expected_s;
    for (std::size_t leaf = 0; leaf < 8; ++leaf) {
      if (leaf != 0 && leaf != 3 && leaf != 5) expected_s.push_back(leaf);
    }
    CHECK(r.S == expected_s);
  }

  TEST_CASE("the whole space keeps the whole tree") {
    for (auto [h, m] : {std::pair{3, 2}, std::pair{2, 3}, std::pair{4, 2}}) {
      const auto z = make_z(h, m);
      PointSet V(z.size());
      for (std::size_t i = 0; i < V.size(); ++i) V[i] = i;
      const auto r = fembed::extract_subset(z, V);
      CHECK(r.S.size() == z.leaf_count());
      CHECK(r.h_hat == h);
      CHECK(r.U.size() == 2 * z.leaf_count());
      CHECK(r.pruned_skeleton.same_shape(z.tree()));
      CHECK(r.rho == doctest::Approx(std::pow(static_cast<double>(z.size() - z.leaf_count()) / m, 1.0 / h) - 1));
      for (auto u : r.U) CHECK(z.tail_of(u) < 2);
    }
  }

  TEST_CASE("mass in one cone stays in that cone") {
    const auto z = make_z(4, 3);
    PointSet V;
    for (std::size_t leaf = 0; leaf < 8; ++leaf) {
      for (int j = 0; j < 3; ++j) V.push_back(z.point(leaf, j));
    }
    V.push_back(z.point(12, 0));
    const auto r = fembed::extract_subset(z, V);
    for (auto u : r.U) CHECK(z.leaf_id(z.leaf_of(u))[0] == '0');
    check_invariants(z, V, r);
  }

  TEST_CASE("picks the smallest tail indices of V") {
    const auto z = make_z(2, 5);
    PointSet V;
    for (std::size_t leaf = 0; leaf < 4; ++leaf) {
      for (int j = 1; j < 5; ++j) V.push_back(z.point(leaf, j));
    }
    const auto r = fembed::extract_subset(z, V);
    for (auto u : r.U) CHECK(z.tail_of(u) != 0);
    for (auto u : r.U) CHECK(z.tail_of(u) < 3);
  }

  TEST_CASE("hypothesis") {
    const auto z = make_z(2, 2);
    PointSet V(8);
    for (std::size_t i = 0; i < 8; ++i) V[i] = i;
    CHECK_THROWS_AS(fembed::extract_subset(z, V), fembed::TooSmallV);
  }

  TEST_CASE("random V: invariants, induction bound, monotone S") {
    std::mt19937_64 rng(71);
    for (auto [h, m] : {std::pair{3, 2}, std::pair{4, 2}, std::pair{3, 4}}) {
      const auto z = make_z(h, m);
      for (int trial = 0; trial < 60; ++trial) {
        const auto V = random_valid_v(z, rng);
        const auto r = fembed::extract_subset(z, V);
        check_invariants(z, V, r);

        // Every skeleton leaf at depth lambda satisfies
        // |S| eta^lambda (1 - eta)^(h - lambda) <= 1.
        const auto& sk = r.pruned_skeleton;
        for (auto leaf : sk.leaves()) {
          const double lambda = static_cast<double>(sk.depth(leaf));
          CHECK(static_cast<double>(r.S.size()) * std::pow(r.eta, lambda) *
                    std::pow(1 - r.eta, h - lambda) <=
                1 + 1e-12);
        }

        PointSet bigger = V;
        bigger.push_back(rng() % z.size());
        bigger = fembed::make_point_set(bigger);
        CHECK(fembed::extract_subset(z, bigger).S.size() >= r.S.size());
      }
    }
  }
}

TEST_SUITE("brute_force_best_subset") {
  TEST_CASE("pairs and the full set") {
    const auto z = make_z(2, 2);
    const auto system = fembed::bourgain_system(z.metric(), 3, 4, 2);
    const auto image = fembed::evaluate_embedding(system, z.metric(), 2);
    const auto full = fembed::distortion(z.metric(), image);
    if (full.injective) {
      CHECK(fembed::brute_force_best_subset(image, z.metric(), 2).distortion == doctest::Approx(1));
    }
    const auto all = fembed::brute_force_best_subset(image, z.metric(), 8);
    CHECK(all.subset.size() == 8);
    CHECK(all.distortion == doctest::Approx(full.distortion));
  }

  TEST_CASE("guards") {
    const auto z = make_z(4, 2);
    const auto image = fembed::evaluate_embedding(fembed::frechet_classical(z.metric()), z.metric(), 1);
    CHECK_THROWS_AS(fembed::brute_force_best_subset(image, z.metric(), 16), fembed::CombinatorialBlowup);
    CHECK_THROWS_AS(fembed::brute_force_best_subset(image, z.metric(), 1), fembed::InvalidArgument);
    CHECK_THROWS_AS(fembed::brute_force_best_subset(image, z.metric(), 33), fembed::InvalidArgument);
  }
}
