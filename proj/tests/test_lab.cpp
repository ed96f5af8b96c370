#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fembed/errors.hpp"
#include "fembed/json_io.hpp"
#include "fembed/lab.hpp"

using fembed::ExperimentConfig;
using fembed::SubsetPolicy;

namespace {

ExperimentConfig base_config() {
  ExperimentConfig cfg;
  cfg.n_grid = {64};
  cfg.delta = 0.75;
  cfg.k = 4;
  cfg.p = 2;
  cfg.q = 8;
  cfg.seeds = {1};
  return cfg;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("fembed_lab_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_SUITE("run_experiment") {
  TEST_CASE("single row on n = 64") {
    const auto report = fembed::run_experiment(base_config());
    REQUIRE(report.rows.size() == 1);
    const auto& row = report.rows[0];
    CHECK(row.status == "ok");
    CHECK(row.n == 64);
    CHECK(row.h == 5);
    CHECK(row.m == 2);
    CHECK(row.h_hat == 5);
    CHECK(row.invariant_holds);
    CHECK(row.measured_distortion_on_U >= row.lower_bound_combined - fembed::kBoundTolerance);
    CHECK(row.lower_bound_combined > 0);
    CHECK(row.ratio_to_log_n == doctest::Approx(row.measured_distortion_full / 6));
    CHECK_FALSE(report.has_errors());
  }

  TEST_CASE("grid order and seeds") {
    auto cfg = base_config();
    cfg.n_grid = {64, 32};
    cfg.seeds = {3, 4};
    const auto report = fembed::run_experiment(cfg);
    REQUIRE(report.rows.size() == 4);
    CHECK(report.rows[0].n == 64);
    CHECK(report.rows[1].seed == 4);
    CHECK(report.rows[2].n == 32);
  }

  TEST_CASE("small random V is a row-level error") {
    auto cfg = base_config();
    cfg.subset_policy = SubsetPolicy::kExtracted;
    const auto report = fembed::run_experiment(cfg);
    REQUIRE(report.rows.size() == 1);
    CHECK(report.rows[0].status == "TooSmallV");
    CHECK(report.has_errors());
  }

  TEST_CASE("brute-force policy") {
    auto cfg = base_config();
    cfg.n_grid = {16};
    cfg.delta = 1.0;
    cfg.subset_policy = SubsetPolicy::kBruteForce;
    cfg.size_exponent = 1.0;
    const auto report = fembed::run_experiment(cfg);
    REQUIRE(report.rows.size() == 1);
    CHECK(report.rows[0].status == "ok");
    CHECK(report.rows[0].measured_distortion_on_U >=
          report.rows[0].lower_bound_combined - fembed::kBoundTolerance);
  }

  TEST_CASE("configuration errors") {
    auto cfg = base_config();
    cfg.n_grid.clear();
    CHECK_THROWS_AS(fembed::run_experiment(cfg), fembed::ParameterOutOfRange);
    cfg = base_config();
    cfg.delta = 0.5;
    CHECK_THROWS_AS(fembed::run_experiment(cfg), fembed::ParameterOutOfRange);
    cfg = base_config();
    cfg.p = fembed::kInfinity;
    CHECK_THROWS_AS(fembed::run_experiment(cfg), fembed::PInfinite);
    cfg = base_config();
    cfg.seeds.clear();
    CHECK_THROWS_AS(fembed::run_experiment(cfg), fembed::ParameterOutOfRange);
    CHECK_THROWS_AS(fembed::policy_from_name("some"), fembed::ParameterOutOfRange);
    CHECK(fembed::policy_from_name(fembed::policy_name(SubsetPolicy::kBruteForce)) ==
          SubsetPolicy::kBruteForce);
  }
}

TEST_SUITE("report serialization") {
  TEST_CASE("empty report is a header") {
    const fembed::ExperimentReport report{base_config(), {}};
    const auto csv = fembed::report_csv(report);
    CHECK(csv ==
          "n,h,m,k,p,seed,beta,gamma,h_hat,lower_bound_combined,measured_distortion_on_U,"
          "measured_distortion_full,ratio_to_log_n,invariant_holds,status\n");
    CHECK(fembed::parse_report_csv(csv).empty());
  }

  TEST_CASE("round trip and determinism") {
    auto cfg = base_config();
    cfg.seeds = {1, 2};
    const auto report = fembed::run_experiment(cfg);
    const auto csv = fembed::report_csv(report);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
    const auto rows = fembed::parse_report_csv(csv);
    REQUIRE(rows.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(rows[i].n == report.rows[i].n);
      CHECK(rows[i].seed == report.rows[i].seed);
      CHECK(rows[i].beta == doctest::Approx(report.rows[i].beta).epsilon(1e-11));
      CHECK(rows[i].lower_bound_combined ==
            doctest::Approx(report.rows[i].lower_bound_combined).epsilon(1e-11));
      CHECK(rows[i].invariant_holds == report.rows[i].invariant_holds);
      CHECK(rows[i].status == report.rows[i].status);
    }
    CHECK(fembed::report_csv(fembed::run_experiment(cfg)) == csv);
  }

  TEST_CASE("files and manifest") {
    const auto dir = scratch_dir("serialize");
    const auto report = fembed::run_experiment(base_config());
    const auto path = (dir / "report.csv").string();
    fembed::serialize_report(report, path);
    CHECK(fembed::manifest_path_for(path) == (dir / "report.manifest.json").string());
    CHECK(slurp(path) == fembed::report_csv(report));
    const auto manifest = fembed::Json::parse(slurp(dir / "report.manifest.json"));
    CHECK(manifest.at("library_version") == fembed::kLibraryVersion);
    CHECK(manifest.at("config").at("n_grid") == fembed::Json::array({64}));
    CHECK(manifest.at("config").at("subset_policy") == "full");
    CHECK(manifest.at("columns").size() == 15);
    CHECK(manifest.contains("generated_at"));
    CHECK_THROWS_AS(fembed::serialize_report(report, (dir / "missing" / "r.csv").string()),
                    fembed::IoError);
  }
}
