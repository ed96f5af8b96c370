#ifndef FEMBED_LAB_HPP_
#define FEMBED_LAB_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fembed/rational.hpp"

namespace fembed {

inline constexpr const char* kLibraryVersion = "0.1.0";

enum class SubsetPolicy {
  kFull,        // V = the whole space
  kExtracted,   // V uniformly random of size ceil(n^delta)
  kBruteForce,  // V = the distortion-minimising subset of size ceil(n^size_exponent)
};

struct ExperimentConfig {
  std::vector<std::size_t> n_grid;
  double delta = 0.75;
  Rational k = 4;
  double p = 2;
  int q = 8;
  std::vector<std::uint64_t> seeds{1};
  SubsetPolicy subset_policy = SubsetPolicy::kFull;
  double size_exponent = 0.75;  // brute-force policy only

  // Throws ParameterOutOfRange on an empty grid, delta outside (1/2, 1], k <= 1,
  // p outside [1, 64], q < 1 or no seeds.
  void validate() const;
};

struct ExperimentRow {
  std::size_t n = 0;  // achieved size 2^h * m
  int h = 0;
  int m = 0;
  Rational k;
  double p = 0;
  std::uint64_t seed = 0;
  double beta = 0;
  double gamma = 0;
  int h_hat = 0;
  double lower_bound_combined = 0;
  double measured_distortion_on_U = 0;
  double measured_distortion_full = 0;
  double ratio_to_log_n = 0;
  bool invariant_holds = false;  // distortion on U >= combined bound - 1e-9
  std::string status = "ok";     // or the error code that stopped the row
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<ExperimentRow> rows;

  bool has_errors() const;
};

inline constexpr double kBoundTolerance = 1e-9;

// One row per (n, seed) in grid order. Row-level failures are recorded in the
// row's status and the run continues.
ExperimentReport run_experiment(const ExperimentConfig& config);

std::string report_csv(const ExperimentReport& report);
std::string report_manifest(const ExperimentReport& report);

// Writes the CSV to `path` and the manifest next to it
// (report.csv -> report.manifest.json). Throws IoError.
void serialize_report(const ExperimentReport& report, const std::string& path);

std::string manifest_path_for(const std::string& csv_path);

// Inverse of report_csv for the numeric columns; used for round trips.
std::vector<ExperimentRow> parse_report_csv(const std::string& csv);

const char* policy_name(SubsetPolicy policy);
SubsetPolicy policy_from_name(const std::string& name);

}  // namespace fembed

#endif  // FEMBED_LAB_HPP_
