#include "fembed/lab.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <numeric>
#include <sstream>

#include "fembed/construction.hpp"
#include "fembed/errors.hpp"
#include "fembed/frechet.hpp"
#include "fembed/json_io.hpp"
#include "fembed/ramsey.hpp"

namespace fembed {

namespace {

constexpr const char* kColumns[] = {
    "n",    "h",     "m",     "k",
    "p",    "seed",  "beta",  "gamma",
    "h_hat", "lower_bound_combined", "measured_distortion_on_U", "measured_distortion_full",
    "ratio_to_log_n", "invariant_holds", "status"};

std::string format_real(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

double parse_real(const std::string& text) {
  if (text == "inf") return kInfinity;
  if (text == "-inf") return -kInfinity;
  if (text.empty()) return 0.0;
  return std::stod(text);
}

PointSet random_subset(std::size_t n, std::size_t size, std::uint64_t seed) {
  std::vector<PointIndex> all(n);
  std::iota(all.begin(), all.end(), PointIndex{0});
  Rng rng(seed);
  // Partial Fisher-Yates with the portable index draw.
  for (std::size_t i = 0; i < size && i + 1 < n; ++i) {
    std::swap(all[i], all[i + uniform_index(rng, n - i)]);
  }
  all.resize(std::min(size, n));
  return make_point_set(std::move(all));
}

ExperimentRow run_row(const ExperimentConfig& cfg, std::size_t n_target, std::uint64_t seed) {
  ExperimentRow row;
  row.k = cfg.k;
  row.p = cfg.p;
  row.seed = seed;
  try {
    const ZParameters params = choose_params(n_target, cfg.delta, cfg.k, cfg.p);
    row.n = params.n;
    row.h = params.h;
    row.m = params.m;
    const ZSpace z = build_Z(params.h, cfg.k, params.m, params.eps);
    const FiniteMetric& metric = z.metric();
    const CoordinateSystem system = bourgain_system(metric, seed, cfg.q, cfg.p);
    const EmbeddingImage image = evaluate_embedding(system, metric, cfg.p);
    row.measured_distortion_full = distortion(metric, image).distortion;
    row.ratio_to_log_n = row.measured_distortion_full / std::log2(static_cast<double>(row.n));

    PointSet V;
    const std::size_t n = metric.size();
    switch (cfg.subset_policy) {
      case SubsetPolicy::kFull:
        V.resize(n);
        std::iota(V.begin(), V.end(), PointIndex{0});
        break;
      case SubsetPolicy::kExtracted: {
        const auto size = static_cast<std::size_t>(
            std::ceil(std::pow(static_cast<double>(n), cfg.delta) - 1e-9));
        V = random_subset(n, size, seed ^ 0x9e3779b97f4a7c15ULL);
        break;
      }
      case SubsetPolicy::kBruteForce: {
        const auto size = static_cast<std::size_t>(
            std::ceil(std::pow(static_cast<double>(n), cfg.size_exponent) - 1e-9));
        V = make_point_set(brute_force_best_subset(image, metric, size).subset);
        break;
      }
    }

    const ExtractionResult extraction = extract_subset(z, V);
    row.h_hat = extraction.h_hat;
    const TailAnalysis tails = beta_gamma(system, extraction.U, z, cfg.p);
    row.beta = tails.beta;
    row.gamma = tails.gamma;
    const LowerBoundReport bounds =
        lower_bound_from_aggregates(tails.beta, tails.gamma, cfg.p, extraction.h_hat, z);
    row.lower_bound_combined = bounds.combined;
    row.measured_distortion_on_U =
        distortion(metric.restrict(extraction.U), image.restrict(extraction.U)).distortion;
    row.invariant_holds =
        row.measured_distortion_on_U >= row.lower_bound_combined - kBoundTolerance;
  } catch (const Error& e) {
    row.status = e.code();
  }
  return row;
}

}  // namespace

const char* policy_name(SubsetPolicy policy) {
  switch (policy) {
    case SubsetPolicy::kFull:
      return "full";
    case SubsetPolicy::kExtracted:
      return "extracted";
    case SubsetPolicy::kBruteForce:
      return "brute_force";
  }
  return "full";
}

SubsetPolicy policy_from_name(const std::string& name) {
  if (name == "full") return SubsetPolicy::kFull;
  if (name == "extracted") return SubsetPolicy::kExtracted;
  if (name == "brute_force") return SubsetPolicy::kBruteForce;
  throw ParameterOutOfRange("unknown subset policy '" + name + "'");
}

void ExperimentConfig::validate() const {
  if (n_grid.empty()) throw ParameterOutOfRange("the size grid is empty");
  if (!(delta > 0.5 && delta <= 1.0)) throw ParameterOutOfRange("delta must lie in (1/2, 1]");
  if (k <= 1) throw ParameterOutOfRange("k must exceed 1");
  if (p == kInfinity) throw PInfinite("experiments need a finite p");
  check_exponent(p);
  if (q < 1) throw ParameterOutOfRange("q must be at least 1");
  if (seeds.empty()) throw ParameterOutOfRange("at least one seed is required");
  if (subset_policy == SubsetPolicy::kBruteForce && !(size_exponent > 0 && size_exponent <= 1)) {
    throw ParameterOutOfRange("size exponent must lie in (0, 1]");
  }
}

bool ExperimentReport::has_errors() const {
  for (const auto& row : rows) {
    if (row.status != "ok") return true;
  }
  return false;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  ExperimentReport report{config, {}};
  for (std::size_t n : config.n_grid) {
    for (std::uint64_t seed : config.seeds) report.rows.push_back(run_row(config, n, seed));
  }
  return report;
}

std::string report_csv(const ExperimentReport& report) {
  std::ostringstream out;
  for (std::size_t c = 0; c < std::size(kColumns); ++c) out << (c ? "," : "") << kColumns[c];
  out << "\n";
  for (const auto& r : report.rows) {
    out << r.n << "," << r.h << "," << r.m << "," << format_real(to_double(r.k)) << ","
        << format_real(r.p) << "," << r.seed << "," << format_real(r.beta) << ","
        << format_real(r.gamma) << "," << r.h_hat << "," << format_real(r.lower_bound_combined)
        << "," << format_real(r.measured_distortion_on_U) << ","
        << format_real(r.measured_distortion_full) << "," << format_real(r.ratio_to_log_n) << ","
        << (r.invariant_holds ? "true" : "false") << "," << r.status << "\n";
  }
  return out.str();
}

std::vector<ExperimentRow> parse_report_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::vector<ExperimentRow> rows;
  if (!std::getline(in, line)) return rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream fields(line);
    std::string cell;
    while (std::getline(fields, cell, ',')) cells.push_back(cell);
    if (cells.size() != std::size(kColumns)) {
      throw InvalidArgument("report row has " + std::to_string(cells.size()) + " cells");
    }
    ExperimentRow r;
    r.n = std::stoul(cells[0]);
    r.h = std::stoi(cells[1]);
    r.m = std::stoi(cells[2]);
    r.k = Rational(parse_real(cells[3]));
    r.p = parse_real(cells[4]);
    r.seed = std::stoull(cells[5]);
    r.beta = parse_real(cells[6]);
    r.gamma = parse_real(cells[7]);
    r.h_hat = std::stoi(cells[8]);
    r.lower_bound_combined = parse_real(cells[9]);
    r.measured_distortion_on_U = parse_real(cells[10]);
    r.measured_distortion_full = parse_real(cells[11]);
    r.ratio_to_log_n = parse_real(cells[12]);
    r.invariant_holds = cells[13] == "true";
    r.status = cells[14];
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string report_manifest(const ExperimentReport& report) {
  const auto& cfg = report.config;
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[32];
  std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  Json manifest{
      {"library", "fembed"},
      {"library_version", kLibraryVersion},
      {"generated_at", stamp},
      {"config",
       {{"n_grid", cfg.n_grid},
        {"delta", cfg.delta},
        {"k", to_string(cfg.k)},
        {"p", cfg.p},
        {"q", cfg.q},
        {"seeds", cfg.seeds},
        {"subset_policy", policy_name(cfg.subset_policy)},
        {"size_exponent", cfg.size_exponent}}},
      {"columns", std::vector<std::string>(std::begin(kColumns), std::end(kColumns))},
      {"rows", report.rows.size()},
      {"row_errors", report.has_errors()},
      {"note",
       "lower_bound_combined is the bound every nonnegative Frechet embedding obeys on the "
       "extracted subset U, evaluated for the sampled Bourgain system of each row. It is not "
       "a minimum over all Frechet embeddings."}};
  return manifest.dump(2) + "\n";
}

std::string manifest_path_for(const std::string& csv_path) {
  std::filesystem::path path(csv_path);
  path.replace_extension(".manifest.json");
  return path.string();
}

void serialize_report(const ExperimentReport& report, const std::string& path) {
  write_text_file(path, report_csv(report));
  write_text_file(manifest_path_for(path), report_manifest(report));
}

}  // namespace fembed
