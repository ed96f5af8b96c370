// Command-line front end: construct, embed, extract, bounds, l1dom, experiment.
//
// Exit codes: 0 on success, 1 on configuration or input errors, 2 when an
// experiment finished but some rows failed.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fembed/construction.hpp"
#include "fembed/errors.hpp"
#include "fembed/frechet.hpp"
#include "fembed/json_io.hpp"
#include "fembed/l1dom.hpp"
#include "fembed/lab.hpp"
#include "fembed/ramsey.hpp"

namespace {

using fembed::Json;

struct GlobalOptions {
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "json";
};

void emit(const GlobalOptions& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
  } else {
    fembed::write_text_file(g.out, text);
  }
}

void emit_json(const GlobalOptions& g, const Json& doc) { emit(g, doc.dump(2) + "\n"); }

// A space file is either a serialized amalgam space or a plain metric.
struct LoadedSpace {
  std::optional<fembed::ZSpace> z;
  std::optional<fembed::FiniteMetric> metric;
  const fembed::FiniteMetric& get() const { return z ? z->metric() : *metric; }
};

LoadedSpace load_space(const std::string& path) {
  Json doc = fembed::read_json_file(path);
  LoadedSpace out;
  if (doc.contains("h")) {
    out.z = fembed::zspace_from_json(doc);
  } else {
    out.metric = fembed::metric_from_json(doc);
  }
  return out;
}

fembed::ZSpace require_z(const std::string& path) {
  LoadedSpace s = load_space(path);
  if (!s.z) throw fembed::InvalidArgument("'" + path + "' is not a serialized amalgam space");
  return std::move(*s.z);
}

double parse_p(const std::string& text) {
  if (text == "inf" || text == "infinity") return fembed::kInfinity;
  return std::stod(text);
}

struct SystemOptions {
  std::string kind = "bourgain";
  std::string file;
  int q = 8;
  std::string p = "2";
};

fembed::CoordinateSystem make_system(const SystemOptions& opt, const GlobalOptions& g,
                                     const fembed::FiniteMetric& metric) {
  if (opt.kind == "classical") return fembed::frechet_classical(metric);
  if (opt.kind == "bourgain") return fembed::bourgain_system(metric, g.seed, opt.q, parse_p(opt.p));
  if (opt.kind == "file") {
    if (opt.file.empty()) throw fembed::InvalidArgument("--system file needs --coords");
    return fembed::system_from_json(fembed::read_json_file(opt.file), metric);
  }
  throw fembed::InvalidArgument("unknown system '" + opt.kind + "'");
}

template <typename T>
std::vector<T> parse_list(const std::string& text) {
  std::vector<T> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    if constexpr (std::is_same_v<T, std::size_t>) {
      out.push_back(static_cast<std::size_t>(std::stoull(item)));
    } else {
      out.push_back(static_cast<T>(std::stoull(item)));
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frechet embedding laboratory"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOptions g;
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--out", g.out, "Output file (stdout when omitted)");
  app.add_option("--format", g.format, "Output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  // construct
  auto* construct = app.add_subcommand("construct", "Build the amalgam space and print it as JSON");
  construct->set_help_flag("--help", "Print this help message and exit");
  int h = 3, m = 2;
  std::string k_text = "4", eps_text;
  std::size_t n_target = 0;
  double delta = 0.75;
  construct->add_option("--h", h, "Tree height")->capture_default_str();
  construct->add_option("--k", k_text, "Level ratio k > 1 (rational)")->capture_default_str();
  construct->add_option("--m", m, "Tail length")->capture_default_str();
  construct->add_option("--eps", eps_text, "Tail scale (default k^{-h}/2)");
  construct->add_option("--n", n_target, "Target size; derives h, m and eps");
  construct->add_option("--delta", delta, "Subset exponent used with --n")->capture_default_str();

  // embed
  auto* embed = app.add_subcommand("embed", "Evaluate a Frechet embedding and its distortion");
  std::string space_path;
  SystemOptions sys;
  embed->add_option("--space", space_path, "Space or metric JSON")->required();
  embed->add_option("--system", sys.kind, "classical, bourgain or file")
      ->check(CLI::IsMember({"classical", "bourgain", "file"}))
      ->capture_default_str();
  embed->add_option("--coords", sys.file, "Coordinate system JSON for --system file");
  embed->add_option("--p", sys.p, "Exponent in [1, 64] or inf")->capture_default_str();
  embed->add_option("--q", sys.q, "Bourgain sets per scale")->capture_default_str();

  // extract
  auto* extract = app.add_subcommand("extract", "Extract the structured subset U from V");
  std::string subset_path;
  extract->add_option("--space", space_path, "Space JSON")->required();
  extract->add_option("--subset", subset_path, "JSON list of point ids (default: all points)");

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Tail analysis and distortion lower bounds on U");
  bounds->add_option("--space", space_path, "Space JSON")->required();
  bounds->add_option("--subset", subset_path, "JSON list of point ids (default: all points)");
  bounds->add_option("--system", sys.kind, "classical, bourgain or file")
      ->check(CLI::IsMember({"classical", "bourgain", "file"}))
      ->capture_default_str();
  bounds->add_option("--coords", sys.file, "Coordinate system JSON for --system file");
  bounds->add_option("--p", sys.p, "Finite exponent in [1, 64]")->capture_default_str();
  bounds->add_option("--q", sys.q, "Bourgain sets per scale")->capture_default_str();

  // l1dom
  auto* l1dom = app.add_subcommand("l1dom", "Certify an ultrametric against averaged line metrics");
  std::string metric_path, mode = "exact";
  std::size_t samples = 256;
  l1dom->add_option("--metric", metric_path, "Ultrametric JSON")->required();
  l1dom->add_option("--mode", mode, "exact or mc")
      ->check(CLI::IsMember({"exact", "mc"}))
      ->capture_default_str();
  l1dom->add_option("--samples", samples, "Monte Carlo samples")->capture_default_str();

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Run a parameter grid and write a report");
  std::string grid_text = "64,128,256,512", seeds_text, policy = "full", p_text = "2";
  double size_exponent = 0.75;
  int q = 8;
  experiment->add_option("--n", grid_text, "Comma-separated target sizes")->capture_default_str();
  experiment->add_option("--delta", delta, "Subset exponent in (1/2, 1]")->capture_default_str();
  experiment->add_option("--k", k_text, "Level ratio k > 1")->capture_default_str();
  experiment->add_option("--p", p_text, "Finite exponent")->capture_default_str();
  experiment->add_option("--q", q, "Bourgain sets per scale")->capture_default_str();
  experiment->add_option("--seeds", seeds_text, "Comma-separated seeds (default: --seed)");
  experiment->add_option("--policy", policy, "full, extracted or brute_force")
      ->check(CLI::IsMember({"full", "extracted", "brute_force"}))
      ->capture_default_str();
  experiment->add_option("--size-exponent", size_exponent, "Brute-force subset exponent")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*construct) {
      const fembed::Rational k = fembed::parse_rational(k_text);
      if (n_target != 0) {
        const auto params = fembed::choose_params(n_target, delta, k, 2.0);
        h = params.h;
        m = params.m;
        if (eps_text.empty()) eps_text = fembed::to_string(params.eps);
      }
      const fembed::Rational eps = eps_text.empty()
                                       ? fembed::Rational(fembed::pow_int(k, -h) / 2)
                                       : fembed::parse_rational(eps_text);
      const fembed::ZSpace z = fembed::build_Z(h, k, m, eps);
      for (const auto& w : z.warnings()) std::cerr << "warning: " << w << "\n";
      emit_json(g, fembed::to_json(z));
      return 0;
    }
    if (*embed) {
      const LoadedSpace space = load_space(space_path);
      const auto& metric = space.get();
      const double p = parse_p(sys.p);
      const auto system = make_system(sys, g, metric);
      const auto image = fembed::evaluate_embedding(system, metric, p);
      const auto report = fembed::distortion(metric, image);
      emit_json(g, {{"system", fembed::to_json(system)},
                    {"image", fembed::to_json(image)},
                    {"distortion", fembed::to_json(report, metric)}});
      return 0;
    }
    if (*extract || *bounds) {
      const fembed::ZSpace z = require_z(space_path);
      fembed::PointSet V;
      if (subset_path.empty()) {
        for (fembed::PointIndex i = 0; i < z.size(); ++i) V.push_back(i);
      } else {
        V = fembed::point_set_from_ids(
            z.metric(), fembed::point_ids_from_json(fembed::read_json_file(subset_path)));
      }
      const auto result = fembed::extract_subset(z, V);
      if (*extract) {
        emit_json(g, fembed::to_json(result, z));
        return 0;
      }
      const double p = parse_p(sys.p);
      const auto system = make_system(sys, g, z.metric());
      const auto tails = fembed::beta_gamma(system, result.U, z, p);
      const auto lower =
          fembed::lower_bound_from_aggregates(tails.beta, tails.gamma, p, result.h_hat, z);
      const auto image = fembed::evaluate_embedding(system, z.metric(), p);
      const auto on_u =
          fembed::distortion(z.metric().restrict(result.U), image.restrict(result.U));
      emit_json(g, {{"extraction", fembed::to_json(result, z)},
                    {"tails", fembed::to_json(tails, z)},
                    {"bounds", fembed::to_json(lower)},
                    {"measured_on_U",
                     {{"expansion", fembed::real_to_json(on_u.expansion)},
                      {"contraction_inverse", fembed::real_to_json(on_u.contraction_inverse)},
                      {"distortion", fembed::real_to_json(on_u.distortion)}}}});
      return 0;
    }
    if (*l1dom) {
      const auto rho = fembed::metric_from_json(fembed::read_json_file(metric_path));
      const auto report = fembed::certify_l1dom(
          rho, mode == "exact" ? fembed::CertifyMode::kExact : fembed::CertifyMode::kMonteCarlo,
          samples, g.seed);
      emit_json(g, fembed::to_json(report));
      return 0;
    }
    if (*experiment) {
      fembed::ExperimentConfig cfg;
      cfg.n_grid = parse_list<std::size_t>(grid_text);
      cfg.delta = delta;
      cfg.k = fembed::parse_rational(k_text);
      cfg.p = parse_p(p_text);
      cfg.q = q;
      cfg.seeds = seeds_text.empty() ? std::vector<std::uint64_t>{g.seed}
                                     : parse_list<std::uint64_t>(seeds_text);
      cfg.subset_policy = fembed::policy_from_name(policy);
      cfg.size_exponent = size_exponent;
      const auto report = fembed::run_experiment(cfg);
      if (g.format == "csv") {
        if (g.out.empty()) {
          std::cout << fembed::report_csv(report);
        } else {
          fembed::serialize_report(report, g.out);
        }
      } else {
        Json rows = Json::array();
        for (const auto& r : fembed::parse_report_csv(fembed::report_csv(report))) {
          rows.push_back({{"n", r.n},
                          {"h", r.h},
                          {"m", r.m},
                          {"seed", r.seed},
                          {"beta", r.beta},
                          {"gamma", r.gamma},
                          {"h_hat", r.h_hat},
                          {"lower_bound_combined", fembed::real_to_json(r.lower_bound_combined)},
                          {"measured_distortion_on_U",
                           fembed::real_to_json(r.measured_distortion_on_U)},
                          {"measured_distortion_full",
                           fembed::real_to_json(r.measured_distortion_full)},
                          {"ratio_to_log_n", fembed::real_to_json(r.ratio_to_log_n)},
                          {"invariant_holds", r.invariant_holds},
                          {"status", r.status}});
        }
        emit_json(g, {{"rows", std::move(rows)},
                      {"manifest", Json::parse(fembed::report_manifest(report))}});
      }
      return report.has_errors() ? 2 : 0;
    }
  } catch (const fembed::Error& e) {
    std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
