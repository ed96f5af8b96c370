#ifndef FEMBED_L1DOM_HPP_
#define FEMBED_L1DOM_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fembed/metric.hpp"
#include "fembed/rational.hpp"
#include "fembed/tree.hpp"

namespace fembed {

// Default magnitude of the random edge weights.
inline const Rational kEdgeWeight{3, 8};

// Longest pair path (edges below the lca) accepted by the exact expectation.
inline constexpr std::size_t kMaxPairEdges = 60;

// A random map of the leaves of an HST to the line: every edge uv (u the
// parent) gets a sign, and phi(x) sums Delta(u) * sign * magnitude along the
// root-to-x path.
struct SignedLineEmbedding {
  Rational magnitude = kEdgeWeight;
  std::vector<int> signs;          // per tree vertex: sign of the edge into it (0 at the root)
  std::vector<std::string> leaves; // leaf ids, tree leaf order
  std::vector<Rational> phi;       // per leaf
  bool dominated = false;          // |phi(x) - phi(y)| <= Delta(lca(x, y)) on all pairs

  FiniteMetric line_metric() const;
};

// Throws MissingLabel / NonDecreasingLabels like hst_metric.
SignedLineEmbedding sample_line_embedding(const WeightedRootedTree& hst, std::uint64_t seed,
                                          const Rational& magnitude = kEdgeWeight);

// Line embedding for an explicit sign assignment (one entry per vertex, the
// root's entry ignored).
SignedLineEmbedding line_embedding_with_signs(const WeightedRootedTree& hst,
                                              std::vector<int> signs,
                                              const Rational& magnitude = kEdgeWeight);

// E|phi(x) - phi(y)| over uniform independent signs, exactly. Only edges
// below lca(x, y) matter. Throws PathTooLong beyond kMaxPairEdges such edges
// for a pair, or when the pruned enumeration exceeds its state budget.
FiniteMetric expected_line_metric(const WeightedRootedTree& hst,
                                  const Rational& magnitude = kEdgeWeight);

struct DominatedCombination {
  std::vector<FiniteMetric> components;  // dominated line metrics
  std::vector<Rational> weights;         // convex weights
  FiniteMetric averaged;
  // max rho / averaged over pairs; empty when some pair averages to zero.
  std::optional<Rational> equivalence_factor;
};

// Empirical average of `samples` seeded line embeddings. Non-dominated draws
// are rejected so every component stays dominated.
DominatedCombination monte_carlo_combination(const WeightedRootedTree& hst,
                                             std::size_t samples, std::uint64_t seed,
                                             const Rational& magnitude = kEdgeWeight);

struct PairRatio {
  std::string x;
  std::string y;
  Rational rho;
  Rational sigma;
};

struct CertificateReport {
  Rational hst_factor;   // max rho / rho_hst
  Rational line_factor;  // max rho_hst / sigma
  Rational factor;       // max rho / sigma, with sigma <= rho
  Rational distortion;   // bi-Lipschitz distortion of rho -> sigma
  bool dominated = false;      // sigma <= rho_hst <= rho on every pair
  bool within_bound = false;   // factor <= 16
  WeightedRootedTree hst;
  FiniteMetric sigma;
  std::vector<PairRatio> pairs;
};

enum class CertifyMode { kExact, kMonteCarlo };

// 4-HST quantisation followed by the averaged line metric. Throws
// NotUltrametric.
CertificateReport certify_l1dom(const FiniteMetric& rho, CertifyMode mode = CertifyMode::kExact,
                                std::size_t samples = 256, std::uint64_t seed = 0);

}  // namespace fembed

#endif  // FEMBED_L1DOM_HPP_
