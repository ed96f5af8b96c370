#ifndef FEMBED_RAMSEY_HPP_
#define FEMBED_RAMSEY_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "fembed/construction.hpp"
#include "fembed/frechet.hpp"
#include "fembed/metric.hpp"
#include "fembed/tree.hpp"

namespace fembed {

struct ExtractionResult {
  PointSet U;
  std::vector<std::size_t> S;        // leaves whose tail holds >= 2 points of V
  std::vector<std::size_t> chosen;   // one leaf s_u per depth-h_hat skeleton vertex
  double rho = 0;                    // ((|V| - 2^h) / m)^{1/h} - 1
  double eta = 0;                    // rho / (2 + rho)
  int h_hat = 0;                     // min leaf depth of skel(T')
  double h_hat_bound = 0;            // rho * h / (6 log2(2 / rho))
  WeightedRootedTree pruned_skeleton;  // skel(T')
  WeightedRootedTree skeleton_tree;    // skel(T_h(U_X))
};

// Pruned-tree extraction of a large subset with a complete binary skeleton.
// Starting at the root with the S-leaves below it, a vertex keeps both
// children when each child cone holds at least eta times the local S count,
// and otherwise descends only into the child holding more of S (the left one
// on a tie). The pruned tree is cut at depth h_hat of its skeleton, one S-leaf
// is picked per cut vertex (the smallest), and U takes the two points of V
// with the smallest tail index from each picked tail.
// Throws TooSmallV unless |V| > 2m + 2^h.
ExtractionResult extract_subset(const ZSpace& z, const PointSet& V);

struct SubsetSearchResult {
  std::vector<PointIndex> subset;
  double distortion = 0;
};

// Minimum distortion of f restricted to an s-subset, over all C(n, s)
// subsets in lexicographic order; ties keep the first. Throws
// CombinatorialBlowup when C(n, s) > 2e6.
SubsetSearchResult brute_force_best_subset(const EmbeddingImage& image,
                                           const FiniteMetric& source, std::size_t s);

}  // namespace fembed

#endif  // FEMBED_RAMSEY_HPP_
