#ifndef FEMBED_TREE_HPP_
#define FEMBED_TREE_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fembed/metric.hpp"
#include "fembed/rational.hpp"

namespace fembed {

using VertexIndex = std::size_t;

// Rooted tree with string vertex ids and optional positive labels Delta(u).
// Children keep their insertion order, which fixes left/right and the leaf
// order everywhere downstream. Immutable once built.
class WeightedRootedTree {
 public:
  using EdgeList = std::vector<std::pair<std::string, std::string>>;

  // Validates a single root, acyclicity, connectivity and positive labels.
  // With `hst_parameter` = k, also enforces Delta(u) >= k * Delta(v) for
  // every labelled child v of u.
  static WeightedRootedTree from_edges(const std::string& root, const EdgeList& edges,
                                       std::map<std::string, Rational> delta = {},
                                       std::optional<Rational> hst_parameter = {});

  std::size_t size() const { return ids_.size(); }
  VertexIndex root() const { return root_; }
  const std::string& id(VertexIndex v) const { return ids_[v]; }
  std::optional<VertexIndex> find(std::string_view id) const;
  VertexIndex index_of(std::string_view id) const;  // throws UnknownVertex
  std::optional<VertexIndex> parent(VertexIndex v) const;
  const std::vector<VertexIndex>& children(VertexIndex v) const { return children_[v]; }
  bool is_leaf(VertexIndex v) const { return children_[v].empty(); }
  std::size_t depth(VertexIndex v) const { return depth_[v]; }
  const std::optional<Rational>& delta(VertexIndex v) const { return delta_[v]; }
  const std::optional<Rational>& hst_parameter() const { return hst_parameter_; }

  // Leaves in depth-first order.
  std::vector<VertexIndex> leaves() const;
  std::vector<std::string> leaf_ids() const;
  // Vertices in depth-first preorder starting at the root.
  std::vector<VertexIndex> preorder() const;
  EdgeList edges() const;  // (parent, child) pairs in preorder
  std::map<std::string, Rational> labels() const;
  std::size_t height() const;

  // Empty tree; only useful as a placeholder before assignment.
  WeightedRootedTree() = default;

  // Same vertex ids, root, edge set and labels (child order ignored).
  bool same_shape(const WeightedRootedTree& other) const;

 private:

  std::vector<std::string> ids_;
  std::unordered_map<std::string, VertexIndex> index_;
  std::vector<std::optional<VertexIndex>> parent_;
  std::vector<std::vector<VertexIndex>> children_;
  std::vector<std::size_t> depth_;
  std::vector<std::optional<Rational>> delta_;
  std::optional<Rational> hst_parameter_;
  VertexIndex root_ = 0;
};

struct LcaDepth {
  VertexIndex lca;
  std::size_t depth_u;
  std::size_t depth_v;
  std::size_t depth_lca;
};

// Parent-pointer walk; depth counts edges from the root.
LcaDepth lca_depth(const WeightedRootedTree& t, VertexIndex u, VertexIndex v);
LcaDepth lca_depth(const WeightedRootedTree& t, std::string_view u, std::string_view v);

// Union of the paths from each leaf in `leaves` to their common ancestor,
// rooted there. Labels are carried over. Throws EmptySubset.
WeightedRootedTree spanned_subtree(const WeightedRootedTree& t,
                                   const std::vector<std::string>& leaves);

enum class SimplifyOrder { kTopDown, kBottomUp };

// Splices out non-root vertices with exactly two neighbours and drops a root
// with a single neighbour, until neither applies. The fixpoint does not depend
// on `order`; the parameter exists so that can be tested.
WeightedRootedTree skeleton(const WeightedRootedTree& t,
                            SimplifyOrder order = SimplifyOrder::kTopDown);

// True iff every internal vertex has exactly two children and every leaf sits
// at depth `depth`.
bool is_complete_binary(const WeightedRootedTree& t, std::size_t depth);

// Leaf metric d(x, y) = Delta(lca(x, y)). Throws MissingLabel when an internal
// vertex is unlabelled and NonDecreasingLabels when a labelled internal child
// does not have a strictly smaller label than its parent.
FiniteMetric hst_metric(const WeightedRootedTree& t);

// Builds the hierarchical-partition tree of an ultrametric, rounds every level
// down to a power of k, and merges levels that round together. For k = 1 the
// levels are kept as they are. Throws NotUltrametric.
WeightedRootedTree ultrametric_to_k_hst(const FiniteMetric& metric, const Rational& k);

}  // namespace fembed

#endif  // FEMBED_TREE_HPP_
