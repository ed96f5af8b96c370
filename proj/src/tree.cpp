#include "fembed/tree.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "fembed/errors.hpp"

namespace fembed {

WeightedRootedTree WeightedRootedTree::from_edges(const std::string& root,
                                                  const EdgeList& edges,
                                                  std::map<std::string, Rational> delta,
                                                  std::optional<Rational> hst_parameter) {
  WeightedRootedTree t;
  auto intern = [&t](const std::string& id) {
    auto [it, inserted] = t.index_.emplace(id, t.ids_.size());
    if (inserted) {
      t.ids_.push_back(id);
      t.parent_.emplace_back();
      t.children_.emplace_back();
    }
    return it->second;
  };
  t.root_ = intern(root);
  for (const auto& [p, c] : edges) {
    const VertexIndex pi = intern(p);
    const VertexIndex ci = intern(c);
    if (ci == t.root_) throw InvalidArgument("edge into the root '" + c + "'");
    if (pi == ci) throw InvalidArgument("self loop at '" + c + "'");
    if (t.parent_[ci]) throw InvalidArgument("vertex '" + c + "' has two parents");
    t.parent_[ci] = pi;
    t.children_[pi].push_back(ci);
  }

  const std::size_t n = t.ids_.size();
  t.depth_.assign(n, 0);
  std::vector<bool> seen(n, false);
  std::deque<VertexIndex> queue{t.root_};
  seen[t.root_] = true;
  std::size_t reached = 0;
  while (!queue.empty()) {
    VertexIndex v = queue.front();
    queue.pop_front();
    ++reached;
    for (VertexIndex c : t.children_[v]) {
      if (seen[c]) throw InvalidArgument("cycle through '" + t.ids_[c] + "'");
      seen[c] = true;
      t.depth_[c] = t.depth_[v] + 1;
      queue.push_back(c);
    }
  }
  if (reached != n) throw InvalidArgument("tree is disconnected or cyclic");

  t.delta_.assign(n, std::nullopt);
  for (auto& [id, value] : delta) {
    auto it = t.index_.find(id);
    if (it == t.index_.end()) throw UnknownVertex("label for unknown vertex '" + id + "'");
    if (value <= 0) throw InvalidArgument("label of '" + id + "' must be positive");
    t.delta_[it->second] = std::move(value);
  }

  if (hst_parameter) {
    if (*hst_parameter < 1) throw ParameterOutOfRange("hst parameter must be >= 1");
    for (VertexIndex v = 0; v < n; ++v) {
      if (!t.parent_[v]) continue;
      const auto& mine = t.delta_[v];
      const auto& up = t.delta_[*t.parent_[v]];
      if (mine && up && *up < *hst_parameter * *mine) {
        throw NonDecreasingLabels("label of '" + t.ids_[v] +
                                  "' violates the k-HST separation");
      }
    }
  }
  t.hst_parameter_ = std::move(hst_parameter);
  return t;
}

std::optional<VertexIndex> WeightedRootedTree::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

VertexIndex WeightedRootedTree::index_of(std::string_view id) const {
  if (auto v = find(id)) return *v;
  throw UnknownVertex("unknown vertex '" + std::string(id) + "'");
}

std::optional<VertexIndex> WeightedRootedTree::parent(VertexIndex v) const {
  return parent_[v];
}

std::vector<VertexIndex> WeightedRootedTree::preorder() const {
  std::vector<VertexIndex> order;
  order.reserve(size());
  std::vector<VertexIndex> stack{root_};
  while (!stack.empty()) {
    VertexIndex v = stack.back();
    stack.pop_back();
    order.push_back(v);
    const auto& kids = children_[v];
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
  }
  return order;
}

std::vector<VertexIndex> WeightedRootedTree::leaves() const {
  std::vector<VertexIndex> out;
  for (VertexIndex v : preorder()) {
    if (is_leaf(v)) out.push_back(v);
  }
  return out;
}

std::vector<std::string> WeightedRootedTree::leaf_ids() const {
  std::vector<std::string> out;
  for (VertexIndex v : leaves()) out.push_back(ids_[v]);
  return out;
}

WeightedRootedTree::EdgeList WeightedRootedTree::edges() const {
  EdgeList out;
  for (VertexIndex v : preorder()) {
    if (parent_[v]) out.emplace_back(ids_[*parent_[v]], ids_[v]);
  }
  return out;
}

std::map<std::string, Rational> WeightedRootedTree::labels() const {
  std::map<std::string, Rational> out;
  for (VertexIndex v = 0; v < size(); ++v) {
    if (delta_[v]) out.emplace(ids_[v], *delta_[v]);
  }
  return out;
}

std::size_t WeightedRootedTree::height() const {
  return size() == 0 ? 0 : *std::max_element(depth_.begin(), depth_.end());
}

bool WeightedRootedTree::same_shape(const WeightedRootedTree& other) const {
  if (ids_[root_] != other.ids_[other.root_]) return false;
  auto e1 = edges();
  auto e2 = other.edges();
  std::sort(e1.begin(), e1.end());
  std::sort(e2.begin(), e2.end());
  return e1 == e2 && labels() == other.labels();
}

LcaDepth lca_depth(const WeightedRootedTree& t, VertexIndex u, VertexIndex v) {
  if (u >= t.size() || v >= t.size()) throw UnknownVertex("vertex index out of range");
  LcaDepth out{0, t.depth(u), t.depth(v), 0};
  while (t.depth(u) > t.depth(v)) u = *t.parent(u);
  while (t.depth(v) > t.depth(u)) v = *t.parent(v);
  while (u != v) {
    u = *t.parent(u);
    v = *t.parent(v);
  }
  out.lca = u;
  out.depth_lca = t.depth(u);
  return out;
}

LcaDepth lca_depth(const WeightedRootedTree& t, std::string_view u, std::string_view v) {
  return lca_depth(t, t.index_of(u), t.index_of(v));
}

WeightedRootedTree spanned_subtree(const WeightedRootedTree& t,
                                   const std::vector<std::string>& leaves) {
  if (leaves.empty()) throw EmptySubset("spanned_subtree needs at least one leaf");
  std::vector<VertexIndex> members;
  for (const auto& id : leaves) {
    VertexIndex v = t.index_of(id);
    if (!t.is_leaf(v)) throw InvalidArgument("'" + id + "' is not a leaf");
    members.push_back(v);
  }
  VertexIndex top = members.front();
  for (VertexIndex v : members) top = lca_depth(t, top, v).lca;

  std::vector<bool> keep(t.size(), false);
  keep[top] = true;
  for (VertexIndex v : members) {
    while (!keep[v]) {
      keep[v] = true;
      v = *t.parent(v);
    }
  }
  WeightedRootedTree::EdgeList edges;
  std::map<std::string, Rational> delta;
  for (VertexIndex v : t.preorder()) {
    if (!keep[v]) continue;
    if (v != top) edges.emplace_back(t.id(*t.parent(v)), t.id(v));
    if (t.delta(v)) delta.emplace(t.id(v), *t.delta(v));
  }
  return WeightedRootedTree::from_edges(t.id(top), edges, std::move(delta),
                                        t.hst_parameter());
}

WeightedRootedTree skeleton(const WeightedRootedTree& t, SimplifyOrder order) {
  const std::size_t n = t.size();
  std::vector<std::optional<VertexIndex>> parent(n);
  std::vector<std::vector<VertexIndex>> children(n);
  for (VertexIndex v = 0; v < n; ++v) {
    parent[v] = t.parent(v);
    children[v] = t.children(v);
  }
  std::vector<bool> alive(n, true);
  VertexIndex root = t.root();

  auto current_preorder = [&]() {
    std::vector<VertexIndex> out;
    std::vector<VertexIndex> stack{root};
    while (!stack.empty()) {
      VertexIndex v = stack.back();
      stack.pop_back();
      out.push_back(v);
      for (auto it = children[v].rbegin(); it != children[v].rend(); ++it) stack.push_back(*it);
    }
    return out;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    auto visit = current_preorder();
    if (order == SimplifyOrder::kBottomUp) std::reverse(visit.begin(), visit.end());
    for (VertexIndex v : visit) {
      if (!alive[v] || children[v].size() != 1) continue;
      const VertexIndex only = children[v].front();
      if (v == root) {
        parent[only].reset();
        root = only;
      } else {
        const VertexIndex up = *parent[v];
        std::replace(children[up].begin(), children[up].end(), v, only);
        parent[only] = up;
      }
      alive[v] = false;
      children[v].clear();
      changed = true;
    }
  }

  WeightedRootedTree::EdgeList edges;
  std::map<std::string, Rational> delta;
  for (VertexIndex v : current_preorder()) {
    if (parent[v]) edges.emplace_back(t.id(*parent[v]), t.id(v));
    if (t.delta(v)) delta.emplace(t.id(v), *t.delta(v));
  }
  return WeightedRootedTree::from_edges(t.id(root), edges, std::move(delta),
                                        t.hst_parameter());
}

bool is_complete_binary(const WeightedRootedTree& t, std::size_t depth) {
  for (VertexIndex v = 0; v < t.size(); ++v) {
    if (t.is_leaf(v)) {
      if (t.depth(v) != depth) return false;
    } else if (t.children(v).size() != 2) {
      return false;
    }
  }
  return true;
}

namespace {

void check_labels(const WeightedRootedTree& t) {
  for (VertexIndex v = 0; v < t.size(); ++v) {
    if (t.is_leaf(v)) continue;
    if (!t.delta(v)) throw MissingLabel("internal vertex '" + t.id(v) + "' has no label");
    if (auto up = t.parent(v)) {
      if (t.delta(*up) && !(*t.delta(v) < *t.delta(*up))) {
        throw NonDecreasingLabels("label of '" + t.id(v) +
                                  "' is not below its parent's");
      }
    }
  }
}

}  // namespace

FiniteMetric hst_metric(const WeightedRootedTree& t) {
  check_labels(t);
  const auto leaves = t.leaves();
  const std::size_t n = leaves.size();
  std::vector<std::size_t> position(t.size(), 0);
  for (std::size_t i = 0; i < n; ++i) position[leaves[i]] = i;

  // Leaves under each vertex, accumulated bottom-up.
  std::vector<std::vector<std::size_t>> below(t.size());
  std::vector<std::vector<Rational>> raw(n, std::vector<Rational>(n, Rational(0)));
  auto order = t.preorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const VertexIndex v = *it;
    if (t.is_leaf(v)) {
      below[v].push_back(position[v]);
      continue;
    }
    const Rational& label = *t.delta(v);
    for (std::size_t a = 0; a < t.children(v).size(); ++a) {
      for (std::size_t b = a + 1; b < t.children(v).size(); ++b) {
        for (std::size_t x : below[t.children(v)[a]]) {
          for (std::size_t y : below[t.children(v)[b]]) {
            raw[x][y] = label;
            raw[y][x] = label;
          }
        }
      }
    }
    for (VertexIndex c : t.children(v)) {
      below[v].insert(below[v].end(), below[c].begin(), below[c].end());
      below[c].clear();
    }
  }
  std::vector<std::string> ids;
  for (VertexIndex v : leaves) ids.push_back(t.id(v));
  return FiniteMetric::trusted(std::move(raw), std::move(ids));
}

namespace {

struct ClusterBuilder {
  const FiniteMetric& metric;
  const Rational& k;
  std::set<std::string> taken;
  std::size_t counter = 0;
  WeightedRootedTree::EdgeList edges;
  std::map<std::string, Rational> delta;

  std::string fresh_id() {
    std::string prefix = "~";
    while (true) {
      std::string candidate = prefix + std::to_string(counter);
      if (!taken.count(candidate)) {
        ++counter;
        taken.insert(candidate);
        return candidate;
      }
      prefix += "~";
    }
  }

  Rational quantize(const Rational& level) const {
    if (k == 1) return level;
    return pow_int(k, floor_log(level, k));
  }

  // Attaches the cluster `points` below `parent` (whose label is
  // `parent_level`), or makes it the root when `parent` is empty.
  std::string build(const std::vector<PointIndex>& points, const std::string& parent,
                    const std::optional<Rational>& parent_level) {
    if (points.size() == 1) {
      const std::string& leaf = metric.id(points.front());
      if (!parent.empty()) edges.emplace_back(parent, leaf);
      return leaf;
    }
    Rational top = 0;
    for (PointIndex a : points) {
      for (PointIndex b : points) {
        if (metric.dist(a, b) > top) top = metric.dist(a, b);
      }
    }
    std::vector<std::vector<PointIndex>> classes;
    for (PointIndex p : points) {
      bool placed = false;
      for (auto& cls : classes) {
        if (metric.dist(p, cls.front()) < top) {
          cls.push_back(p);
          placed = true;
          break;
        }
      }
      if (!placed) classes.push_back({p});
    }
    const Rational level = quantize(top);
    std::string self = parent;
    if (!parent_level || *parent_level != level) {
      self = fresh_id();
      delta.emplace(self, level);
      if (!parent.empty()) edges.emplace_back(parent, self);
    }
    for (const auto& cls : classes) build(cls, self, level);
    return self;
  }
};

}  // namespace

WeightedRootedTree ultrametric_to_k_hst(const FiniteMetric& metric, const Rational& k) {
  if (k < 1) throw ParameterOutOfRange("ultrametric_to_k_hst needs k >= 1");
  if (metric.size() == 0) throw EmptySubset("empty metric");
  if (!classify_metric(metric, 1).is_ultrametric) {
    throw NotUltrametric("input metric is not an ultrametric");
  }
  ClusterBuilder builder{metric, k, {}, 0, {}, {}};
  builder.taken.insert(metric.ids().begin(), metric.ids().end());
  std::vector<PointIndex> all(metric.size());
  for (PointIndex i = 0; i < all.size(); ++i) all[i] = i;
  const std::string root = builder.build(all, "", std::nullopt);
  std::optional<Rational> hst_k;
  if (k > 1) hst_k = k;
  return WeightedRootedTree::from_edges(root, builder.edges, std::move(builder.delta),
                                        hst_k);
}

}  // namespace fembed
