// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Graphic-matroid fast path: the push-relabel engine specialized to
// spanning forests. Span tests become union-find lookups per (base, level
// threshold), and the exchange edge is the minimum insertion-level edge on
// the cycle the new edge closes, served by a dynamic forest per base. No
// independence oracle is consulted anywhere.

#include <deque>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "matroid/dynamic_forest.hpp"
#include "matroid/graph.hpp"
#include "matroid/pack_cover.hpp"
#include "matroid/push_relabel.hpp"
#include "matroid/union_find.hpp"

namespace matroid {

/// Per-base family of union-find structures over the vertices: one per
/// level threshold t, representing the components of T_{>= t}. Structures
/// materialize lazily on first probe (built from the current tree) and are
/// union-only afterwards; exchanges keep the spans of lower thresholds
/// unchanged, so stale edges never falsify connectivity.
class LevelUnionFind {
 public:
  LevelUnionFind(int num_vertices, int height)
      : num_vertices_(num_vertices), by_threshold_(height + 1) {}

  template <typename EdgesAtLeast>
  bool connected(int threshold, int u, int v, const EdgesAtLeast& edges_at_least) {
    return structure(threshold, edges_at_least).connected(u, v);
  }

  /// Called after inserting a tree edge at `level`: joins its endpoints in
  /// every materialized structure with threshold <= level.
  void note_insertion(int u, int v, int level) {
    for (int t = 1; t <= level && t < static_cast<int>(by_threshold_.size()); ++t)
      if (by_threshold_[t]) by_threshold_[t]->unite(u, v);
  }

  bool materialized(int threshold) const { return by_threshold_[threshold].has_value(); }

  UnionFind& materialized_structure(int threshold) { return *by_threshold_[threshold]; }
  int height() const { return static_cast<int>(by_threshold_.size()) - 1; }

 private:
  template <typename EdgesAtLeast>
  UnionFind& structure(int threshold, const EdgesAtLeast& edges_at_least) {
    auto& slot = by_threshold_[threshold];
    if (!slot) {
      slot.emplace(num_vertices_);
      edges_at_least(threshold, [&](int u, int v) { slot->unite(u, v); });
    }
    return *slot;
  }

  int num_vertices_;
  std::vector<std::optional<UnionFind>> by_threshold_;
};

enum class ForestImpl { link_cut, walk };

/// Push-relabel over the graphic matroid. Mirrors PRState's contract
/// (levels, leveled bases, value, duals) with data structures instead of
/// oracle queries.
class GraphicEngine {
 public:
  GraphicEngine(const Graph& graph, CapacityVector u, int k, int height,
                ForestImpl impl = ForestImpl::link_cut, bool shadow_checks = false,
                std::optional<std::vector<ElementId>> initial_base = std::nullopt)
      : graph_(&graph),
        u_(std::move(u)),
        k_(k),
        height_(height),
        n_(graph.num_edges()),
        shadow_(shadow_checks) {
    if (k_ < 1) throw std::invalid_argument("graphic engine requires k >= 1");
    if (height_ < 1) throw std::invalid_argument("graphic engine requires height >= 1");
    if (static_cast<int>(u_.size()) != n_)
      throw std::invalid_argument("capacity vector size mismatch");

    std::vector<ElementId> base =
        initial_base ? std::move(*initial_base) : spanning_forest();
    rank_ = static_cast<int>(base.size());
    level_.assign(n_, 0);
    bases_ = LeveledBases(k_, n_, height_);
    for (int i = 0; i < k_; ++i) {
      forests_.push_back(make_forest(impl));
      if (shadow_) shadows_.push_back(std::make_unique<WalkForest>(graph.num_vertices));
      level_uf_.emplace_back(graph.num_vertices, height_);
      for (ElementId e : base) {
        bases_.insert(i, e, 0);
        forests_[i]->link(graph.edges[e].tail, graph.edges[e].head, e, 0);
        if (shadow_) shadows_[i]->link(graph.edges[e].tail, graph.edges[e].head, e, 0);
      }
    }
    for (ElementId e = 0; e < n_; ++e)
      if (uncovered(e)) queue_.push_back(e);
  }

  int n() const { return n_; }
  int k() const { return k_; }
  int height() const { return height_; }
  int matroid_rank() const { return rank_; }
  const Graph& graph() const { return *graph_; }
  const CapacityVector& capacities() const { return u_; }
  const std::vector<int>& levels() const { return level_; }
  const LeveledBases& bases() const { return bases_; }
  long long exchanges() const { return exchanges_; }
  long long relabels_to_height() const { return relabels_; }

  bool uncovered(ElementId e) const { return bases_.coverage(e) < u_[e]; }
  bool overpacked(ElementId e) const { return bases_.coverage(e) > u_[e]; }

  std::optional<InsertOutcome> step() {
    while (!queue_.empty()) {
      ElementId e = queue_.front();
      queue_.pop_front();
      if (!uncovered(e) || level_[e] >= height_) continue;
      return insert(e);
    }
    return std::nullopt;
  }

  void run() {
    while (step()) {
    }
  }

  long long value() const {
    long long v = 0;
    for (ElementId e = 0; e < n_; ++e)
      v += std::min<long long>(u_[e], bases_.coverage(e));
    return v;
  }

  std::vector<ElementId> level_set_at_least(int j) const {
    std::vector<ElementId> out;
    for (ElementId e = 0; e < n_; ++e)
      if (level_[e] >= j) out.push_back(e);
    return out;
  }

  /// rank(L_{>= j}) for j = 0..height+1 by one union-find sweep.
  std::vector<int> level_set_ranks() const {
    std::vector<ElementId> order(n_);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](ElementId a, ElementId b) { return level_[a] > level_[b]; });
    std::vector<int> rk(height_ + 2, 0);
    UnionFind uf(graph_->num_vertices);
    int forest_size = 0;
    int pos = 0;
    for (int j = height_; j >= 0; --j) {
      while (pos < n_ && level_[order[pos]] >= j) {
        const Graph::Edge& edge = graph_->edges[order[pos]];
        if (uf.unite(edge.tail, edge.head)) ++forest_size;
        ++pos;
      }
      rk[j] = forest_size;
    }
    return rk;
  }

  DualCut exact_dual() const {
    std::vector<int> rk = level_set_ranks();
    for (int j = 1; j <= height_; ++j)
      if (rk[j] == rk[j + 1]) return make_cut(j, rk[j]);
    throw std::logic_error("graphic exact_dual: no flat level found");
  }

  DualCut apx_dual(double eps) const {
    std::vector<long long> row(height_ + 1, 0);
    long long denom = 0;
    for (int i = 0; i < k_; ++i)
      for (int j = 1; j <= height_; ++j) {
        long long s = static_cast<long long>(bases_.bucket(i, j).size());
        row[j] += s;
        denom += s;
      }
    for (int j = 1; j < height_; ++j) {
      if (static_cast<double>(row[j]) <= eps * static_cast<double>(denom)) {
        std::vector<int> rk = level_set_ranks();
        return make_cut(j + 1, rk[j + 1]);
      }
    }
    throw std::logic_error("graphic apx_dual: no sparse level row");
  }

 private:
  static std::unique_ptr<DynamicForest> make_forest_static(ForestImpl impl, int nv) {
    if (impl == ForestImpl::link_cut)
      return std::make_unique<LinkCutForest>(nv);
    return std::make_unique<WalkForest>(nv);
  }

  std::unique_ptr<DynamicForest> make_forest(ForestImpl impl) {
    return make_forest_static(impl, graph_->num_vertices);
  }

  std::vector<ElementId> spanning_forest() const {
    UnionFind uf(graph_->num_vertices);
    std::vector<ElementId> forest;
    for (ElementId e = 0; e < n_; ++e)
      if (uf.unite(graph_->edges[e].tail, graph_->edges[e].head)) forest.push_back(e);
    return forest;
  }

  DualCut make_cut(int threshold, int rank_of_set) const {
    DualCut cut;
    cut.threshold = threshold;
    cut.elements = level_set_at_least(threshold);
    long long complement_u = 0;
    for (ElementId e = 0; e < n_; ++e)
      if (level_[e] < threshold) complement_u += u_[e];
    cut.value = static_cast<long long>(k_) * rank_of_set + complement_u;
    return cut;
  }

  InsertOutcome insert(ElementId e) {
    const Graph::Edge& edge = graph_->edges[e];
    if (edge.tail == edge.head) {  // self loop: spanned by everything
      level_[e] = height_;
      ++relabels_;
      return {e, true, -1, height_, -1};
    }
    DynamicForest::PathEdge top = path_min(k_ - 1, edge.tail, edge.head);
    if (top.edge_id < 0)
      throw std::logic_error("graphic engine: base does not span an edge");
    if (top.key >= height_ - 1) {
      level_[e] = height_;
      ++relabels_;
      return {e, true, -1, height_, -1};
    }
    const int jstar = top.key + 1;
    // First base whose threshold-jstar forest does not connect the
    // endpoints; the spans are nested across bases, so binary search works.
    auto disconnected = [&](int i) {
      auto feeder = [&](int threshold, auto&& unite) {
        for (int j = threshold; j <= height_; ++j)
          for (ElementId f : bases_.bucket(i, j))
            unite(graph_->edges[f].tail, graph_->edges[f].head);
      };
      bool conn = level_uf_[i].connected(jstar, edge.tail, edge.head, feeder);
      if (shadow_) verify_threshold(i, jstar);
      return !conn;
    };
    int lo = 0, hi = k_ - 1;
    while (lo < hi) {
      int mid = lo + (hi - lo) / 2;
      if (disconnected(mid))
        hi = mid;
      else
        lo = mid + 1;
    }
    const int base = lo;
    DynamicForest::PathEdge out = path_min(base, edge.tail, edge.head);
    if (out.key != jstar - 1)
      throw std::logic_error("graphic engine: exchange edge not one level down");
    const ElementId removed = out.edge_id;

    forests_[base]->cut(removed);
    forests_[base]->link(edge.tail, edge.head, e, jstar);
    if (shadow_) {
      shadows_[base]->cut(removed);
      shadows_[base]->link(edge.tail, edge.head, e, jstar);
    }
    bases_.remove(base, removed);
    bases_.insert(base, e, jstar);
    level_[e] = jstar;
    level_uf_[base].note_insertion(edge.tail, edge.head, jstar);
    ++exchanges_;
    if (shadow_) verify_all_thresholds(base);

    if (removed != e && uncovered(removed) && level_[removed] < height_)
      queue_.push_back(removed);
    if (uncovered(e) && level_[e] < height_) queue_.push_back(e);
    return {e, false, base, jstar, removed};
  }

  DynamicForest::PathEdge path_min(int i, int a, int b) {
    DynamicForest::PathEdge got = forests_[i]->path_min(a, b);
    if (shadow_) {
      DynamicForest::PathEdge expect = shadows_[i]->path_min(a, b);
      if (got.key != expect.key || (got.edge_id < 0) != (expect.edge_id < 0))
        throw std::logic_error("dynamic forest shadow mismatch on path_min");
    }
    return got;
  }

  // Shadow check: a materialized union-find at (i, t) must induce exactly
  // the components of the current T^(i)_{>= t}.
  void verify_threshold(int i, int t) {
    if (!level_uf_[i].materialized(t)) return;
    UnionFind fresh(graph_->num_vertices);
    for (int j = t; j <= height_; ++j)
      for (ElementId f : bases_.bucket(i, j))
        fresh.unite(graph_->edges[f].tail, graph_->edges[f].head);
    UnionFind& live = level_uf_[i].materialized_structure(t);
    for (int v = 0; v < graph_->num_vertices; ++v)
      for (int w = v + 1; w < graph_->num_vertices; ++w)
        if (fresh.connected(v, w) != live.connected(v, w))
          throw std::logic_error("level union-find shadow mismatch");
  }

  void verify_all_thresholds(int i) {
    for (int t = 1; t <= height_; ++t) verify_threshold(i, t);
  }

  const Graph* graph_;
  CapacityVector u_;
  int k_;
  int height_;
  int n_;
  bool shadow_;
  int rank_ = 0;
  std::vector<int> level_;
  LeveledBases bases_;
  std::vector<std::unique_ptr<DynamicForest>> forests_;
  std::vector<std::unique_ptr<WalkForest>> shadows_;
  std::vector<LevelUnionFind> level_uf_;
  std::deque<ElementId> queue_;
  long long exchanges_ = 0;
  long long relabels_ = 0;
};

struct ForestUnionResult {
  long long value = 0;
  std::vector<std::vector<ElementId>> forests;
  DualCut dual;
  std::vector<std::vector<int>> dual_partition;  // components of (V, dual set)
  RunStats stats;
  int height = 0;
};

namespace detail {

inline ForestUnionResult collect_graphic(const Graph& graph, GraphicEngine& engine,
                                         const DualCut& dual) {
  ForestUnionResult result;
  result.value = engine.value();
  for (int i = 0; i < engine.k(); ++i) result.forests.push_back(engine.bases().base_list(i));
  result.dual = dual;
  result.dual_partition = component_partition(graph, dual.elements);
  result.stats.exchanges = engine.exchanges();
  result.stats.relabels_to_height = engine.relabels_to_height();
  result.height = engine.height();
  return result;
}

}  // namespace detail

/// Maximum-capacity packing of k forests (graphic k-fold union), exact.
inline ForestUnionResult max_forest_union(const Graph& graph, CapacityVector u, int k,
                                          ForestImpl impl = ForestImpl::link_cut) {
  if (k == 0) {
    ForestUnionResult result;
    result.dual.elements.resize(graph.num_edges());
    std::iota(result.dual.elements.begin(), result.dual.elements.end(), 0);
    result.dual_partition = component_partition(graph, result.dual.elements);
    return result;
  }
  GraphicEngine engine(graph, std::move(u), k, exact_union_height(graphic_rank(graph)), impl);
  engine.run();
  DualCut dual = engine.exact_dual();
  auto result = detail::collect_graphic(graph, engine, dual);
  if (result.dual.value != result.value)
    throw std::logic_error("max_forest_union: primal and dual disagree");
  return result;
}

inline ForestUnionResult apx_forest_union(const Graph& graph, CapacityVector u, int k,
                                          double eps,
                                          ForestImpl impl = ForestImpl::link_cut) {
  if (k == 0) return max_forest_union(graph, std::move(u), 0, impl);
  GraphicEngine engine(graph, std::move(u), k, apx_union_height(eps), impl);
  engine.run();
  DualCut dual = engine.apx_dual(eps);
  return detail::collect_graphic(graph, engine, dual);
}

/// Approximate spanning-tree packing decision; graphic instantiation of
/// decide_packing with identical certificate contracts.
inline PackDecision tree_packing_decision(const Graph& graph, const CapacityVector& u, int k,
                                          double eps,
                                          ForestImpl impl = ForestImpl::link_cut) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must be in (0,1)");
  if (k < 1) throw std::invalid_argument("tree packing requires k >= 1");
  const int n = graph.num_edges();
  PackDecision decision;

  std::vector<ElementId> keep;
  for (ElementId e = 0; e < n; ++e)
    if (u[e] > 0) keep.push_back(e);
  if (static_cast<int>(keep.size()) < n) {
    Graph positive;
    positive.num_vertices = graph.num_vertices;
    for (ElementId e : keep) positive.edges.push_back(graph.edges[e]);
    if (graphic_rank(positive) < graphic_rank(graph)) {
      decision.certificate = keep;
      return decision;
    }
    CapacityVector u_keep(keep.size());
    for (size_t i = 0; i < keep.size(); ++i) u_keep[i] = u[keep[i]];
    PackDecision inner = tree_packing_decision(positive, u_keep, k, eps, impl);
    decision.packed = inner.packed;
    decision.stats = inner.stats;
    decision.threshold = inner.threshold;
    for (auto& base : inner.bases) {
      std::vector<ElementId> mapped;
      for (ElementId e : base) mapped.push_back(keep[e]);
      decision.bases.push_back(std::move(mapped));
    }
    for (ElementId e : inner.certificate) decision.certificate.push_back(keep[e]);
    return decision;
  }

  GraphicEngine engine(graph, u, k, packing_height(eps, total_capacity(u)), impl);
  engine.run();
  decision.stats.exchanges = engine.exchanges();
  decision.stats.relabels_to_height = engine.relabels_to_height();

  bool overpacked = false;
  for (ElementId e = 0; e < n && !overpacked; ++e) overpacked = engine.overpacked(e);
  if (!overpacked) {
    decision.packed = true;
    for (int i = 0; i < k; ++i) decision.bases.push_back(engine.bases().base_list(i));
    return decision;
  }
  std::vector<long long> level_u(engine.height() + 1, 0);
  for (ElementId e = 0; e < n; ++e) level_u[engine.levels()[e]] += u[e];
  long long below = level_u[0];
  double delta = eps / (1.0 + eps);
  for (int j = 1; j < engine.height(); ++j) {
    below += level_u[j];
    if (static_cast<double>(level_u[j]) < delta * static_cast<double>(below)) {
      decision.certificate = engine.level_set_at_least(j + 1);
      decision.threshold = j + 1;
      return decision;
    }
  }
  throw std::logic_error("tree_packing_decision: pigeonhole scan failed");
}

/// Approximate spanning-tree covering decision; graphic instantiation of
/// decide_covering.
inline CoverDecision tree_covering_decision(const Graph& graph, const CapacityVector& u, int k,
                                            double eps,
                                            ForestImpl impl = ForestImpl::link_cut) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must be in (0,1)");
  const int n = graph.num_edges();
  CoverDecision decision;
  if (total_capacity(u) == 0) {
    decision.covered = true;
    UnionFind uf(graph.num_vertices);
    std::vector<ElementId> forest;
    for (ElementId e = 0; e < n; ++e)
      if (uf.unite(graph.edges[e].tail, graph.edges[e].head)) forest.push_back(e);
    decision.bases.assign(std::max(k, 0), forest);
    return decision;
  }
  if (k < 1) {
    for (ElementId e = 0; e < n; ++e)
      if (u[e] > 0) decision.certificate.push_back(e);
    return decision;
  }
  std::vector<ElementId> loops;
  for (ElementId e = 0; e < n; ++e)
    if (u[e] > 0 && graph.edges[e].tail == graph.edges[e].head) loops.push_back(e);
  if (!loops.empty()) {
    decision.certificate = std::move(loops);
    return decision;
  }
  const int r = graphic_rank(graph);
  if (total_capacity(u) > static_cast<long long>(k) * r) {
    decision.certificate.resize(n);
    std::iota(decision.certificate.begin(), decision.certificate.end(), 0);
    return decision;
  }

  GraphicEngine engine(graph, u, k, covering_height(eps, r), impl);
  engine.run();
  decision.stats.exchanges = engine.exchanges();
  decision.stats.relabels_to_height = engine.relabels_to_height();

  bool all_covered = true;
  for (ElementId e = 0; e < n && all_covered; ++e) all_covered = !engine.uncovered(e);
  if (all_covered) {
    decision.covered = true;
    for (int i = 0; i < k; ++i) decision.bases.push_back(engine.bases().base_list(i));
    return decision;
  }
  std::vector<int> rk = engine.level_set_ranks();
  for (int j = 1; j < engine.height(); ++j) {
    if (static_cast<double>(rk[j + 1]) >= (1.0 - eps) * static_cast<double>(rk[j])) {
      decision.certificate = engine.level_set_at_least(j);
      decision.threshold = j;
      return decision;
    }
  }
  throw std::logic_error("tree_covering_decision: pigeonhole scan failed");
}

}  // namespace matroid
