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

// Augmenting paths for k-fold matroid union. A push-relabel run is turned
// into a maximal packing in span-decreasing order; the auxiliary exchange
// graph is then searched implicitly (BFS with pre-search keeping the marked
// sets decreasing), recorded walks are pruned of chordal pairs, and each
// surviving augmentation grows the packing by exactly one element. The
// hybrid driver balances an approximate push-relabel run against these
// augmentations to reach the exact optimum.

#include <algorithm>
#include <cassert>
#include <cmath>
#include <deque>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "matroid/oracle.hpp"
#include "matroid/oracle_ref.hpp"
#include "matroid/push_relabel.hpp"

namespace matroid {

/// A feasible packing of k independent sets, kept maximal (every uncovered
/// element is spanned by every set) and in span-decreasing order across its
/// lifetime. Mutated only through apply().
class Packing {
 public:
  Packing(const IndependenceOracle& oracle, CapacityVector u,
          std::vector<std::vector<ElementId>> sets)
      : oracle_(&oracle), u_(std::move(u)), sets_(std::move(sets)) {
    const int n = oracle.num_elements();
    coverage_.assign(n, 0);
    member_.assign(sets_.size(), std::vector<char>(n, 0));
    for (size_t i = 0; i < sets_.size(); ++i)
      for (ElementId e : sets_[i]) {
        ++coverage_[e];
        member_[i][e] = 1;
      }
  }

  const IndependenceOracle& oracle() const { return *oracle_; }
  const CapacityVector& capacities() const { return u_; }
  const std::vector<std::vector<ElementId>>& sets() const { return sets_; }
  int k() const { return static_cast<int>(sets_.size()); }
  int n() const { return oracle_->num_elements(); }
  bool member(int i, ElementId e) const { return member_[i][e]; }
  int coverage(ElementId e) const { return coverage_[e]; }
  bool uncovered(ElementId e) const { return coverage_[e] < u_[e]; }
  long long version() const { return version_; }

  long long total_size() const {
    long long s = 0;
    for (const auto& set : sets_) s += static_cast<long long>(set.size());
    return s;
  }

  ref::PackingView view() const {
    ref::PackingView v;
    v.oracle = oracle_;
    v.u = &u_;
    v.sets = sets_;
    return v;
  }

  void exchange(int i, ElementId insert, ElementId remove) {
    auto& set = sets_[i];
    set.erase(std::find(set.begin(), set.end(), remove));
    set.push_back(insert);
    member_[i][remove] = 0;
    member_[i][insert] = 1;
    --coverage_[remove];
    ++coverage_[insert];
  }

  void insert(int i, ElementId e) {
    sets_[i].push_back(e);
    member_[i][e] = 1;
    ++coverage_[e];
  }

  void bump_version() { ++version_; }

 private:
  const IndependenceOracle* oracle_;
  CapacityVector u_;
  std::vector<std::vector<ElementId>> sets_;
  std::vector<std::vector<char>> member_;
  std::vector<int> coverage_;
  long long version_ = 0;
};

/// Drops overpacked elements from the bases of a finished push-relabel run,
/// always removing from the set of maximum index. The result keeps the
/// objective value and is maximal and span-decreasing.
inline Packing extract_packing(const PRState& state) {
  std::vector<std::vector<ElementId>> sets;
  for (int i = 0; i < state.k(); ++i) sets.push_back(state.bases().base_list(i));
  std::vector<int> x(state.coverage());
  const CapacityVector& u = state.capacities();
  for (ElementId e = 0; e < state.n(); ++e) {
    while (x[e] > u[e]) {
      for (int i = state.k() - 1; i >= 0; --i) {
        auto& set = sets[i];
        auto it = std::find(set.begin(), set.end(), e);
        if (it != set.end()) {
          set.erase(it);
          --x[e];
          break;
        }
      }
    }
  }
  return Packing(state.oracle_base(), u, std::move(sets));
}

struct AuxVertexId {
  ElementId element = -1;
  int set = -1;
};

/// Recorded s-t walk through the auxiliary graph: the vertices strictly
/// between s and t, in order. The final vertex is the insertion point.
struct AuxPath {
  std::vector<AuxVertexId> hops;
};

struct Exchange {
  int set = -1;
  ElementId insert = -1;
  ElementId remove = -1;
};

/// Per-set exchange sequences in path order plus one final insertion;
/// applying it grows the packing by exactly one element.
struct Augmentation {
  std::vector<Exchange> exchanges;
  ElementId final_element = -1;
  int final_set = -1;
  long long version = 0;
};

namespace detail {

// Search workspace: marked auxiliary vertices, the marked prefix ordering
// of each set, recorded parent arcs, and the BFS queue.
class SearchState {
 public:
  SearchState(const Packing& packing, const IndependenceOracle& oracle)
      : packing_(&packing),
        oracle_(&oracle),
        k_(packing.k()),
        n_(packing.n()),
        ordered_(packing.sets()),
        position_(packing.k(), std::vector<int>(packing.n(), -1)),
        marked_prefix_(packing.k(), 0),
        marked_(static_cast<size_t>(packing.k()) * packing.n(), 0),
        parent_(static_cast<size_t>(packing.k()) * packing.n(), kUnset) {
    for (int i = 0; i < k_; ++i)
      for (size_t pos = 0; pos < ordered_[i].size(); ++pos)
        position_[i][ordered_[i][pos]] = static_cast<int>(pos);
  }

  static constexpr int kSource = -1;
  static constexpr int kUnset = -3;

  int vertex(ElementId e, int i) const { return e * k_ + i; }
  bool marked(ElementId e, int i) const { return marked_[vertex(e, i)]; }

  void mark(ElementId e, int i, int parent_vertex) {
    int v = vertex(e, i);
    if (marked_[v]) return;
    marked_[v] = 1;
    parent_[v] = parent_vertex;
    ++marked_count_;
    if (packing_->member(i, e)) {
      // move e into the marked prefix of set i
      int pos = position_[i][e];
      int boundary = marked_prefix_[i];
      ElementId other = ordered_[i][boundary];
      std::swap(ordered_[i][pos], ordered_[i][boundary]);
      position_[i][other] = pos;
      position_[i][e] = boundary;
      ++marked_prefix_[i];
    }
  }

  bool marked_set_spans(int i, ElementId e) const {
    std::span<const ElementId> prefix(ordered_[i].data(), marked_prefix_[i]);
    return spans(*oracle_, prefix, e);
  }

  bool set_spans(int i, ElementId e) const { return spans(*oracle_, ordered_[i], e); }

  /// Last element of the first prefix of set i (marked elements first) that
  /// spans e; that element lies outside the marked prefix and can be
  /// exchanged for e. Requires: marked prefix does not span e, the full set
  /// does.
  ElementId exchange_candidate(int i, ElementId e) const {
    const auto& list = ordered_[i];
    int lo = marked_prefix_[i];  // prefix [0, lo) does not span e
    int hi = static_cast<int>(list.size());
    while (lo + 1 < hi + 1) {
      if (lo + 1 == hi + 0 + 1) break;
      int mid = lo + (hi - lo) / 2;
      std::span<const ElementId> prefix(list.data(), mid);
      if (spans(*oracle_, prefix, e))
        hi = mid;
      else
        lo = mid;
    }
    return list[hi - 1];
  }

  /// Ensures e can be marked at level i while keeping the marked sets in
  /// decreasing span order: recursively pulls covering elements of the sets
  /// below into their marked prefixes. Explicit stack, depth < k.
  void pre_search(ElementId e, int i, std::deque<AuxVertexId>& queue) {
    struct Frame {
      ElementId e;
      int i;
      ElementId pending = -1;
    };
    std::vector<Frame> stack{{e, i, -1}};
    while (!stack.empty()) {
      Frame& frame = stack.back();
      if (frame.pending >= 0) {
        mark(frame.pending, frame.i - 1, vertex(frame.e, frame.i));
        queue.push_back({frame.pending, frame.i - 1});
        frame.pending = -1;
      }
      if (frame.i == 0 || marked_set_spans(frame.i - 1, frame.e)) {
        stack.pop_back();
        continue;
      }
      ElementId d = exchange_candidate(frame.i - 1, frame.e);
      frame.pending = d;
      stack.push_back({d, frame.i - 1, -1});
    }
  }

  int parent_of(int vertex_id) const { return parent_[vertex_id]; }
  long long marked_count() const { return marked_count_; }

 private:
  const Packing* packing_;
  const IndependenceOracle* oracle_;
  int k_, n_;
  std::vector<std::vector<ElementId>> ordered_;
  std::vector<std::vector<int>> position_;
  std::vector<int> marked_prefix_;
  std::vector<char> marked_;
  std::vector<int> parent_;
  long long marked_count_ = 0;
};

}  // namespace detail

/// Implicit BFS over the auxiliary graph. Returns a recorded s-t walk when
/// the packing can be grown, nullopt at optimality. The packing must be
/// maximal and span-decreasing; elements outside `universe` are ignored.
inline std::optional<AuxPath> bfs_search(const Packing& packing,
                                         std::span<const ElementId> universe,
                                         QueryCounter* counter = nullptr) {
  const IndependenceOracle& base_oracle = packing.oracle();
  QueryCounter local;
  CountedOracle oracle(base_oracle, counter ? *counter : local);
  const int k = packing.k();
  if (k == 0) return std::nullopt;
  detail::SearchState search(packing, oracle);
  std::deque<AuxVertexId> queue;
  int sink_parent = detail::SearchState::kUnset;

  // Searching a vertex (or a source entry when from == kSource): finish via
  // the first set whose span misses e, otherwise funnel exchanges through
  // the last set.
  auto search_at = [&](ElementId e, int from) -> bool {
    if (!search.set_spans(k - 1, e)) {
      int lo = 0, hi = k - 1;  // predicate true at k-1
      while (lo < hi) {
        int mid = lo + (hi - lo) / 2;
        if (!search.set_spans(mid, e))
          hi = mid;
        else
          lo = mid;
        if (lo + 1 == hi && search.set_spans(lo, e) == false) hi = lo;
        if (lo == hi) break;
        if (lo + 1 == hi) {
          if (!search.set_spans(lo, e))
            hi = lo;
          else
            lo = hi;
          break;
        }
      }
      search.mark(e, lo, from);
      sink_parent = search.vertex(e, lo);
      return true;
    }
    while (!search.marked_set_spans(k - 1, e)) {
      ElementId d = search.exchange_candidate(k - 1, e);
      search.pre_search(d, k - 1, queue);
      search.mark(e, k - 1, from);
      if (d != e) {
        search.mark(d, k - 1, search.vertex(e, k - 1));
        queue.push_back({d, k - 1});
      }
    }
    return false;
  };

  for (ElementId e : universe) {
    if (!packing.uncovered(e)) continue;
    if (search.marked(e, k - 1)) continue;
    if (search_at(e, detail::SearchState::kSource)) break;
    while (!queue.empty() && sink_parent == detail::SearchState::kUnset) {
      AuxVertexId v = queue.front();
      queue.pop_front();
      if (search_at(v.element, search.vertex(v.element, v.set))) break;
    }
    if (sink_parent != detail::SearchState::kUnset) break;
  }

  if (sink_parent == detail::SearchState::kUnset) return std::nullopt;
  AuxPath path;
  for (int v = sink_parent; v != detail::SearchState::kSource; v = search.parent_of(v))
    path.hops.push_back({v / k, v % k});
  std::reverse(path.hops.begin(), path.hops.end());
  return path;
}

inline std::optional<AuxPath> bfs_search(const Packing& packing,
                                         QueryCounter* counter = nullptr) {
  std::vector<ElementId> all(packing.n());
  std::iota(all.begin(), all.end(), 0);
  return bfs_search(packing, all, counter);
}

/// Converts a recorded walk into per-set exchange sequences plus the final
/// insertion, then removes chordal pairs per set so that every sequence
/// satisfies the serial-exchange conditions. Ends with one defensive
/// independence query per touched set.
inline Augmentation prune_path(const Packing& packing, const AuxPath& path,
                               QueryCounter* counter = nullptr) {
  if (path.hops.empty()) throw std::invalid_argument("prune_path: empty path");
  const IndependenceOracle& base_oracle = packing.oracle();
  QueryCounter local;
  CountedOracle oracle(base_oracle, counter ? *counter : local);

  // Ops in walk order: a hop into a member vertex exchanges the carried
  // element in; hops into non-member vertices only redirect the carrier.
  std::vector<Exchange> ops;
  ElementId carried = path.hops.front().element;
  for (size_t idx = 1; idx < path.hops.size(); ++idx) {
    const AuxVertexId& hop = path.hops[idx];
    if (packing.member(hop.set, hop.element)) {
      if (hop.element != carried)  // self-exchanges are no-ops
        ops.push_back({hop.set, carried, hop.element});
      carried = hop.element;
    } else {
      if (hop.element != carried)
        throw std::logic_error("prune_path: walk drops its carried element");
    }
  }
  Augmentation aug;
  aug.final_element = carried;
  aug.final_set = path.hops.back().set;
  aug.version = packing.version();

  // Per-set chord pruning, sets in order of first appearance. For each
  // exchange, binary search the last removal whose element lies in the
  // circuit of I + e and splice the walk segment in between.
  std::vector<int> set_order;
  for (const Exchange& op : ops)
    if (std::find(set_order.begin(), set_order.end(), op.set) == set_order.end())
      set_order.push_back(op.set);

  for (int s : set_order) {
    std::vector<Exchange> pruned;
    pruned.reserve(ops.size());
    size_t idx = 0;
    while (idx < ops.size()) {
      if (ops[idx].set != s) {
        pruned.push_back(ops[idx]);
        ++idx;
        continue;
      }
      // positions of the remaining ops of set s
      std::vector<size_t> positions;
      for (size_t j = idx; j < ops.size(); ++j)
        if (ops[j].set == s) positions.push_back(j);
      const ElementId e = ops[idx].insert;
      // Q(start): does removing the suffix of outs starting at `start`
      // free e? True iff the suffix meets the circuit of I_s + e.
      auto q = [&](size_t start) {
        std::vector<ElementId> probe;
        for (ElementId f : packing.sets()[s]) {
          bool removed = false;
          for (size_t t = start; t < positions.size() && !removed; ++t)
            removed = ops[positions[t]].remove == f;
          if (!removed) probe.push_back(f);
        }
        probe.push_back(e);
        return oracle.is_independent(probe);
      };
      size_t lo = 0;  // q(0) true: the first out is in the circuit
      size_t hi = positions.size();  // q(size) false: e is spanned
      while (lo + 1 < hi) {
        size_t mid = lo + (hi - lo) / 2;
        if (q(mid))
          lo = mid;
        else
          hi = mid;
      }
      pruned.push_back({s, e, ops[positions[lo]].remove});
      idx = positions[lo] + 1;
    }
    ops = std::move(pruned);
  }
  aug.exchanges = std::move(ops);

  // Defensive: each touched set must stay independent under its sequence.
  std::vector<int> touched = set_order;
  if (std::find(touched.begin(), touched.end(), aug.final_set) == touched.end())
    touched.push_back(aug.final_set);
  for (int s : touched) {
    std::vector<ElementId> result;
    for (ElementId f : packing.sets()[s]) {
      bool removed = false;
      for (const Exchange& op : aug.exchanges)
        if (op.set == s && op.remove == f) removed = true;
      if (!removed) result.push_back(f);
    }
    for (const Exchange& op : aug.exchanges)
      if (op.set == s) result.push_back(op.insert);
    if (s == aug.final_set) result.push_back(aug.final_element);
    if (!oracle.is_independent(result))
      throw std::runtime_error("prune_path: pruned augmentation is corrupt");
  }
  return aug;
}

/// Executes an augmentation: the per-set exchanges in order, then the final
/// insertion. Grows the packing by exactly one element and preserves
/// feasibility, maximality, and the decreasing order.
inline void apply(Packing& packing, const Augmentation& aug) {
  if (aug.version != packing.version())
    throw std::invalid_argument("apply: stale augmentation");
  long long before = packing.total_size();
  for (const Exchange& op : aug.exchanges) packing.exchange(op.set, op.insert, op.remove);
  packing.insert(aug.final_set, aug.final_element);
  packing.bump_version();
  if (packing.total_size() != before + 1)
    throw std::logic_error("apply: packing did not grow by one");
  for (ElementId e = 0; e < packing.n(); ++e)
    if (packing.coverage(e) > packing.capacities()[e])
      throw std::logic_error("apply: augmentation overpacked an element");
}

/// Greedy sparsification: extends the packing to ceil(k (1 + ln r)) maximal
/// sets, treating leftover capacity as multiplicity, and returns the union
/// of their elements. The k-fold union optimum restricted to that union
/// equals the optimum over the full ground set.
inline std::vector<ElementId> sparsify(const IndependenceOracle& oracle,
                                       const CapacityVector& u, int k,
                                       const Packing& packing,
                                       QueryCounter* counter = nullptr) {
  QueryCounter local;
  CountedOracle counted(oracle, counter ? *counter : local);
  const int n = oracle.num_elements();
  std::vector<ElementId> base = greedy_base(counted);
  const int r = static_cast<int>(base.size());
  const long long sets_needed =
      static_cast<long long>(std::ceil(k * (1.0 + std::log(std::max(2, r)))));

  std::vector<long long> used(n, 0);
  std::vector<char> in_union(n, 0);
  for (const auto& set : packing.sets())
    for (ElementId e : set) {
      ++used[e];
      in_union[e] = 1;
    }
  std::vector<ElementId> grown;
  for (long long i = packing.k(); i < sets_needed; ++i) {
    grown.clear();
    for (ElementId e = 0; e < n; ++e) {
      if (used[e] >= u[e]) continue;
      grown.push_back(e);
      if (!counted.is_independent(grown)) grown.pop_back();
    }
    for (ElementId e : grown) {
      ++used[e];
      in_union[e] = 1;
    }
  }
  std::vector<ElementId> restricted;
  for (ElementId e = 0; e < n; ++e)
    if (in_union[e]) restricted.push_back(e);
  return restricted;
}

struct HybridResult {
  long long value = 0;
  std::vector<std::vector<ElementId>> sets;
  RunStats stats;
  double chosen_eps = 0.0;
  int restricted_size = 0;
};

/// Exact k-fold union by approximation plus augmentation: a constant-error
/// push-relabel run estimates the optimum, the error parameter balances the
/// run against the per-augmentation search cost, and augmenting paths close
/// the remaining gap.
inline HybridResult hybrid_exact_union(const IndependenceOracle& oracle,
                                       const CapacityVector& u, int k) {
  HybridResult result;
  if (k == 0) return result;
  const int n = oracle.num_elements();

  QueryCounter counter;
  CountedOracle counted(oracle, counter);
  counter.set_phase("estimate");
  std::vector<ElementId> base = greedy_base(counted);
  const int r = static_cast<int>(base.size());

  PRState estimate(oracle, u, k, apx_union_height(0.5), base);
  estimate.run();
  const double opt_hat = 1.5 * static_cast<double>(estimate.value());
  counter.add(estimate.counter().total());

  const double nprime =
      std::min<double>(n, std::ceil(static_cast<double>(k) * r *
                                    (1.0 + std::log(std::max(2, r)))));
  double eps = std::min(
      0.5, std::sqrt(std::log2(2.0 + static_cast<double>(k) * r) /
                     (nprime + opt_hat * std::log2(2.0 + r) + 1.0)));
  result.chosen_eps = eps;

  PRState state(oracle, u, k, apx_union_height(eps), base);
  state.run();
  counter.add(state.counter().total());
  result.stats.exchanges = state.exchanges();
  result.stats.relabels_to_height = state.relabels_to_height();

  Packing packing = extract_packing(state);
  std::vector<ElementId> universe(n);
  std::iota(universe.begin(), universe.end(), 0);
  counter.set_phase("sparsify");
  if (n > static_cast<int>(nprime)) universe = sparsify(oracle, u, k, packing, &counter);
  result.restricted_size = static_cast<int>(universe.size());

  counter.set_phase("augment");
  while (true) {
    auto path = bfs_search(packing, universe, &counter);
    if (!path) break;
    Augmentation aug = prune_path(packing, *path, &counter);
    apply(packing, aug);
    ++result.stats.augmentations;
  }
  result.value = packing.total_size();
  result.sets = packing.sets();
  result.stats.oracle_queries = counter.total();
  return result;
}

}  // namespace matroid
