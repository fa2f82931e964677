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

#include <algorithm>
#include <cassert>
#include <cmath>
#include <deque>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "matroid/oracle.hpp"

namespace matroid {

/// Dual certificate: the level set S = L_{>= threshold} with objective
/// k * rank(S) + u(complement of S). Weak duality makes this an upper bound
/// on every k-fold union value; the solvers return thresholds where the
/// bound is (exactly or approximately) tight.
struct DualCut {
  int threshold = 0;
  std::vector<ElementId> elements;
  long long value = 0;
};

/// The k bases of a push-relabel run together with the level each element
/// had when it was inserted. bucket(i, j) lists the elements inserted into
/// base i at level j in insertion order, so the concatenation of buckets
/// H, H-1, ..., j is the prefix B^(i)_{>= j}.
class LeveledBases {
 public:
  LeveledBases() = default;
  LeveledBases(int k, int n, int height)
      : k_(k),
        n_(n),
        height_(height),
        buckets_(k, std::vector<std::vector<ElementId>>(height + 1)),
        bucket_of_(k, std::vector<int>(n, -1)),
        coverage_(n, 0) {}

  int k() const { return k_; }
  int n() const { return n_; }
  int height() const { return height_; }

  const std::vector<ElementId>& bucket(int i, int j) const { return buckets_[i][j]; }
  bool in_base(int i, ElementId e) const { return bucket_of_[i][e] >= 0; }
  int insertion_level(int i, ElementId e) const { return bucket_of_[i][e]; }
  int coverage(ElementId e) const { return coverage_[e]; }
  const std::vector<int>& coverage() const { return coverage_; }

  void insert(int i, ElementId e, int level) {
    assert(bucket_of_[i][e] < 0);
    buckets_[i][level].push_back(e);
    bucket_of_[i][e] = level;
    ++coverage_[e];
  }

  void remove(int i, ElementId e) {
    int level = bucket_of_[i][e];
    assert(level >= 0);
    auto& bucket = buckets_[i][level];
    bucket.erase(std::find(bucket.begin(), bucket.end(), e));
    bucket_of_[i][e] = -1;
    --coverage_[e];
  }

  /// Elements of B^(i)_{>= j}, levels descending, insertion order within a
  /// level.
  void prefix(int i, int j, std::vector<ElementId>& out) const {
    out.clear();
    for (int level = height_; level >= j; --level)
      out.insert(out.end(), buckets_[i][level].begin(), buckets_[i][level].end());
  }

  std::vector<ElementId> base_list(int i) const {
    std::vector<ElementId> out;
    prefix(i, 0, out);
    return out;
  }

  int base_size(int i) const {
    int s = 0;
    for (const auto& bucket : buckets_[i]) s += static_cast<int>(bucket.size());
    return s;
  }

 private:
  int k_ = 0;
  int n_ = 0;
  int height_ = 0;
  std::vector<std::vector<std::vector<ElementId>>> buckets_;
  std::vector<std::vector<int>> bucket_of_;
  std::vector<int> coverage_;
};

/// Outcome of one greedy insertion.
struct InsertOutcome {
  ElementId element = -1;
  bool raised_to_height = false;
  int base = -1;       // exchange only
  int new_level = -1;  // exchange only
  ElementId removed = -1;
};

struct RunStats {
  long long oracle_queries = 0;
  long long exchanges = 0;
  long long relabels_to_height = 0;
  long long augmentations = 0;
  double wall_ms = 0.0;
};

/// Matroid push-relabel state for k-fold union with integer capacities.
/// Maintains k bases in level-wise decreasing order, per-element levels,
/// and a FIFO queue of uncovered elements below the height. run() drives
/// greedy insertions until every uncovered element sits at level >= H.
class PRState {
 public:
  PRState(const IndependenceOracle& oracle, CapacityVector u, int k, int height,
          std::optional<std::vector<ElementId>> initial_base = std::nullopt)
      : oracle_(oracle, counter_),
        u_(std::move(u)),
        k_(k),
        height_(height),
        n_(oracle.num_elements()) {
    if (k_ < 1) throw std::invalid_argument("push-relabel requires k >= 1");
    if (height_ < 1) throw std::invalid_argument("push-relabel requires height >= 1");
    if (static_cast<int>(u_.size()) != n_)
      throw std::invalid_argument("capacity vector size mismatch");
    for (Capacity c : u_)
      if (c < 0) throw std::invalid_argument("negative capacity");

    counter_.set_phase("init");
    std::vector<ElementId> base = initial_base ? std::move(*initial_base)
                                               : greedy_base(oracle_);
    rank_ = static_cast<int>(base.size());
    level_.assign(n_, 0);
    bases_ = LeveledBases(k_, n_, height_);
    for (int i = 0; i < k_; ++i)
      for (ElementId e : base) bases_.insert(i, e, 0);
    for (ElementId e = 0; e < n_; ++e)
      if (uncovered(e)) queue_.push_back(e);
    counter_.set_phase("run");
  }

  int n() const { return n_; }
  int k() const { return k_; }
  int height() const { return height_; }
  int matroid_rank() const { return rank_; }
  const CapacityVector& capacities() const { return u_; }
  const std::vector<int>& levels() const { return level_; }
  const LeveledBases& bases() const { return bases_; }
  const std::vector<int>& coverage() const { return bases_.coverage(); }
  QueryCounter& counter() { return counter_; }
  const QueryCounter& counter() const { return counter_; }
  long long exchanges() const { return exchanges_; }
  long long relabels_to_height() const { return relabels_; }

  bool uncovered(ElementId e) const { return bases_.coverage(e) < u_[e]; }
  bool overpacked(ElementId e) const { return bases_.coverage(e) > u_[e]; }

  /// Does B^(i)_{>= j} span e? One oracle query unless e is a member.
  bool span_test(int i, int j, ElementId e) const {
    if (j <= 0) return true;  // a base spans the whole ground set
    if (bases_.in_base(i, e) && bases_.insertion_level(i, e) >= j) return true;
    bases_.prefix(i, j, scratch_);
    return spans(oracle_, scratch_, e);
  }

  /// Runs one greedy insertion on the next live queue entry. Returns
  /// nullopt once no uncovered element below the height remains.
  std::optional<InsertOutcome> step() {
    while (!queue_.empty()) {
      ElementId e = queue_.front();
      queue_.pop_front();
      if (!uncovered(e) || level_[e] >= height_) continue;
      return greedy_insert(e);
    }
    return std::nullopt;
  }

  void run() {
    while (step()) {
    }
  }

  /// Sum of min(u(e), x(e)): the k-fold union objective of the current bases.
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

  /// rank(L_{>= j}) for j = 0..height+1, computed with one descending
  /// greedy sweep (n queries total).
  std::vector<int> level_set_ranks() const {
    std::vector<ElementId> order(n_);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](ElementId a, ElementId b) { return level_[a] > level_[b]; });
    std::vector<int> rk(height_ + 2, 0);
    std::vector<ElementId> independent;
    int pos = 0;
    for (int j = height_; j >= 0; --j) {
      while (pos < n_ && level_[order[pos]] >= j) {
        independent.push_back(order[pos]);
        if (!oracle_.is_independent(independent)) independent.pop_back();
        ++pos;
      }
      rk[j] = static_cast<int>(independent.size());
    }
    return rk;
  }

  /// Exact dual: a threshold j in [1, H] with rank(L_{>=j}) = rank(L_{>j});
  /// exists whenever H > r + 2 and then the cut value equals value().
  DualCut exact_dual() const {
    counter_.set_phase("dual");
    std::vector<int> rk = level_set_ranks();
    for (int j = 1; j <= height_; ++j) {
      if (rk[j] == rk[j + 1]) {
        DualCut cut = make_cut(j, rk[j]);
        counter_.set_phase("run");
        return cut;
      }
    }
    throw std::logic_error("exact_dual: no flat level found; invariants violated");
  }

  /// Approximate dual: picks a bucket row j in [1, H-1] with
  /// sum_i |B^(i)_j| <= eps * sum_i |B^(i)_{>=1}| and returns the cut at
  /// threshold j+1; its value is at most (1+eps) * value() when the state
  /// ran with H >= ceil(1/eps)+3.
  DualCut apx_dual(double eps) const {
    counter_.set_phase("dual");
    std::vector<long long> row(height_ + 1, 0);
    long long denom = 0;
    for (int i = 0; i < k_; ++i)
      for (int j = 1; j <= height_; ++j) {
        long long s = static_cast<long long>(bases_.bucket(i, j).size());
        row[j] += s;
        denom += s;
      }
    int pick = -1;
    for (int j = 1; j < height_; ++j) {
      // row * 1 <= eps * denom, kept in integers via a scaled compare
      if (static_cast<double>(row[j]) <= eps * static_cast<double>(denom)) {
        pick = j;
        break;
      }
    }
    if (pick < 0) throw std::logic_error("apx_dual: no sparse level row; height too small");
    std::vector<int> rk = level_set_ranks();
    DualCut cut = make_cut(pick + 1, rk[pick + 1]);
    counter_.set_phase("run");
    return cut;
  }

 private:
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

  InsertOutcome greedy_insert(ElementId e) {
    assert(uncovered(e) && level_[e] < height_);
    // Step 1: spanned by B^(k)_{>= H-1} means e can climb straight to H.
    if (span_test(k_ - 1, height_ - 1, e)) {
      level_[e] = height_;
      ++relabels_;
      return {e, true, -1, height_, -1};
    }
    // First level jstar >= level(e) where B^(k)_{>= jstar} does not span e.
    // Doubling then bisection; B^(k)_{>= H-1} is a known non-spanning anchor.
    const int lev = level_[e];
    int jstar;
    if (!span_test(k_ - 1, lev, e)) {
      jstar = lev;
    } else {
      int lo = lev;  // spanning
      int hi = height_ - 1;  // non-spanning
      int step = 1;
      while (lo + step < hi) {
        if (span_test(k_ - 1, lo + step, e)) {
          lo += step;
          step *= 2;
        } else {
          hi = lo + step;
          break;
        }
      }
      while (lo + 1 < hi) {
        int mid = lo + (hi - lo) / 2;
        if (span_test(k_ - 1, mid, e))
          lo = mid;
        else
          hi = mid;
      }
      jstar = hi;
    }
    assert(jstar >= 1);
    // First base i with B^(i)_{>= jstar} not spanning e; spans form a
    // nested descending chain over i, so binary search applies.
    int lo = 0, hi = k_ - 1;  // predicate true at k-1
    while (lo < hi) {
      int mid = lo + (hi - lo) / 2;
      if (!span_test(mid, jstar, e))
        hi = mid;
      else
        lo = mid + 1;
    }
    const int base = lo;
    bases_.prefix(base, jstar, scratch_);
    std::vector<ElementId> fixed = scratch_;
    ElementId removed = circuit_element(oracle_, bases_.bucket(base, jstar - 1), fixed, e);
    bases_.remove(base, removed);
    bases_.insert(base, e, jstar);
    level_[e] = jstar;
    ++exchanges_;
    if (removed != e && uncovered(removed) && level_[removed] < height_)
      queue_.push_back(removed);
    if (uncovered(e) && level_[e] < height_) queue_.push_back(e);
    return {e, false, base, jstar, removed};
  }

  mutable QueryCounter counter_;
  CountedOracle oracle_;
  CapacityVector u_;
  int k_;
  int height_;
  int n_;
  int rank_ = 0;
  std::vector<int> level_;
  LeveledBases bases_;
  std::deque<ElementId> queue_;
  long long exchanges_ = 0;
  long long relabels_ = 0;
  mutable std::vector<ElementId> scratch_;
};

struct UnionResult {
  long long value = 0;
  std::vector<std::vector<ElementId>> bases;
  DualCut dual;
  RunStats stats;
  int height = 0;
};

inline int exact_union_height(int rank) { return rank + 3; }

inline int apx_union_height(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must be in (0,1)");
  return static_cast<int>(std::ceil(1.0 / eps)) + 3;
}

namespace detail {

inline UnionResult collect(PRState& state, const DualCut& dual) {
  UnionResult result;
  result.value = state.value();
  for (int i = 0; i < state.k(); ++i) result.bases.push_back(state.bases().base_list(i));
  result.dual = dual;
  result.stats.oracle_queries = state.counter().total();
  result.stats.exchanges = state.exchanges();
  result.stats.relabels_to_height = state.relabels_to_height();
  result.height = state.height();
  return result;
}

inline UnionResult union_k0(const IndependenceOracle& oracle, const CapacityVector& u) {
  UnionResult result;
  result.value = 0;
  result.dual.threshold = 0;
  result.dual.elements.resize(oracle.num_elements());
  std::iota(result.dual.elements.begin(), result.dual.elements.end(), 0);
  result.dual.value = 0;
  (void)u;
  return result;
}

}  // namespace detail

/// Maximum k-fold matroid union with integer capacities, plus a dual cut of
/// equal value. Runs push-relabel at height r + 3.
inline UnionResult exact_union(const IndependenceOracle& oracle, const CapacityVector& u,
                               int k) {
  if (k == 0) return detail::union_k0(oracle, u);
  std::vector<ElementId> base = greedy_base(oracle);
  int r = static_cast<int>(base.size());
  PRState state(oracle, u, k, exact_union_height(r), base);
  state.run();
  DualCut dual = state.exact_dual();
  UnionResult result = detail::collect(state, dual);
  if (result.dual.value != result.value)
    throw std::logic_error("exact_union: primal and dual disagree");
  return result;
}

/// (1-eps)-approximate union with a (1+eps)-approximate dual, at height
/// ceil(1/eps) + 3.
inline UnionResult apx_union(const IndependenceOracle& oracle, const CapacityVector& u,
                             int k, double eps) {
  if (k == 0) return detail::union_k0(oracle, u);
  PRState state(oracle, u, k, apx_union_height(eps));
  state.run();
  DualCut dual = state.apx_dual(eps);
  return detail::collect(state, dual);
}

/// Evaluates k * rank(S) + u(complement of S) for an arbitrary S against a
/// fresh oracle; used to re-check reported duals without trusting the run.
inline long long evaluate_cut(const IndependenceOracle& oracle, const CapacityVector& u,
                              int k, std::span<const ElementId> set) {
  long long complement_u = total_capacity(u);
  for (ElementId e : set) complement_u -= u[e];
  return static_cast<long long>(k) * rank(oracle, set) + complement_u;
}

}  // namespace matroid
