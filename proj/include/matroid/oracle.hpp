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
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace matroid {

/// Dense element id in [0, n).
using ElementId = int;

using Capacity = long long;
using CapacityVector = std::vector<Capacity>;

inline Capacity total_capacity(const CapacityVector& u) {
  return std::accumulate(u.begin(), u.end(), Capacity{0});
}

/// Black-box independence test. All solvers in this library access the
/// matroid exclusively through this interface and account their cost in
/// oracle queries. A query set is a list of distinct element ids in any
/// order; assembling the set is charged to the query itself.
class IndependenceOracle {
 public:
  virtual ~IndependenceOracle() = default;
  virtual int num_elements() const = 0;
  virtual bool is_independent(std::span<const ElementId> set) const = 0;
};

// Tracks oracle invocations, optionally split by a caller-chosen phase tag.
class QueryCounter {
 public:
  void set_phase(std::string phase) { phase_ = std::move(phase); }
  const std::string& phase() const { return phase_; }

  void add(long long n = 1) {
    total_ += n;
    by_phase_[phase_] += n;
  }

  long long total() const { return total_; }
  long long in_phase(const std::string& phase) const {
    auto it = by_phase_.find(phase);
    return it == by_phase_.end() ? 0 : it->second;
  }
  const std::map<std::string, long long>& breakdown() const { return by_phase_; }

 private:
  long long total_ = 0;
  std::map<std::string, long long> by_phase_;
  std::string phase_ = "default";
};

// Transparent counting wrapper around another oracle. One instance per
// solver run; not shared across threads.
class CountedOracle final : public IndependenceOracle {
 public:
  CountedOracle(const IndependenceOracle& base, QueryCounter& counter)
      : base_(&base), counter_(&counter) {}

  int num_elements() const override { return base_->num_elements(); }

  bool is_independent(std::span<const ElementId> set) const override {
    counter_->add();
    return base_->is_independent(set);
  }

 private:
  const IndependenceOracle* base_;
  QueryCounter* counter_;
};

/// Rank of S by a greedy scan: one query per element of S. The result does
/// not depend on the scan order.
inline int rank(const IndependenceOracle& oracle, std::span<const ElementId> set) {
  std::vector<ElementId> independent;
  independent.reserve(set.size());
  for (ElementId e : set) {
    independent.push_back(e);
    if (!oracle.is_independent(independent)) independent.pop_back();
  }
  return static_cast<int>(independent.size());
}

/// True iff `independent` spans e, i.e. e is in the set or adding e creates
/// a dependency. Exactly one query when e is not a member.
inline bool spans(const IndependenceOracle& oracle,
                  std::span<const ElementId> independent, ElementId e) {
  if (std::find(independent.begin(), independent.end(), e) != independent.end())
    return true;
  std::vector<ElementId> probe(independent.begin(), independent.end());
  probe.push_back(e);
  return !oracle.is_independent(probe);
}

/// Greedy base in the given scan order; n queries, deterministic.
inline std::vector<ElementId> greedy_base(const IndependenceOracle& oracle,
                                          std::span<const ElementId> order) {
  std::vector<ElementId> base;
  for (ElementId e : order) {
    base.push_back(e);
    if (!oracle.is_independent(base)) base.pop_back();
  }
  return base;
}

inline std::vector<ElementId> greedy_base(const IndependenceOracle& oracle) {
  std::vector<ElementId> order(oracle.num_elements());
  std::iota(order.begin(), order.end(), 0);
  return greedy_base(oracle, order);
}

/// Last element d of the minimal prefix Q of `ordered` such that
/// fixed ∪ Q spans e. Requires fixed ∪ ordered independent, fixed not
/// spanning e, and fixed ∪ ordered spanning e; then d lies in the circuit
/// of (fixed ∪ ordered) + e, so the exchange −d +e keeps independence.
/// Doubling followed by bisection: O(log |ordered|) queries.
inline ElementId circuit_element(const IndependenceOracle& oracle,
                                 std::span<const ElementId> ordered,
                                 std::span<const ElementId> fixed, ElementId e) {
  const int m = static_cast<int>(ordered.size());
  std::vector<ElementId> probe(fixed.begin(), fixed.end());
  // spanned(p): does fixed ∪ ordered[0..p) span e?
  auto spanned = [&](int p) {
    probe.resize(fixed.size());
    probe.insert(probe.end(), ordered.begin(), ordered.begin() + p);
    return spans(oracle, probe, e);
  };
  if (spanned(0)) throw std::invalid_argument("circuit_element: fixed already spans e");
  if (!spanned(m)) throw std::runtime_error("circuit_element: set does not span e");
  // Find the first p in [1, m] with spanned(p); monotone in p.
  int lo = 0, hi = 1;  // spanned(lo) false
  while (hi < m && !spanned(hi)) {
    lo = hi;
    hi = std::min(2 * hi, m);
  }
  // spanned(hi) true (hi == m known true when the loop fell through).
  while (lo + 1 < hi) {
    int mid = lo + (hi - lo) / 2;
    if (spanned(mid))
      hi = mid;
    else
      lo = mid;
  }
  return ordered[hi - 1];
}

}  // namespace matroid
