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

#include <cmath>
#include <optional>
#include <vector>

#include "matroid/matroids.hpp"
#include "matroid/oracle.hpp"
#include "matroid/push_relabel.hpp"

namespace matroid {

/// Either k bases with x(e) <= u(e) everywhere, or a set S whose scaled
/// Edmonds inequality u(comp S) >= (1+eps) k (r - rank S) fails.
struct PackDecision {
  bool packed = false;
  std::vector<std::vector<ElementId>> bases;
  std::vector<ElementId> certificate;
  int threshold = 0;
  RunStats stats;
};

/// Either k bases with x(e) >= u(e) everywhere, or a set S with
/// u(S) > (1-eps) k rank(S).
struct CoverDecision {
  bool covered = false;
  std::vector<std::vector<ElementId>> bases;
  std::vector<ElementId> certificate;
  int threshold = 0;
  RunStats stats;
};

inline int packing_height(double eps, Capacity total_u) {
  double delta = eps / (1.0 + eps);
  double cap = static_cast<double>(std::max<Capacity>(2, total_u));
  return static_cast<int>(std::ceil(std::log(cap) / std::log1p(delta))) + 2;
}

inline int covering_height(double eps, int rank) {
  double cap = static_cast<double>(std::max(2, rank));
  return static_cast<int>(std::ceil(std::log(cap) / std::log(1.0 / (1.0 - eps)))) + 2;
}

/// Exact packing decision via k-fold union: a packing of k bases exists
/// iff the union value reaches k*r.
inline PackDecision exact_packing(const IndependenceOracle& oracle, const CapacityVector& u,
                                  int k) {
  PackDecision decision;
  if (k == 0) {
    decision.packed = true;
    return decision;
  }
  UnionResult result = exact_union(oracle, u, k);
  int r = 0;
  if (!result.bases.empty()) r = static_cast<int>(result.bases.front().size());
  decision.stats = result.stats;
  if (result.value == static_cast<long long>(k) * r) {
    decision.packed = true;
    decision.bases = std::move(result.bases);
  } else {
    decision.certificate = std::move(result.dual.elements);
    decision.threshold = result.dual.threshold;
  }
  return decision;
}

/// Exact covering decision via k-fold union with the capacities as demands:
/// a covering exists iff the union value reaches u(E).
inline CoverDecision exact_covering(const IndependenceOracle& oracle, const CapacityVector& u,
                                    int k) {
  CoverDecision decision;
  if (total_capacity(u) == 0) {
    decision.covered = true;
    decision.bases.assign(k, greedy_base(oracle));
    return decision;
  }
  if (k == 0) {
    // some demand but no bases
    for (ElementId e = 0; e < oracle.num_elements(); ++e)
      if (u[e] > 0) decision.certificate.push_back(e);
    return decision;
  }
  UnionResult result = exact_union(oracle, u, k);
  decision.stats = result.stats;
  if (result.value == total_capacity(u)) {
    decision.covered = true;
    decision.bases = std::move(result.bases);
  } else {
    decision.certificate = std::move(result.dual.elements);
    decision.threshold = result.dual.threshold;
  }
  return decision;
}

/// Approximate packing decision at logarithmic height: either a genuine
/// packing of k bases, or a certificate that even (1+eps)k bases cannot be
/// packed. Zero-capacity elements are split off first so the certificate
/// scan always lands.
inline PackDecision decide_packing(const IndependenceOracle& oracle, const CapacityVector& u,
                                   int k, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must be in (0,1)");
  if (k < 1) throw std::invalid_argument("decide_packing requires k >= 1");
  const int n = oracle.num_elements();
  PackDecision decision;

  std::vector<ElementId> keep;
  for (ElementId e = 0; e < n; ++e)
    if (u[e] > 0) keep.push_back(e);

  if (static_cast<int>(keep.size()) < n) {
    // Solve on the positive-capacity restriction. If its rank falls short
    // of r, no base fits inside it and the zero-capacity complement is an
    // immediate certificate.
    std::vector<ElementId> all(n);
    std::iota(all.begin(), all.end(), 0);
    RestrictedOracle restricted(oracle, keep);
    int r_full = rank(oracle, all);
    int r_keep = static_cast<int>(greedy_base(restricted).size());
    if (r_keep < r_full) {
      decision.certificate = keep;
      decision.threshold = 0;
      return decision;
    }
    CapacityVector u_keep(keep.size());
    for (size_t i = 0; i < keep.size(); ++i) u_keep[i] = u[keep[i]];
    PackDecision inner = decide_packing(restricted, u_keep, k, eps);
    decision.packed = inner.packed;
    decision.stats = inner.stats;
    decision.threshold = inner.threshold;
    for (auto& base : inner.bases) {
      std::vector<ElementId> mapped;
      mapped.reserve(base.size());
      for (ElementId e : base) mapped.push_back(restricted.original_id(e));
      decision.bases.push_back(std::move(mapped));
    }
    for (ElementId e : inner.certificate)
      decision.certificate.push_back(restricted.original_id(e));
    return decision;
  }

  const int height = packing_height(eps, total_capacity(u));
  PRState state(oracle, u, k, height);
  state.run();
  decision.stats.oracle_queries = state.counter().total();
  decision.stats.exchanges = state.exchanges();
  decision.stats.relabels_to_height = state.relabels_to_height();

  bool overpacked = false;
  for (ElementId e = 0; e < n && !overpacked; ++e) overpacked = state.overpacked(e);
  if (!overpacked) {
    decision.packed = true;
    for (int i = 0; i < k; ++i) decision.bases.push_back(state.bases().base_list(i));
    return decision;
  }

  // Geometric pigeonhole: some level j in [1, H-1] has
  // u(L_j) < (eps/(1+eps)) * u(L_{<=j}); the set above it certifies
  // infeasibility at (1+eps)k.
  std::vector<long long> level_u(height + 1, 0);
  for (ElementId e = 0; e < n; ++e) level_u[state.levels()[e]] += u[e];
  long long below = level_u[0];
  double delta = eps / (1.0 + eps);
  for (int j = 1; j < height; ++j) {
    below += level_u[j];
    if (static_cast<double>(level_u[j]) < delta * static_cast<double>(below)) {
      decision.certificate = state.level_set_at_least(j + 1);
      decision.threshold = j + 1;
      return decision;
    }
  }
  throw std::logic_error("decide_packing: pigeonhole scan failed");
}

/// Approximate covering decision: either a covering by k bases, or a set S
/// with u(S) > (1-eps) k rank(S). Capacitated loops and demands beyond k*r
/// short-circuit to immediate certificates.
inline CoverDecision decide_covering(const IndependenceOracle& oracle, const CapacityVector& u,
                                     int k, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must be in (0,1)");
  const int n = oracle.num_elements();
  CoverDecision decision;
  if (total_capacity(u) == 0) {
    decision.covered = true;
    decision.bases.assign(std::max(k, 0), greedy_base(oracle));
    return decision;
  }
  if (k < 1) {
    for (ElementId e = 0; e < n; ++e)
      if (u[e] > 0) decision.certificate.push_back(e);
    return decision;
  }

  // A capacitated loop can never be covered.
  std::vector<ElementId> loops;
  for (ElementId e = 0; e < n; ++e) {
    std::vector<ElementId> single{e};
    if (u[e] > 0 && !oracle.is_independent(single)) loops.push_back(e);
  }
  if (!loops.empty()) {
    decision.certificate = std::move(loops);
    return decision;
  }

  std::vector<ElementId> base = greedy_base(oracle);
  const int r = static_cast<int>(base.size());
  if (total_capacity(u) > static_cast<long long>(k) * r) {
    // u(E) > k * rank(E): E itself violates the covering inequality.
    decision.certificate.resize(n);
    std::iota(decision.certificate.begin(), decision.certificate.end(), 0);
    return decision;
  }

  const int height = covering_height(eps, r);
  PRState state(oracle, u, k, height, base);
  state.run();
  decision.stats.oracle_queries = state.counter().total();
  decision.stats.exchanges = state.exchanges();
  decision.stats.relabels_to_height = state.relabels_to_height();

  bool all_covered = true;
  for (ElementId e = 0; e < n && all_covered; ++e) all_covered = !state.uncovered(e);
  if (all_covered) {
    decision.covered = true;
    for (int i = 0; i < k; ++i) decision.bases.push_back(state.bases().base_list(i));
    return decision;
  }

  // rank(L_{>=j}) shrinks from r to >= 1 across the levels; some step loses
  // at most a (1-eps) factor and L_{>=j} is the certificate there.
  std::vector<int> rk = state.level_set_ranks();
  for (int j = 1; j < height; ++j) {
    if (static_cast<double>(rk[j + 1]) >= (1.0 - eps) * static_cast<double>(rk[j])) {
      decision.certificate = state.level_set_at_least(j);
      decision.threshold = j;
      return decision;
    }
  }
  throw std::logic_error("decide_covering: pigeonhole scan failed");
}

}  // namespace matroid
