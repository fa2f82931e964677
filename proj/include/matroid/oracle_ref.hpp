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

// Brute-force reference oracles. Everything here enumerates: subsets for
// duals and feasibility, vertex partitions for graph strength, z-vectors
// for reinforcement, and the full auxiliary graph for augmenting searches.
// They are deliberately slow and capped at small sizes; solvers are tested
// against them, never the other way around.

#include <boost/rational.hpp>
#include <cstdint>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <vector>

#include "matroid/graph.hpp"
#include "matroid/oracle.hpp"

namespace matroid::ref {

using Rational = boost::rational<long long>;

struct EnumBudget {
  int max_elements = 20;
  long long max_subsets = 1LL << 20;
};

inline void check_budget(int n, const EnumBudget& budget) {
  if (n > budget.max_elements || (1LL << n) > budget.max_subsets)
    throw std::runtime_error("enumeration budget exceeded");
}

namespace detail {

inline std::vector<ElementId> mask_to_set(std::uint32_t mask, int n) {
  std::vector<ElementId> set;
  for (int e = 0; e < n; ++e)
    if (mask & (1u << e)) set.push_back(e);
  return set;
}

inline long long mask_capacity(std::uint32_t mask, const CapacityVector& u) {
  long long total = 0;
  for (size_t e = 0; e < u.size(); ++e)
    if (mask & (1u << e)) total += u[e];
  return total;
}

}  // namespace detail

/// min over all S of k*rank(S) + u(complement of S): the exact k-fold
/// union value by full subset enumeration.
inline long long dual_enum_union(const IndependenceOracle& oracle, const CapacityVector& u,
                                 int k, const EnumBudget& budget = {}) {
  const int n = oracle.num_elements();
  check_budget(n, budget);
  long long best = total_capacity(u);  // S = empty
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    auto set = detail::mask_to_set(mask, n);
    long long value = static_cast<long long>(k) * rank(oracle, set) +
                      (total_capacity(u) - detail::mask_capacity(mask, u));
    best = std::min(best, value);
  }
  return best;
}

/// min over S with rank(S) < r of u(comp S) / (r - rank(S)); the largest
/// fractional number of bases that can be packed.
inline Rational strength_enum(const IndependenceOracle& oracle, const CapacityVector& u,
                              const EnumBudget& budget = {}) {
  const int n = oracle.num_elements();
  check_budget(n, budget);
  std::vector<ElementId> all(n);
  std::iota(all.begin(), all.end(), 0);
  const int r = rank(oracle, all);
  if (r == 0) throw std::invalid_argument("strength undefined for rank-0 matroid");
  std::optional<Rational> best;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    auto set = detail::mask_to_set(mask, n);
    int rk = rank(oracle, set);
    if (rk >= r) continue;
    Rational ratio(total_capacity(u) - detail::mask_capacity(mask, u), r - rk);
    if (!best || ratio < *best) best = ratio;
  }
  return *best;
}

/// max over S with rank(S) >= 1 of u(S) / rank(S); the fractional covering
/// number (arboricity in graphs).
inline Rational covering_enum(const IndependenceOracle& oracle, const CapacityVector& u,
                              const EnumBudget& budget = {}) {
  const int n = oracle.num_elements();
  check_budget(n, budget);
  Rational best(0, 1);
  bool found = false;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    auto set = detail::mask_to_set(mask, n);
    int rk = rank(oracle, set);
    if (rk == 0) {
      if (detail::mask_capacity(mask, u) > 0)
        throw std::invalid_argument("covering number infinite: capacitated loop");
      continue;
    }
    Rational ratio(detail::mask_capacity(mask, u), rk);
    if (!found || ratio > best) {
      best = ratio;
      found = true;
    }
  }
  if (!found) throw std::invalid_argument("covering number undefined: empty matroid");
  return best;
}

/// Packing feasibility at a rational scale: u(comp S) >= k * (r - rank S)
/// for all S, with k = num/den.
inline bool pack_feasible_enum_scaled(const IndependenceOracle& oracle,
                                      const CapacityVector& u, long long num, long long den,
                                      const EnumBudget& budget = {}) {
  const int n = oracle.num_elements();
  check_budget(n, budget);
  std::vector<ElementId> all(n);
  std::iota(all.begin(), all.end(), 0);
  const int r = rank(oracle, all);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    auto set = detail::mask_to_set(mask, n);
    long long rk = rank(oracle, set);
    long long lhs = (total_capacity(u) - detail::mask_capacity(mask, u)) * den;
    long long rhs = num * (r - rk);
    if (lhs < rhs) return false;
  }
  return true;
}

inline bool pack_feasible_enum(const IndependenceOracle& oracle, const CapacityVector& u,
                               int k, const EnumBudget& budget = {}) {
  return pack_feasible_enum_scaled(oracle, u, k, 1, budget);
}

/// Covering feasibility at a rational scale: k * rank(S) >= u(S) for all S.
inline bool cover_feasible_enum_scaled(const IndependenceOracle& oracle,
                                       const CapacityVector& u, long long num, long long den,
                                       const EnumBudget& budget = {}) {
  const int n = oracle.num_elements();
  check_budget(n, budget);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    auto set = detail::mask_to_set(mask, n);
    long long rk = rank(oracle, set);
    if (num * rk < detail::mask_capacity(mask, u) * den) return false;
  }
  return true;
}

inline bool cover_feasible_enum(const IndependenceOracle& oracle, const CapacityVector& u,
                                int k, const EnumBudget& budget = {}) {
  return cover_feasible_enum_scaled(oracle, u, k, 1, budget);
}

/// Minimum-cost reinforcement by exhausting all z with entries <= zmax.
inline double reinforce_enum(const IndependenceOracle& oracle, const CapacityVector& u,
                             const std::vector<double>& costs, int k, int zmax,
                             const EnumBudget& budget = {}) {
  const int n = oracle.num_elements();
  check_budget(n, budget);
  CapacityVector augmented(u);
  std::vector<int> z(n, 0);
  double best = -1.0;
  while (true) {
    for (int e = 0; e < n; ++e) augmented[e] = u[e] + z[e];
    if (pack_feasible_enum(oracle, augmented, k, budget)) {
      double cost = 0;
      for (int e = 0; e < n; ++e) cost += costs[e] * z[e];
      if (best < 0 || cost < best) best = cost;
    }
    int pos = 0;
    while (pos < n && z[pos] == zmax) z[pos++] = 0;
    if (pos == n) break;
    ++z[pos];
  }
  if (best < 0) throw std::runtime_error("reinforce_enum: no feasible z within zmax");
  return best;
}

/// Graph strength by vertex-partition enumeration:
/// min over partitions P of u(cross edges) / (|P| - #components). Must agree
/// with strength_enum on the graphic matroid (Tutte/Nash-Williams).
inline Rational partition_strength_enum(const Graph& g, const CapacityVector& u) {
  const int nv = g.num_vertices;
  if (nv > 8) throw std::runtime_error("partition enumeration capped at 8 vertices");
  std::vector<ElementId> all(g.num_edges());
  std::iota(all.begin(), all.end(), 0);
  const int base_components = nv - graphic_rank(g, all);
  // Enumerate set partitions of the vertices via restricted growth strings.
  std::vector<int> part(nv, 0);
  std::optional<Rational> best;
  auto evaluate = [&](int parts) {
    if (parts - base_components <= 0) return;
    long long cross = 0;
    for (int idx = 0; idx < g.num_edges(); ++idx)
      if (part[g.edges[idx].tail] != part[g.edges[idx].head]) cross += u[idx];
    Rational ratio(cross, parts - base_components);
    if (!best || ratio < *best) best = ratio;
  };
  std::vector<int> label(nv, -1);
  auto rec = [&](auto&& self, int v, int max_label) -> void {
    if (v == nv) {
      for (int i = 0; i < nv; ++i) part[i] = label[i];
      evaluate(max_label);
      return;
    }
    for (int l = 0; l <= max_label; ++l) {
      label[v] = l;
      self(self, v + 1, std::max(max_label, l + 1));
    }
    label[v] = -1;
  };
  label[0] = 0;
  rec(rec, 1, 1);
  if (!best) throw std::invalid_argument("partition strength undefined");
  return *best;
}

// ---------------------------------------------------------------------------
// Explicit auxiliary graph for augmenting-path searches.
// ---------------------------------------------------------------------------

/// A packing of k independent sets over a shared ground set; the reference
/// search below and the implicit search in augment.hpp both run on this
/// shape. Kept intentionally bare.
struct PackingView {
  const IndependenceOracle* oracle = nullptr;
  const CapacityVector* u = nullptr;
  std::vector<std::vector<ElementId>> sets;

  int k() const { return static_cast<int>(sets.size()); }
  int n() const { return oracle->num_elements(); }

  std::vector<int> coverage() const {
    std::vector<int> x(n(), 0);
    for (const auto& set : sets)
      for (ElementId e : set) ++x[e];
    return x;
  }
};

struct AuxArc {
  // -1 encodes s as from, -2 encodes t as to; otherwise vertex = e * k + i.
  int from = 0;
  int to = 0;
};

/// Materializes every arc of the auxiliary exchange graph by direct oracle
/// tests and runs plain BFS from s. Returns the arc sequence of one
/// shortest s-t path, or nullopt.
inline std::optional<std::vector<AuxArc>> explicit_aux_bfs(const PackingView& packing) {
  const int n = packing.n();
  const int k = packing.k();
  if (static_cast<long long>(n) * k > 200)
    throw std::runtime_error("explicit auxiliary graph capped at 200 vertices");
  const IndependenceOracle& oracle = *packing.oracle;
  std::vector<int> x = packing.coverage();
  std::vector<std::vector<char>> member(k, std::vector<char>(n, 0));
  for (int i = 0; i < k; ++i)
    for (ElementId e : packing.sets[i]) member[i][e] = 1;
  auto uncovered = [&](ElementId e) { return x[e] < (*packing.u)[e]; };
  auto covered = [&](ElementId e) { return x[e] >= (*packing.u)[e]; };

  const int num_vertices = n * k + 2;  // plus s, t handled separately
  const int S = num_vertices - 2, T = num_vertices - 1;
  auto vid = [&](ElementId e, int i) { return e * k + i; };

  // Adjacency built arc type by arc type.
  std::vector<std::vector<int>> adj(num_vertices);
  std::vector<ElementId> probe;
  auto set_minus_plus = [&](int i, ElementId remove, ElementId add) {
    probe.clear();
    for (ElementId f : packing.sets[i])
      if (f != remove) probe.push_back(f);
    if (add >= 0) probe.push_back(add);
    return oracle.is_independent(probe);
  };
  for (ElementId e = 0; e < n; ++e) {
    for (int i = 0; i < k; ++i) {
      if (uncovered(e) && !member[i][e]) adj[S].push_back(vid(e, i));  // type 1
      if (!member[i][e]) {
        for (ElementId d : packing.sets[i])  // type 2
          if (d != e && set_minus_plus(i, d, e)) adj[vid(e, i)].push_back(vid(d, i));
        if (!spans(oracle, packing.sets[i], e)) adj[vid(e, i)].push_back(T);  // type 4
      } else if (covered(e)) {
        for (int j = 0; j < k; ++j) {  // type 3
          if (j == i || member[j][e]) continue;
          if (spans(oracle, packing.sets[j], e)) adj[vid(e, i)].push_back(vid(e, j));
        }
      }
    }
  }

  std::vector<int> parent(num_vertices, -3);
  std::queue<int> queue;
  parent[S] = S;
  queue.push(S);
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop();
    if (v == T) break;
    for (int w : adj[v]) {
      if (parent[w] != -3) continue;
      parent[w] = v;
      queue.push(w);
    }
  }
  if (parent[T] == -3) return std::nullopt;
  std::vector<AuxArc> path;
  for (int v = T; v != S; v = parent[v])
    path.push_back({parent[v] == S ? -1 : parent[v], v == T ? -2 : v});
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace matroid::ref
