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

// Seeded random instance families shared by the unit and acceptance suites.

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "matroid/graph.hpp"
#include "matroid/matroids.hpp"
#include "matroid/oracle.hpp"

namespace testgen {

using matroid::Capacity;
using matroid::CapacityVector;
using matroid::ElementId;
using matroid::Graph;
using matroid::IndependenceOracle;

struct Instance {
  std::unique_ptr<IndependenceOracle> oracle;
  CapacityVector u;
  int k = 1;
  // Set when the instance is graphic; empty otherwise.
  std::unique_ptr<Graph> graph;
};

inline CapacityVector random_capacities(std::mt19937_64& rng, int n, Capacity max_cap,
                                        bool allow_zero = true) {
  std::uniform_int_distribution<Capacity> dist(allow_zero ? 0 : 1, max_cap);
  CapacityVector u(n);
  for (auto& c : u) c = dist(rng);
  return u;
}

inline Graph random_graph(std::mt19937_64& rng, int max_nv, int max_m,
                          bool ensure_connected = false) {
  std::uniform_int_distribution<int> nv_dist(2, max_nv);
  Graph g;
  g.num_vertices = nv_dist(rng);
  std::uniform_int_distribution<int> m_dist(1, max_m);
  int m = m_dist(rng);
  std::uniform_int_distribution<int> v_dist(0, g.num_vertices - 1);
  if (ensure_connected) {
    for (int v = 1; v < g.num_vertices && g.num_edges() < m; ++v)
      g.add_edge(std::uniform_int_distribution<int>(0, v - 1)(rng), v);
  }
  while (g.num_edges() < m) {
    int a = v_dist(rng), b = v_dist(rng);
    if (a == b) continue;  // no self loops in the random family
    g.add_edge(a, b);
  }
  return g;
}

inline Instance random_graphic_instance(std::mt19937_64& rng, int max_nv = 6, int max_m = 12,
                                        Capacity max_cap = 3, int max_k = 4) {
  Instance inst;
  inst.graph = std::make_unique<Graph>(random_graph(rng, max_nv, max_m));
  inst.oracle = std::make_unique<matroid::GraphicMatroid>(*inst.graph);
  inst.u = random_capacities(rng, inst.graph->num_edges(), max_cap);
  inst.k = std::uniform_int_distribution<int>(1, max_k)(rng);
  return inst;
}

inline Instance random_uniform_instance(std::mt19937_64& rng, int max_n = 12,
                                        Capacity max_cap = 3, int max_k = 4) {
  Instance inst;
  int n = std::uniform_int_distribution<int>(1, max_n)(rng);
  int r = std::uniform_int_distribution<int>(0, n)(rng);
  inst.oracle = std::make_unique<matroid::UniformMatroid>(n, r);
  inst.u = random_capacities(rng, n, max_cap);
  inst.k = std::uniform_int_distribution<int>(1, max_k)(rng);
  return inst;
}

inline Instance random_partition_instance(std::mt19937_64& rng, int max_n = 12,
                                          Capacity max_cap = 3, int max_k = 4) {
  Instance inst;
  int n = std::uniform_int_distribution<int>(1, max_n)(rng);
  int blocks = std::uniform_int_distribution<int>(1, std::max(1, n / 2))(rng);
  std::vector<int> block_of(n);
  for (auto& b : block_of) b = std::uniform_int_distribution<int>(0, blocks - 1)(rng);
  std::vector<int> caps(blocks);
  for (auto& c : caps) c = std::uniform_int_distribution<int>(0, 3)(rng);
  inst.oracle = std::make_unique<matroid::PartitionMatroid>(block_of, caps);
  inst.u = random_capacities(rng, n, max_cap);
  inst.k = std::uniform_int_distribution<int>(1, max_k)(rng);
  return inst;
}

// Explicit matroids are generated by enumerating the bases of a small donor
// matroid, which guarantees a valid matroid and exercises the explicit
// representation.
inline std::vector<std::vector<ElementId>> enumerate_bases(const IndependenceOracle& oracle) {
  const int n = oracle.num_elements();
  std::vector<ElementId> all(n);
  std::iota(all.begin(), all.end(), 0);
  const int r = matroid::rank(oracle, all);
  std::vector<std::vector<ElementId>> bases;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != r) continue;
    std::vector<ElementId> set;
    for (int e = 0; e < n; ++e)
      if (mask & (1u << e)) set.push_back(e);
    if (oracle.is_independent(set)) bases.push_back(set);
  }
  return bases;
}

inline Instance random_explicit_instance(std::mt19937_64& rng, int max_n = 8,
                                         Capacity max_cap = 3, int max_k = 4) {
  Instance donor;
  switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
    case 0:
      donor = random_uniform_instance(rng, max_n, max_cap, max_k);
      break;
    case 1:
      donor = random_partition_instance(rng, max_n, max_cap, max_k);
      break;
    default:
      donor = random_graphic_instance(rng, 4, max_n, max_cap, max_k);
      break;
  }
  auto bases = enumerate_bases(*donor.oracle);
  Instance inst;
  int n = donor.oracle->num_elements();
  if (bases.empty() || bases.front().empty()) {
    // rank-0 donor; fall back to a small uniform matroid
    inst.oracle = std::make_unique<matroid::UniformMatroid>(std::max(1, n), 1);
    inst.u = random_capacities(rng, std::max(1, n), max_cap);
    inst.k = donor.k;
    return inst;
  }
  inst.oracle = std::make_unique<matroid::ExplicitMatroid>(n, bases);
  inst.u = std::move(donor.u);
  inst.k = donor.k;
  return inst;
}

/// The acceptance-mix: graphic, uniform, partition, explicit in rotation.
inline Instance random_instance(std::mt19937_64& rng, int index) {
  switch (index % 4) {
    case 0:
      return random_graphic_instance(rng);
    case 1:
      return random_uniform_instance(rng);
    case 2:
      return random_partition_instance(rng);
    default:
      return random_explicit_instance(rng);
  }
}

}  // namespace testgen
