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
#include <span>
#include <stdexcept>
#include <vector>

#include "matroid/oracle.hpp"
#include "matroid/union_find.hpp"

namespace matroid {

/// Undirected multigraph. Edges are the matroid elements; parallel edges
/// and self loops are allowed. Capacities may be real valued; solvers that
/// need integers obtain them via integer_capacities().
struct Graph {
  struct Edge {
    int tail = 0;
    int head = 0;
    double capacity = 1.0;
    double cost = 0.0;
  };

  int num_vertices = 0;
  std::vector<Edge> edges;

  int num_edges() const { return static_cast<int>(edges.size()); }

  void add_edge(int u, int v, double capacity = 1.0, double cost = 0.0) {
    if (u < 0 || u >= num_vertices || v < 0 || v >= num_vertices)
      throw std::invalid_argument("graph edge endpoint out of range");
    edges.push_back({u, v, capacity, cost});
  }

  bool has_integral_capacities(double tol = 1e-9) const {
    for (const Edge& e : edges)
      if (std::abs(e.capacity - std::llround(e.capacity)) > tol) return false;
    return true;
  }

  CapacityVector integer_capacities() const {
    if (!has_integral_capacities())
      throw std::invalid_argument("graph has non-integral capacities");
    CapacityVector u(edges.size());
    for (size_t i = 0; i < edges.size(); ++i) u[i] = std::llround(edges[i].capacity);
    return u;
  }

  std::vector<double> real_capacities() const {
    std::vector<double> u(edges.size());
    for (size_t i = 0; i < edges.size(); ++i) u[i] = edges[i].capacity;
    return u;
  }

  std::vector<double> costs() const {
    std::vector<double> c(edges.size());
    for (size_t i = 0; i < edges.size(); ++i) c[i] = edges[i].cost;
    return c;
  }

  /// Replaces each edge of integer capacity c by c parallel unit edges.
  Graph expand_capacities() const {
    if (!has_integral_capacities())
      throw std::invalid_argument("cannot expand non-integral capacities");
    Graph g;
    g.num_vertices = num_vertices;
    for (const Edge& e : edges) {
      long long c = std::llround(e.capacity);
      for (long long i = 0; i < c; ++i) g.edges.push_back({e.tail, e.head, 1.0, e.cost});
    }
    return g;
  }
};

/// Rank of an edge subset in the graphic matroid: n_v minus the number of
/// connected components of (V, S).
inline int graphic_rank(const Graph& g, std::span<const ElementId> set) {
  UnionFind uf(g.num_vertices);
  int r = 0;
  for (ElementId id : set) {
    const Graph::Edge& e = g.edges[id];
    if (uf.unite(e.tail, e.head)) ++r;
  }
  return r;
}

inline int graphic_rank(const Graph& g) {
  std::vector<ElementId> all(g.edges.size());
  std::iota(all.begin(), all.end(), 0);
  return graphic_rank(g, all);
}

/// Vertex partition given by the connected components of (V, S); each inner
/// vector lists the vertices of one part.
inline std::vector<std::vector<int>> component_partition(const Graph& g,
                                                         std::span<const ElementId> set) {
  UnionFind uf(g.num_vertices);
  for (ElementId id : set) uf.unite(g.edges[id].tail, g.edges[id].head);
  std::vector<std::vector<int>> parts;
  std::vector<int> part_of(g.num_vertices, -1);
  for (int v = 0; v < g.num_vertices; ++v) {
    int root = uf.find(v);
    if (part_of[root] < 0) {
      part_of[root] = static_cast<int>(parts.size());
      parts.emplace_back();
    }
    parts[part_of[root]].push_back(v);
  }
  return parts;
}

inline Graph complete_graph(int n, double capacity = 1.0) {
  Graph g;
  g.num_vertices = n;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v, capacity);
  return g;
}

}  // namespace matroid
