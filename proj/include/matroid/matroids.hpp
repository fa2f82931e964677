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
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "matroid/graph.hpp"
#include "matroid/oracle.hpp"
#include "matroid/union_find.hpp"

namespace matroid {

/// U(n, r): a set is independent iff it has at most r elements.
class UniformMatroid final : public IndependenceOracle {
 public:
  UniformMatroid(int n, int r) : n_(n), r_(r) {
    if (n < 0 || r < 0 || r > n) throw std::invalid_argument("bad uniform matroid");
  }

  int num_elements() const override { return n_; }
  int matroid_rank() const { return r_; }

  bool is_independent(std::span<const ElementId> set) const override {
    return static_cast<int>(set.size()) <= r_;
  }

 private:
  int n_;
  int r_;
};

/// Elements are grouped in blocks; a set is independent iff it uses at most
/// cap(b) elements from each block b.
class PartitionMatroid final : public IndependenceOracle {
 public:
  PartitionMatroid(std::vector<int> block_of, std::vector<int> block_caps)
      : block_of_(std::move(block_of)), caps_(std::move(block_caps)) {
    for (int b : block_of_)
      if (b < 0 || b >= static_cast<int>(caps_.size()))
        throw std::invalid_argument("partition matroid: block id out of range");
    for (int c : caps_)
      if (c < 0) throw std::invalid_argument("partition matroid: negative cap");
  }

  int num_elements() const override { return static_cast<int>(block_of_.size()); }
  int num_blocks() const { return static_cast<int>(caps_.size()); }

  bool is_independent(std::span<const ElementId> set) const override {
    counts_.assign(caps_.size(), 0);
    for (ElementId e : set)
      if (++counts_[block_of_[e]] > caps_[block_of_[e]]) return false;
    return true;
  }

 private:
  std::vector<int> block_of_;
  std::vector<int> caps_;
  mutable std::vector<int> counts_;
};

// Forests of an undirected graph. Each query runs a fresh union-find pass
// over the candidate edges; the fast graphic solver bypasses this oracle
// entirely, this implementation exists to keep the generic solvers
// oracle-pure for equivalence testing.
class GraphicMatroid final : public IndependenceOracle {
 public:
  explicit GraphicMatroid(Graph graph) : graph_(std::move(graph)) {}

  int num_elements() const override { return graph_.num_edges(); }
  const Graph& graph() const { return graph_; }

  bool is_independent(std::span<const ElementId> set) const override {
    UnionFind uf(graph_.num_vertices);
    for (ElementId id : set) {
      const Graph::Edge& e = graph_.edges[id];
      if (!uf.unite(e.tail, e.head)) return false;
    }
    return true;
  }

 private:
  Graph graph_;
};

/// Matroid given by the full list of its bases, n <= 16. A set is
/// independent iff some base contains it. Intended for small fixtures and
/// exhaustive cross-checks.
class ExplicitMatroid final : public IndependenceOracle {
 public:
  ExplicitMatroid(int n, const std::vector<std::vector<ElementId>>& bases) : n_(n) {
    if (n < 0 || n > 16) throw std::invalid_argument("explicit matroid limited to n <= 16");
    if (bases.empty()) throw std::invalid_argument("explicit matroid needs at least one base");
    size_t r = bases.front().size();
    for (const auto& base : bases) {
      if (base.size() != r)
        throw std::invalid_argument("explicit matroid: bases of unequal size");
      std::uint32_t mask = 0;
      for (ElementId e : base) {
        if (e < 0 || e >= n) throw std::invalid_argument("explicit matroid: element out of range");
        if (mask & (1u << e)) throw std::invalid_argument("explicit matroid: repeated element");
        mask |= 1u << e;
      }
      base_masks_.push_back(mask);
    }
    rank_ = static_cast<int>(r);
  }

  int num_elements() const override { return n_; }
  int matroid_rank() const { return rank_; }
  const std::vector<std::uint32_t>& base_masks() const { return base_masks_; }

  bool is_independent(std::span<const ElementId> set) const override {
    std::uint32_t mask = 0;
    for (ElementId e : set) mask |= 1u << e;
    for (std::uint32_t base : base_masks_)
      if ((mask & ~base) == 0) return true;
    return false;
  }

 private:
  int n_;
  int rank_;
  std::vector<std::uint32_t> base_masks_;
};

/// View of an oracle restricted to a subset of the ground set, with ids
/// renumbered densely in [0, |keep|).
class RestrictedOracle final : public IndependenceOracle {
 public:
  RestrictedOracle(const IndependenceOracle& base, std::vector<ElementId> keep)
      : base_(&base), keep_(std::move(keep)) {}

  int num_elements() const override { return static_cast<int>(keep_.size()); }
  ElementId original_id(ElementId local) const { return keep_[local]; }

  bool is_independent(std::span<const ElementId> set) const override {
    buffer_.clear();
    for (ElementId e : set) buffer_.push_back(keep_[e]);
    return base_->is_independent(buffer_);
  }

 private:
  const IndependenceOracle* base_;
  std::vector<ElementId> keep_;
  mutable std::vector<ElementId> buffer_;
};

}  // namespace matroid
