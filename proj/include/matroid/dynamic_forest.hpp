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

#include <cassert>
#include <climits>
#include <memory>
#include <queue>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

namespace matroid {

/// Forest of vertices with keyed edges. path_min reports the minimum-key
/// edge on the unique tree path between two connected vertices.
class DynamicForest {
 public:
  struct PathEdge {
    int edge_id = -1;
    int key = INT_MAX;
  };

  virtual ~DynamicForest() = default;
  virtual void link(int u, int v, int edge_id, int key) = 0;
  virtual void cut(int edge_id) = 0;
  virtual bool connected(int u, int v) = 0;
  virtual PathEdge path_min(int u, int v) = 0;
};

/// Splay-based link-cut trees with edges represented as auxiliary nodes
/// carrying their key; vertex nodes carry an infinite key so path_min sees
/// edges only.
class LinkCutForest final : public DynamicForest {
 public:
  explicit LinkCutForest(int num_vertices) {
    nodes_.resize(num_vertices + 1);  // index 0 is the null sentinel
    for (int i = 0; i <= num_vertices; ++i) {
      nodes_[i].key = INT_MAX;
      nodes_[i].min_node = i;
    }
    num_vertices_ = num_vertices;
  }

  void link(int u, int v, int edge_id, int key) override {
    int m = allocate_node(edge_id, key);
    attach(m, vertex_node(u));
    attach(m, vertex_node(v));
  }

  void cut(int edge_id) override {
    auto it = edge_node_.find(edge_id);
    if (it == edge_node_.end()) throw std::invalid_argument("cut: unknown edge");
    int m = it->second;
    int a = edge_u_[m], b = edge_v_[m];
    detach(m, vertex_node(a));
    detach(m, vertex_node(b));
    free_node(m);
    edge_node_.erase(edge_id);
  }

  bool connected(int u, int v) override {
    if (u == v) return true;
    return find_root(vertex_node(u)) == find_root(vertex_node(v));
  }

  PathEdge path_min(int u, int v) override {
    int x = vertex_node(u), y = vertex_node(v);
    if (x == y) return {};
    if (find_root(x) != find_root(y)) return {};
    make_root(x);
    access(y);  // leaves y splayed; its minimum covers the whole x..y path
    int m = nodes_[y].min_node;
    if (nodes_[m].key == INT_MAX) return {};
    return {node_edge_.at(m), nodes_[m].key};
  }

 private:
  struct Node {
    int parent = 0;
    int child[2] = {0, 0};
    bool flip = false;
    int key = INT_MAX;
    int min_node = 0;  // node of minimum key within the splay subtree
  };

  int vertex_node(int v) const { return v + 1; }

  int allocate_node(int edge_id, int key) {
    int m;
    if (!free_.empty()) {
      m = free_.back();
      free_.pop_back();
      nodes_[m] = Node();
    } else {
      m = static_cast<int>(nodes_.size());
      nodes_.emplace_back();
      edge_u_.resize(nodes_.size(), -1);
      edge_v_.resize(nodes_.size(), -1);
    }
    nodes_[m].key = key;
    nodes_[m].min_node = m;
    edge_u_[m] = -1;
    edge_v_[m] = -1;
    edge_node_[edge_id] = m;
    node_edge_[m] = edge_id;
    return m;
  }

  void free_node(int m) {
    node_edge_.erase(m);
    free_.push_back(m);
  }

  // Records endpoints as the edge node is attached; `attach(m, x)` links the
  // (root) node m under x.
  void attach(int m, int x) {
    make_root(m);
    nodes_[m].parent = x;
    if (edge_u_[m] < 0)
      edge_u_[m] = x - 1;
    else
      edge_v_[m] = x - 1;
  }

  // Removes the tree edge between adjacent represented nodes x and y.
  void detach(int x, int y) {
    make_root(x);
    access(y);
    splay(y);
    // x must now be y's left child, alone on the path
    assert(nodes_[y].child[0] == x && nodes_[x].child[0] == 0 && nodes_[x].child[1] == 0);
    nodes_[y].child[0] = 0;
    nodes_[x].parent = 0;
    pull(y);
    if (edge_u_[x] == y - 1)
      edge_u_[x] = -1;
    else if (edge_v_[x] == y - 1)
      edge_v_[x] = -1;
  }

  bool is_splay_root(int x) const {
    int p = nodes_[x].parent;
    return p == 0 || (nodes_[p].child[0] != x && nodes_[p].child[1] != x);
  }

  void push(int x) {
    if (!nodes_[x].flip) return;
    std::swap(nodes_[x].child[0], nodes_[x].child[1]);
    for (int c : nodes_[x].child)
      if (c) nodes_[c].flip = !nodes_[c].flip;
    nodes_[x].flip = false;
  }

  void pull(int x) {
    int best = x;
    for (int c : nodes_[x].child) {
      if (!c) continue;
      int cm = nodes_[c].min_node;
      if (nodes_[cm].key < nodes_[best].key) best = cm;
    }
    nodes_[x].min_node = best;
  }

  void rotate(int x) {
    int p = nodes_[x].parent;
    int g = nodes_[p].parent;
    int side = nodes_[p].child[1] == x;
    int carry = nodes_[x].child[!side];
    if (!is_splay_root(p)) nodes_[g].child[nodes_[g].child[1] == p] = x;
    nodes_[x].parent = g;
    nodes_[p].child[side] = carry;
    if (carry) nodes_[carry].parent = p;
    nodes_[x].child[!side] = p;
    nodes_[p].parent = x;
    pull(p);
    pull(x);
  }

  void splay(int x) {
    // push pending flips from the splay root down to x
    stack_.clear();
    for (int y = x; !is_splay_root(y); y = nodes_[y].parent) stack_.push_back(nodes_[y].parent);
    for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) push(*it);
    push(x);
    while (!is_splay_root(x)) {
      int p = nodes_[x].parent;
      if (!is_splay_root(p)) {
        int g = nodes_[p].parent;
        if ((nodes_[g].child[1] == p) == (nodes_[p].child[1] == x))
          rotate(p);
        else
          rotate(x);
      }
      rotate(x);
    }
  }

  int access(int x) {
    int last = 0;
    for (int y = x; y; y = nodes_[y].parent) {
      splay(y);
      nodes_[y].child[1] = last;
      pull(y);
      last = y;
    }
    splay(x);
    return last;
  }

  void make_root(int x) {
    access(x);
    nodes_[x].flip = !nodes_[x].flip;
    push(x);
  }

  int find_root(int x) {
    access(x);
    while (true) {
      push(x);
      if (!nodes_[x].child[0]) break;
      x = nodes_[x].child[0];
    }
    splay(x);
    return x;
  }

  int num_vertices_ = 0;
  std::vector<Node> nodes_;
  std::vector<int> free_;
  std::vector<int> edge_u_, edge_v_;  // endpoints (vertex ids) per edge node
  std::unordered_map<int, int> edge_node_;
  std::unordered_map<int, int> node_edge_;
  std::vector<int> stack_;
};

/// Adjacency-list forest with O(n) path walks; the reference structure for
/// shadow checks and a fallback for tiny instances.
class WalkForest final : public DynamicForest {
 public:
  explicit WalkForest(int num_vertices) : adj_(num_vertices) {}

  void link(int u, int v, int edge_id, int key) override {
    edges_[edge_id] = {u, v, key};
    adj_[u].push_back(edge_id);
    adj_[v].push_back(edge_id);
  }

  void cut(int edge_id) override {
    auto it = edges_.find(edge_id);
    if (it == edges_.end()) throw std::invalid_argument("cut: unknown edge");
    auto remove_from = [&](int v) {
      auto& list = adj_[v];
      list.erase(std::find(list.begin(), list.end(), edge_id));
    };
    remove_from(it->second.u);
    remove_from(it->second.v);
    edges_.erase(it);
  }

  bool connected(int u, int v) override { return !walk(u, v).empty() || u == v; }

  PathEdge path_min(int u, int v) override {
    PathEdge best;
    for (int id : walk(u, v))
      if (edges_[id].key < best.key) best = {id, edges_[id].key};
    return best;
  }

 private:
  struct Edge {
    int u, v, key;
  };

  // Edge ids along the tree path from u to v; empty when disconnected.
  std::vector<int> walk(int u, int v) {
    if (u == v) return {};
    std::vector<int> parent_edge(adj_.size(), -1);
    std::vector<char> seen(adj_.size(), 0);
    std::queue<int> queue;
    seen[u] = 1;
    queue.push(u);
    while (!queue.empty() && !seen[v]) {
      int w = queue.front();
      queue.pop();
      for (int id : adj_[w]) {
        const Edge& e = edges_[id];
        int other = e.u == w ? e.v : e.u;
        if (seen[other]) continue;
        seen[other] = 1;
        parent_edge[other] = id;
        queue.push(other);
      }
    }
    if (!seen[v]) return {};
    std::vector<int> path;
    for (int w = v; w != u;) {
      int id = parent_edge[w];
      path.push_back(id);
      const Edge& e = edges_[id];
      w = e.u == w ? e.v : e.u;
    }
    return path;
  }

  std::vector<std::vector<int>> adj_;
  std::unordered_map<int, Edge> edges_;
};

}  // namespace matroid
