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

#include <catch2/catch_amalgamated.hpp>
#include <random>
#include <set>

#include "matroid/matroids.hpp"
#include "matroid/oracle.hpp"
#include "support/gen.hpp"

using namespace matroid;

namespace {

Graph triangle() {
  Graph g;
  g.num_vertices = 3;
  g.add_edge(0, 1);  // ab = 0
  g.add_edge(1, 2);  // bc = 1
  g.add_edge(2, 0);  // ca = 2
  return g;
}

// Rank by enumerating every subset; the yardstick for oracle-based rank.
int enum_rank(const IndependenceOracle& oracle, const std::vector<ElementId>& set) {
  int best = 0;
  const int m = static_cast<int>(set.size());
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::vector<ElementId> subset;
    for (int i = 0; i < m; ++i)
      if (mask & (1u << i)) subset.push_back(set[i]);
    if (oracle.is_independent(subset)) best = std::max(best, static_cast<int>(subset.size()));
  }
  return best;
}

}  // namespace

TEST_CASE("rank by greedy scan") {
  UniformMatroid u53(5, 3);
  std::vector<ElementId> all{0, 1, 2, 3, 4};
  CHECK(rank(u53, all) == 3);

  GraphicMatroid k3(triangle());
  std::vector<ElementId> edges{0, 1, 2};
  CHECK(rank(k3, edges) == 2);
}

TEST_CASE("rank matches subset enumeration on explicit matroids") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 5; ++trial) {
    auto inst = testgen::random_explicit_instance(rng, 8);
    const auto& oracle = *inst.oracle;
    const int n = oracle.num_elements();
    std::uniform_int_distribution<int> coin(0, 1);
    for (int rep = 0; rep < 100; ++rep) {
      std::vector<ElementId> set;
      for (int e = 0; e < n; ++e)
        if (coin(rng)) set.push_back(e);
      CHECK(rank(oracle, set) == enum_rank(oracle, set));
    }
  }
}

TEST_CASE("spans") {
  UniformMatroid u32(3, 2);
  std::vector<ElementId> ab{0, 1};
  CHECK(spans(u32, ab, 2));

  GraphicMatroid k3(triangle());
  std::vector<ElementId> just_ab{0};
  CHECK_FALSE(spans(k3, just_ab, 2));
  std::vector<ElementId> ab_bc{0, 1};
  CHECK(spans(k3, ab_bc, 2));
  CHECK(spans(k3, ab_bc, 0));  // membership, no query needed
}

TEST_CASE("greedy base") {
  UniformMatroid u42(4, 2);
  CHECK(greedy_base(u42) == std::vector<ElementId>{0, 1});

  GraphicMatroid k3(triangle());
  std::vector<ElementId> order{0, 1, 2};
  CHECK(greedy_base(k3, order) == std::vector<ElementId>{0, 1});
}

TEST_CASE("greedy base in cost order is a minimum spanning tree") {
  Graph k4 = complete_graph(4);
  GraphicMatroid oracle(k4);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> cost_dist(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> costs(k4.num_edges());
    for (auto& c : costs) c = cost_dist(rng);
    std::vector<ElementId> order(k4.num_edges());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](ElementId a, ElementId b) { return costs[a] < costs[b]; });
    auto base = greedy_base(oracle, order);
    double got = 0;
    for (ElementId e : base) got += costs[e];
    // exhaustive minimum over all 16 spanning trees of K4
    double best = 1e18;
    int trees = 0;
    for (std::uint32_t mask = 0; mask < (1u << 6); ++mask) {
      if (__builtin_popcount(mask) != 3) continue;
      std::vector<ElementId> set;
      for (int e = 0; e < 6; ++e)
        if (mask & (1u << e)) set.push_back(e);
      if (!oracle.is_independent(set)) continue;
      ++trees;
      double total = 0;
      for (ElementId e : set) total += costs[e];
      best = std::min(best, total);
    }
    CHECK(trees == 16);
    CHECK(got == Catch::Approx(best));
  }
}

TEST_CASE("circuit_element") {
  UniformMatroid u32(3, 2);
  std::vector<ElementId> p{0, 1};
  std::vector<ElementId> fixed;
  CHECK(circuit_element(u32, p, fixed, 2) == 1);

  GraphicMatroid k3(triangle());
  std::vector<ElementId> path{0, 1};  // ab, bc
  CHECK(circuit_element(k3, path, fixed, 2) == 1);

  // fixed already spanning violates the precondition
  std::vector<ElementId> spanning{0, 1};
  std::vector<ElementId> empty;
  CHECK_THROWS_AS(circuit_element(u32, empty, spanning, 2), std::invalid_argument);
  // set that does not span e at all
  std::vector<ElementId> lone{0};
  UniformMatroid u33(3, 3);
  CHECK_THROWS_AS(circuit_element(u33, lone, empty, 2), std::runtime_error);
}

TEST_CASE("circuit_element exchange keeps independence") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    auto inst = testgen::random_explicit_instance(rng, 8);
    const auto& oracle = *inst.oracle;
    auto base = greedy_base(oracle);
    if (base.empty()) continue;
    for (ElementId e = 0; e < oracle.num_elements(); ++e) {
      if (std::find(base.begin(), base.end(), e) != base.end()) continue;
      std::vector<ElementId> fixed;
      if (!spans(oracle, base, e)) continue;
      if (spans(oracle, fixed, e)) continue;  // loop: empty set already spans it
      ElementId d = circuit_element(oracle, base, fixed, e);
      std::vector<ElementId> swapped;
      for (ElementId f : base)
        if (f != d) swapped.push_back(f);
      swapped.push_back(e);
      CHECK(oracle.is_independent(swapped));
    }
  }
}

TEST_CASE("explicit matroids satisfy the matroid axioms") {
  std::mt19937_64 rng(5150);
  for (int trial = 0; trial < 8; ++trial) {
    auto inst = testgen::random_explicit_instance(rng, 7);
    const auto& oracle = *inst.oracle;
    const int n = oracle.num_elements();
    std::vector<char> independent(1u << n);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      std::vector<ElementId> set;
      for (int e = 0; e < n; ++e)
        if (mask & (1u << e)) set.push_back(e);
      independent[mask] = oracle.is_independent(set);
    }
    REQUIRE(independent[0]);  // empty set
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      if (!independent[mask]) continue;
      // downward closure
      for (int e = 0; e < n; ++e)
        if (mask & (1u << e)) CHECK(independent[mask & ~(1u << e)]);
      // exchange axiom against every smaller independent set
      for (std::uint32_t other = 0; other < (1u << n); ++other) {
        if (!independent[other]) continue;
        if (__builtin_popcount(other) >= __builtin_popcount(mask)) continue;
        bool extendable = false;
        for (int e = 0; e < n && !extendable; ++e)
          if ((mask & (1u << e)) && !(other & (1u << e)))
            extendable = independent[other | (1u << e)];
        CHECK(extendable);
      }
    }
  }
}

TEST_CASE("query counter sees every oracle call") {
  UniformMatroid u53(5, 3);
  QueryCounter counter;
  CountedOracle counted(u53, counter);
  std::vector<ElementId> all{0, 1, 2, 3, 4};
  rank(counted, all);
  CHECK(counter.total() == 5);  // one query per element scanned
  counter.set_phase("spans");
  std::vector<ElementId> ab{0, 1};
  spans(counted, ab, 2);
  CHECK(counter.in_phase("spans") == 1);
  spans(counted, ab, 0);  // member: no query
  CHECK(counter.in_phase("spans") == 1);
  CHECK(counter.total() == 6);
}

TEST_CASE("partition matroid counts per-block caps") {
  PartitionMatroid pm({0, 0, 1, 1, 1}, {1, 2});
  std::vector<ElementId> ok{0, 2, 3};
  CHECK(pm.is_independent(ok));
  std::vector<ElementId> bad{0, 1};
  CHECK_FALSE(pm.is_independent(bad));
  std::vector<ElementId> bad2{2, 3, 4};
  CHECK_FALSE(pm.is_independent(bad2));
}

TEST_CASE("explicit matroid rejects malformed bases") {
  CHECK_THROWS_AS(ExplicitMatroid(17, {{0}}), std::invalid_argument);
  CHECK_THROWS_AS(ExplicitMatroid(4, {{0, 1}, {2}}), std::invalid_argument);
  CHECK_THROWS_AS(ExplicitMatroid(4, {}), std::invalid_argument);
  CHECK_THROWS_AS(ExplicitMatroid(4, {{0, 4}}), std::invalid_argument);
}
