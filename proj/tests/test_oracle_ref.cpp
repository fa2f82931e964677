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

#include "matroid/matroids.hpp"
#include "matroid/oracle_ref.hpp"
#include "support/gen.hpp"

using namespace matroid;
using ref::Rational;

TEST_CASE("dual enumeration on small fixtures") {
  UniformMatroid u32(3, 2);
  CapacityVector ones{1, 1, 1};
  CHECK(ref::dual_enum_union(u32, ones, 1) == 2);

  GraphicMatroid k4(complete_graph(4));
  CapacityVector u6(6, 1);
  CHECK(ref::dual_enum_union(k4, u6, 2) == 6);

  GraphicMatroid k3(GraphicMatroid(complete_graph(3)));
  CapacityVector u3(3, 1);
  CHECK(ref::dual_enum_union(k3, u3, 2) == 3);

  // huge k: S = empty dominates, the value is u(E)
  CHECK(ref::dual_enum_union(k3, u3, 100) == 3);

  // uniform matroid union in closed form: min(n, k*r)
  for (int k = 0; k <= 4; ++k) {
    UniformMatroid u52(5, 2);
    CapacityVector u5(5, 1);
    CHECK(ref::dual_enum_union(u52, u5, k) == std::min<long long>(5, 2LL * k));
  }
}

TEST_CASE("strength and covering constants for complete graphs") {
  GraphicMatroid k3(complete_graph(3));
  GraphicMatroid k4(complete_graph(4));
  GraphicMatroid k5(complete_graph(5));
  CapacityVector u3(3, 1), u6(6, 1), u10(10, 1);

  CHECK(ref::strength_enum(k3, u3) == Rational(3, 2));
  CHECK(ref::strength_enum(k4, u6) == Rational(2));
  CHECK(ref::strength_enum(k5, u10) == Rational(5, 2));

  CHECK(ref::covering_enum(k3, u3) == Rational(3, 2));
  CHECK(ref::covering_enum(k4, u6) == Rational(2));
  CHECK(ref::covering_enum(k5, u10) == Rational(5, 2));
}

TEST_CASE("partition strength agrees with subset strength on graphs") {
  std::mt19937_64 rng(314);
  for (int trial = 0; trial < 40; ++trial) {
    Graph g = testgen::random_graph(rng, 5, 9);
    GraphicMatroid oracle(g);
    CapacityVector u = testgen::random_capacities(rng, g.num_edges(), 3, false);
    if (graphic_rank(g) == 0) continue;
    CHECK(ref::strength_enum(oracle, u) == ref::partition_strength_enum(g, u));
  }
}

TEST_CASE("feasibility enums are consistent with the dual enum") {
  std::mt19937_64 rng(271828);
  for (int trial = 0; trial < 60; ++trial) {
    auto inst = testgen::random_instance(rng, trial);
    const auto& oracle = *inst.oracle;
    const int n = oracle.num_elements();
    if (n > 10) continue;
    std::vector<ElementId> all(n);
    std::iota(all.begin(), all.end(), 0);
    const int r = rank(oracle, all);
    long long opt = ref::dual_enum_union(oracle, inst.u, inst.k);
    // packing feasible iff the union value hits k*r
    CHECK(ref::pack_feasible_enum(oracle, inst.u, inst.k) ==
          (opt == static_cast<long long>(inst.k) * r));
    // covering feasible iff the union value hits u(E)
    CHECK(ref::cover_feasible_enum(oracle, inst.u, inst.k) ==
          (opt == total_capacity(inst.u)));
  }
}

TEST_CASE("reinforcement enumeration on the triangle") {
  GraphicMatroid k3(complete_graph(3));
  CapacityVector u(3, 1);
  std::vector<double> costs(3, 1.0);
  CHECK(ref::reinforce_enum(k3, u, costs, 2, 2) == Catch::Approx(1.0));
  // richer costs: cheapest single edge wins
  std::vector<double> costs2{5.0, 2.0, 3.0};
  CHECK(ref::reinforce_enum(k3, u, costs2, 2, 2) == Catch::Approx(2.0));
}

TEST_CASE("budget guard") {
  UniformMatroid big(21, 3);
  CapacityVector u(21, 1);
  CHECK_THROWS_AS(ref::dual_enum_union(big, u, 2), std::runtime_error);
}
