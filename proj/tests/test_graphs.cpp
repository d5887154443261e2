// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "pbdfs/graphs.hpp"

using namespace pbdfs;

TEST_CASE("n=2 with affinity 4 clamps the edge probability to 1") {
  UGraph g = gen_graph(2, 4, 123);
  REQUIRE(g.edges.size() == 1);
  CHECK(g.edges[0] == std::pair<int, int>{0, 1});
}

TEST_CASE("gen_graph is deterministic per seed") {
  CHECK(gen_graph(60, 4, 42).edges == gen_graph(60, 4, 42).edges);
  CHECK(gen_graph(60, 4, 42).edges != gen_graph(60, 4, 43).edges);
}

TEST_CASE("gen_graph rejects n < 2") {
  CHECK_THROWS_AS(gen_graph(1, 4, 0), std::invalid_argument);
}

TEST_CASE("edge count matches binomial statistics") {
  const int n = 1000, affinity = 4, trials = 30;
  const double p = affinity / static_cast<double>(n - 1);
  const double pairs = n * (n - 1) / 2.0;
  const double expected = pairs * p;  // = n * affinity / 2
  const double sigma = std::sqrt(pairs * p * (1 - p));
  double total = 0;
  for (int s = 0; s < trials; ++s)
    total += static_cast<double>(gen_graph(n, affinity, 1000 + s).edges.size());
  const double mean = total / trials;
  CHECK(std::abs(mean - expected) < 3.0 * sigma);
}

TEST_CASE("MISP formulation") {
  UGraph triangle{3, {{0, 1}, {0, 2}, {1, 2}}};
  MipInstance inst = formulate_misp(triangle);
  CHECK(inst.nrows() == 3);
  CHECK(inst.sense == Sense::maximize);
  CHECK(oracle::brute_force(inst).objective == 1.0);

  UGraph p3{3, {{0, 1}, {1, 2}}};
  CHECK(oracle::brute_force(formulate_misp(p3)).objective == 2.0);

  UGraph edgeless{3, {}};
  MipInstance e = formulate_misp(edgeless);
  CHECK(e.nrows() == 0);
  CHECK(oracle::brute_force(e).objective == 3.0);
}

TEST_CASE("DSP formulation") {
  UGraph star{4, {{0, 1}, {0, 2}, {0, 3}}};
  MipInstance inst = formulate_dsp(star);
  REQUIRE(inst.nrows() == 4);
  CHECK(inst.rows[0].coefs.size() == 4);  // center row: itself + 3 neighbors
  CHECK(oracle::brute_force(inst).objective == 1.0);

  UGraph edgeless{3, {}};
  CHECK(oracle::brute_force(formulate_dsp(edgeless)).objective == 3.0);

  UGraph edge{2, {{0, 1}}};
  CHECK(oracle::brute_force(formulate_dsp(edge)).objective == 1.0);
}

TEST_CASE("VCP formulation") {
  UGraph triangle{3, {{0, 1}, {0, 2}, {1, 2}}};
  CHECK(oracle::brute_force(formulate_vcp(triangle)).objective == 2.0);
  UGraph edge{2, {{0, 1}}};
  CHECK(oracle::brute_force(formulate_vcp(edge)).objective == 1.0);
  UGraph edgeless{5, {}};
  CHECK(oracle::brute_force(formulate_vcp(edgeless)).objective == 0.0);
}

TEST_CASE("graph formulations use unit coefficients and unit rhs") {
  UGraph g = gen_graph(20, 4, 9);
  for (const MipInstance& inst :
       {formulate_misp(g), formulate_dsp(g), formulate_vcp(g)}) {
    for (const auto& row : inst.rows) {
      CHECK(row.rhs == 1.0);
      for (const auto& [col, val] : row.coefs) CHECK(val == 1.0);
    }
  }
  for (const auto& row : formulate_misp(g).rows) CHECK(row.rel == Relation::le);
  for (const auto& row : formulate_dsp(g).rows) CHECK(row.rel == Relation::ge);
  for (const auto& row : formulate_vcp(g).rows) CHECK(row.rel == Relation::ge);
}

TEST_CASE("CAP with disjoint and overlapping bundles") {
  std::vector<CapBid> disjoint = {{{0, 1}, 3.0}, {{2, 3}, 4.0}};
  CHECK(oracle::brute_force(formulate_cap(disjoint, 4)).objective == 7.0);

  std::vector<CapBid> overlapping = {{{0, 1}, 3.0}, {{1, 2}, 4.0}};
  CHECK(oracle::brute_force(formulate_cap(overlapping, 3)).objective == 4.0);
}

TEST_CASE("gen_cap determinism and bundle sanity") {
  MipInstance a = gen_cap(20, 50, 77);
  MipInstance b = gen_cap(20, 50, 77);
  CHECK(structurally_equal(a, b));

  auto bids = gen_cap_bids(20, 50, 77);
  for (const auto& bid : bids) {
    CHECK_FALSE(bid.bundle.empty());
    CHECK(bid.price > 0.0);
    for (int item : bid.bundle) {
      CHECK(item >= 0);
      CHECK(item < 20);
    }
  }
}
