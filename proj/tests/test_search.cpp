// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "pbdfs/graphs.hpp"
#include "pbdfs/search.hpp"

using namespace pbdfs;

namespace {

MipInstance random_instance(std::mt19937_64& rng, int which, int max_n = 12) {
  const int n = 4 + static_cast<int>(rng() % (max_n - 3));
  UGraph g = gen_graph(n, 3, rng());
  switch (which % 4) {
    case 0: return formulate_misp(g);
    case 1: return formulate_dsp(g);
    case 2: return formulate_vcp(g);
    default: return gen_cap(4 + static_cast<int>(rng() % 4), n, rng());
  }
}

ProbabilityVector oracle_probs(const Assignment& a) {
  ProbabilityVector p(a.size());
  for (int i = 0; i < a.size(); ++i) p[i] = a.values[i] ? 0.95 : 0.05;
  return p;
}

}  // namespace

TEST_CASE("score variants") {
  // dyadic probabilities keep the arithmetic exact
  ProbabilityVector p = {0.875, 0.25, 0.5};
  CHECK(score(p, ScoreVariant::max_p_1mp) == std::vector<double>{0.875, 0.75, 0.5});
  CHECK(score(p, ScoreVariant::p) == p);
  CHECK(score(p, ScoreVariant::one_minus_p) == std::vector<double>{0.125, 0.75, 0.5});
  // the confidence score is symmetric in p vs 1-p
  ProbabilityVector q = {0.125, 0.75, 0.5};
  CHECK(score(p, ScoreVariant::max_p_1mp) == score(q, ScoreVariant::max_p_1mp));
}

TEST_CASE("select_branch_var") {
  std::vector<double> z = {0.9, 0.8, 0.5};
  CHECK(select_branch_var(z, {0, 1, 2}) == 0);
  CHECK(select_branch_var(z, {1, 2}) == 1);
  CHECK(select_branch_var({0.7, 0.7}, {0, 1}) == 0);  // tie to lowest index
  CHECK_THROWS_AS(select_branch_var(z, {}), std::invalid_argument);
}

TEST_CASE("select_branch_var invariant under increasing transforms") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    const int n = 3 + static_cast<int>(rng() % 8);
    std::vector<double> z(n);
    for (double& v : z) v = (rng() % 100) / 100.0;
    std::vector<int> cand;
    for (int i = 0; i < n; ++i)
      if (rng() % 2) cand.push_back(i);
    if (cand.empty()) cand.push_back(0);
    std::vector<double> tz(n);
    for (int i = 0; i < n; ++i) tz[i] = std::exp(3.0 * z[i]) + 1.0;
    CHECK(select_branch_var(z, cand) == select_branch_var(tz, cand));
  }
}

TEST_CASE("preferred_child conventions") {
  CHECK(preferred_child(0.2, ScoreVariant::max_p_1mp) == 0);
  CHECK(preferred_child(0.5, ScoreVariant::max_p_1mp) == 1);  // 0.5 rounds to 1
  CHECK(preferred_child(0.9, ScoreVariant::max_p_1mp) == 1);
  CHECK(preferred_child(0.2, ScoreVariant::p) == 1);
  CHECK(preferred_child(0.9, ScoreVariant::one_minus_p) == 0);
}

TEST_CASE("solve_exact matches brute force on small instances") {
  CHECK(solve_exact(formulate_misp(UGraph{3, {{0, 1}, {1, 2}}})).objective == 2.0);
  CHECK(solve_exact(formulate_dsp(UGraph{4, {{0, 1}, {0, 2}, {0, 3}}})).objective == 1.0);
  std::mt19937_64 rng(19);
  for (int t = 0; t < 40; ++t) {
    MipInstance inst = random_instance(rng, t);
    auto brute = oracle::brute_force(inst);
    ExactResult exact = solve_exact(inst);
    REQUIRE(brute.feasible);  // all four families always have a feasible point
    REQUIRE(exact.solution.has_value());
    CHECK(exact.proved_optimal);
    CHECK_THAT(exact.objective, Catch::Matchers::WithinAbs(brute.objective, 1e-9));
    CHECK(check_feasible(inst, *exact.solution).first);
  }
}

TEST_CASE("solve_exact under a node limit flags non-proven") {
  MipInstance inst = formulate_misp(gen_graph(20, 4, 2));
  ExactResult res = solve_exact(inst, Termination::node_limit(1));
  CHECK_FALSE(res.proved_optimal);
}

TEST_CASE("oracle probabilities dive straight to the optimum") {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 30; ++t) {
    MipInstance inst = random_instance(rng, t);
    auto brute = oracle::brute_force(inst);
    REQUIRE(brute.feasible);
    SearchResult res = pb_dfs(inst, oracle_probs(brute.solution),
                              ScoreVariant::max_p_1mp, Termination::first_feasible());
    REQUIRE(res.incumbent.has_value());
    CHECK_THAT(res.incumbent->objective, Catch::Matchers::WithinAbs(brute.objective, 1e-9));
    CHECK(res.stats.backtracks == 0);
    CHECK(res.stats.nodes <= inst.nvars + 1);
  }
}

TEST_CASE("pb_dfs with uninformative probabilities finds a feasible incumbent") {
  UGraph edge{2, {{0, 1}}};
  MipInstance misp = formulate_misp(edge);
  SearchResult res = pb_dfs(misp, {0.5, 0.5}, ScoreVariant::max_p_1mp,
                            Termination::first_feasible());
  REQUIRE(res.incumbent.has_value());
  CHECK((res.incumbent->objective == 0.0 || res.incumbent->objective == 1.0));
  CHECK_FALSE(res.trajectory.events.empty());
  CHECK(check_feasible(misp, res.incumbent->solution).first);
}

TEST_CASE("zero time budget returns an empty result") {
  MipInstance inst = formulate_misp(gen_graph(10, 3, 1));
  SearchResult res = pb_dfs(inst, ProbabilityVector(10, 0.5),
                            ScoreVariant::max_p_1mp, Termination::time_limit(0));
  CHECK_FALSE(res.incumbent.has_value());
  CHECK(res.trajectory.events.empty());
  CHECK(res.stats.nodes == 0);
}

TEST_CASE("pb_dfs with no termination proves optimality") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 8; ++t) {
    MipInstance inst = random_instance(rng, t, 10);
    auto brute = oracle::brute_force(inst);
    SearchResult res = pb_dfs(inst, ProbabilityVector(inst.nvars, 0.5),
                              ScoreVariant::max_p_1mp, Termination::none());
    REQUIRE(res.incumbent.has_value());
    CHECK(res.stats.proved_optimal);
    CHECK_THAT(res.incumbent->objective, Catch::Matchers::WithinAbs(brute.objective, 1e-9));
  }
}

TEST_CASE("all score variants reach a feasible first incumbent") {
  std::mt19937_64 rng(37);
  for (int t = 0; t < 12; ++t) {
    MipInstance inst = random_instance(rng, t);
    ProbabilityVector p(inst.nvars);
    for (double& v : p) v = detail::uniform01(rng);
    for (ScoreVariant variant : {ScoreVariant::max_p_1mp, ScoreVariant::p,
                                 ScoreVariant::one_minus_p}) {
      SearchResult res = pb_dfs(inst, p, variant, Termination::first_feasible());
      REQUIRE(res.incumbent.has_value());
      CHECK(check_feasible(inst, res.incumbent->solution).first);
    }
  }
}

TEST_CASE("trajectories improve strictly in the instance sense") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 20; ++t) {
    MipInstance inst = random_instance(rng, t);
    ProbabilityVector p(inst.nvars);
    for (double& v : p) v = detail::uniform01(rng);
    SearchResult res = pb_dfs(inst, p, ScoreVariant::max_p_1mp, Termination::none());
    double prev_t = 0.0;
    bool have_prev = false;
    double prev_obj = 0.0;
    for (const auto& ev : res.trajectory.events) {
      CHECK(ev.time_s >= prev_t);
      prev_t = ev.time_s;
      if (ev.event != "incumbent") continue;
      if (have_prev) {
        if (inst.sense == Sense::minimize)
          CHECK(ev.objective < prev_obj);
        else
          CHECK(ev.objective > prev_obj);
      }
      prev_obj = ev.objective;
      have_prev = true;
    }
  }
}

TEST_CASE("baseline_dfs finds a feasible incumbent and honors node limits") {
  MipInstance inst = formulate_vcp(gen_graph(12, 3, 7));
  SearchResult res = baseline_dfs(inst, Termination::first_feasible());
  REQUIRE(res.incumbent.has_value());
  CHECK(check_feasible(inst, res.incumbent->solution).first);

  // root-integral instance: incumbent at the root under node_limit(1)
  UGraph edgeless{3, {}};
  MipInstance easy = formulate_misp(edgeless);
  SearchResult root = baseline_dfs(easy, Termination::node_limit(1));
  REQUIRE(root.incumbent.has_value());
  CHECK(root.incumbent->objective == 3.0);
  CHECK(root.stats.nodes == 1);
}

TEST_CASE("lp_rounding") {
  UGraph triangle{3, {{0, 1}, {0, 2}, {1, 2}}};
  // VCP triangle: unique LP optimum (0.5,0.5,0.5) rounds up to (1,1,1),
  // feasible with objective 3
  auto vcp_inc = lp_rounding(formulate_vcp(triangle));
  REQUIRE(vcp_inc.has_value());
  CHECK(vcp_inc->objective == 3.0);
  // MISP triangle: LP (0.5,0.5,0.5) rounds to (1,1,1), which violates every
  // edge row, so rounding yields nothing
  auto misp_inc = lp_rounding(formulate_misp(triangle));
  if (misp_inc) CHECK(check_feasible(formulate_misp(triangle), misp_inc->solution).first);

  // integral root: incumbent equals the LP solution
  UGraph edgeless{4, {}};
  auto easy = lp_rounding(formulate_misp(edgeless));
  REQUIRE(easy.has_value());
  CHECK(easy->objective == 4.0);
}

TEST_CASE("trajectory csv format") {
  Trajectory traj;
  traj.events.push_back({0.5, 3.0, "incumbent"});
  traj.events.push_back({1.0, 3.0, "end"});
  std::ostringstream out;
  write_trajectory_csv(traj, out);
  CHECK(out.str() == "time_s,objective,event\n0.5,3,incumbent\n1,3,end\n");
}

TEST_CASE("stats json fields") {
  SearchStats s;
  s.nodes = 5;
  s.lp_solves = 6;
  s.backtracks = 1;
  s.best_objective = 2.0;
  s.best_time_s = 0.25;
  s.proved_optimal = true;
  auto j = stats_to_json(s);
  CHECK(j.at("nodes") == 5);
  CHECK(j.at("lp_solves") == 6);
  CHECK(j.at("backtracks") == 1);
  CHECK(j.at("best_objective") == 2.0);
  CHECK(j.at("proved_optimal") == true);
}
