// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "pbdfs/mip.hpp"
#include "pbdfs/model.hpp"
#include "pbdfs/simplex.hpp"

namespace pbdfs {

enum class ScoreVariant { max_p_1mp, p, one_minus_p };

struct Termination {
  enum class Kind { first_feasible, time_limit, node_limit, none };
  Kind kind = Kind::none;
  double seconds = 0.0;
  long nodes = 0;

  static Termination first_feasible() { return {Kind::first_feasible, 0, 0}; }
  static Termination time_limit(double s) { return {Kind::time_limit, s, 0}; }
  static Termination node_limit(long n) { return {Kind::node_limit, 0, n}; }
  static Termination none() { return {Kind::none, 0, 0}; }
};

struct Incumbent {
  Assignment solution;
  double objective = 0.0;  // instance sense
  double found_at = 0.0;   // seconds since search start
};

struct TrajectoryEvent {
  double time_s = 0.0;
  double objective = 0.0;
  std::string event;  // "incumbent" or "end"
};

struct Trajectory {
  std::vector<TrajectoryEvent> events;
};

struct SearchStats {
  long nodes = 0;
  long lp_solves = 0;
  long backtracks = 0;
  double best_objective = 0.0;
  double best_time_s = 0.0;
  bool proved_optimal = false;
  double wall_time_s = 0.0;
  bool found = false;
};

struct SearchResult {
  std::optional<Incumbent> incumbent;
  Trajectory trajectory;
  SearchStats stats;
};

inline std::vector<double> score(const ProbabilityVector& p, ScoreVariant variant) {
  std::vector<double> z(p.size());
  switch (variant) {
    case ScoreVariant::max_p_1mp:
      for (std::size_t i = 0; i < p.size(); ++i) z[i] = std::max(p[i], 1.0 - p[i]);
      break;
    case ScoreVariant::p:
      for (std::size_t i = 0; i < p.size(); ++i) z[i] = p[i];
      break;
    case ScoreVariant::one_minus_p:
      for (std::size_t i = 0; i < p.size(); ++i) z[i] = 1.0 - p[i];
      break;
  }
  return z;
}

/// argmax of z over the candidate set; ties to the lowest index.
inline int select_branch_var(const std::vector<double>& z,
                             const std::vector<int>& candidates) {
  if (candidates.empty()) throw std::invalid_argument("empty candidate set");
  int best = candidates.front();
  for (int i : candidates)
    if (z[i] > z[best]) best = i;
  return best;
}

/// Child explored first: nearest integer of p for the max variant
/// (0.5 rounds to 1); always 1 for variant p, always 0 for 1-p.
inline int preferred_child(double p_i, ScoreVariant variant) {
  switch (variant) {
    case ScoreVariant::max_p_1mp: return p_i >= 0.5 ? 1 : 0;
    case ScoreVariant::p: return 1;
    case ScoreVariant::one_minus_p: return 0;
  }
  return 1;
}

namespace detail {

inline bool integral_objective(const MipInstance& inst) {
  for (double c : inst.obj)
    if (std::abs(c - std::round(c)) > 1e-9) return false;
  return true;
}

// Substitutes the fixings into the instance: fixed columns disappear,
// satisfied empty rows are dropped. Keeps search-node LPs small.
struct Restriction {
  MipInstance sub;
  std::vector<int> free_vars;  // sub column -> original column
  double fixed_obj = 0.0;      // instance-sense contribution of fixings
  bool trivially_infeasible = false;
};

inline Restriction restrict_instance(const MipInstance& inst,
                                     const Assignment& fixings) {
  Restriction res;
  std::vector<int> col_map(inst.nvars, -1);
  for (int i = 0; i < inst.nvars; ++i) {
    if (fixings.is_free(i)) {
      col_map[i] = static_cast<int>(res.free_vars.size());
      res.free_vars.push_back(i);
      res.sub.obj.push_back(inst.obj[i]);
    } else {
      res.fixed_obj += inst.obj[i] * fixings.values[i];
    }
  }
  res.sub.name = inst.name;
  res.sub.sense = inst.sense;
  res.sub.nvars = static_cast<int>(res.free_vars.size());
  for (const auto& row : inst.rows) {
    ConstraintRow sr;
    sr.rel = row.rel;
    sr.rhs = row.rhs;
    for (const auto& [col, val] : row.coefs) {
      if (col_map[col] >= 0)
        sr.coefs.emplace_back(col_map[col], val);
      else
        sr.rhs -= val * fixings.values[col];
    }
    if (sr.coefs.empty()) {
      bool ok = true;
      switch (sr.rel) {
        case Relation::le: ok = 0.0 <= sr.rhs + kFeasTol; break;
        case Relation::ge: ok = 0.0 >= sr.rhs - kFeasTol; break;
        case Relation::eq: ok = std::abs(sr.rhs) <= kFeasTol; break;
      }
      if (!ok) res.trivially_infeasible = true;
      continue;
    }
    res.sub.rows.push_back(std::move(sr));
  }
  return res;
}

// LP of the instance under fixings via the restricted sub-LP. Only the
// status, primal and min-sense objective are meaningful to the search.
struct NodeLp {
  bool feasible = false;
  double min_obj = 0.0;  // minimize-sense objective
  std::vector<double> primal;
};

inline NodeLp solve_node_lp(const MipInstance& inst, const Assignment& fixings) {
  NodeLp out;
  Restriction res = restrict_instance(inst, fixings);
  if (res.trivially_infeasible) return out;
  const double sense_sign = inst.sense == Sense::maximize ? -1.0 : 1.0;
  out.primal.assign(inst.nvars, 0.0);
  for (int i = 0; i < inst.nvars; ++i)
    if (!fixings.is_free(i)) out.primal[i] = fixings.values[i];
  if (res.sub.nvars == 0) {
    out.feasible = true;
    out.min_obj = sense_sign * res.fixed_obj;
    return out;
  }
  LpResult lp = lp_relax(res.sub, Assignment(res.sub.nvars));
  if (lp.status != LpResult::Status::optimal) return out;
  out.feasible = true;
  out.min_obj = sense_sign * (lp.objective + res.fixed_obj);
  for (int j = 0; j < res.sub.nvars; ++j) out.primal[res.free_vars[j]] = lp.primal[j];
  return out;
}

inline bool primal_integral(const std::vector<double>& x) {
  for (double v : x)
    if (std::abs(v - std::round(v)) > kFracTol) return false;
  return true;
}

inline Assignment round_primal(const std::vector<double>& x) {
  Assignment a(static_cast<int>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i)
    a.values[i] = static_cast<std::int8_t>(std::floor(x[i] + 0.5));
  return a;
}

class SearchClock {
 public:
  SearchClock() : start_(std::chrono::steady_clock::now()) {}
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace detail

/// Probabilistic Branching with guided DFS. Branches on the unfixed
/// variable with the highest score, descends into the child matching the
/// rounded prediction, and backtracks to the deepest unexplored node
/// (LIFO on depth ties). Prunes on LP infeasibility and bound.
inline SearchResult pb_dfs(const MipInstance& inst, const ProbabilityVector& probs,
                           ScoreVariant variant, const Termination& term) {
  if (static_cast<int>(probs.size()) != inst.nvars)
    throw std::invalid_argument("probability vector length mismatch");
  const detail::SearchClock clock;
  const bool int_obj = detail::integral_objective(inst);
  const std::vector<double> z = score(probs, variant);

  SearchResult result;
  double best_min = std::numeric_limits<double>::infinity();

  struct Node {
    Assignment fixings;
    int depth;
  };
  std::vector<Node> stack;
  stack.push_back({Assignment(inst.nvars), 0});
  int prev_depth = -1;
  bool limit_hit = false;

  while (!stack.empty()) {
    if (term.kind == Termination::Kind::time_limit && clock.elapsed() >= term.seconds) {
      limit_hit = true;
      break;
    }
    if (term.kind == Termination::Kind::node_limit && result.stats.nodes >= term.nodes) {
      limit_hit = true;
      break;
    }
    Node node = std::move(stack.back());
    stack.pop_back();
    ++result.stats.nodes;
    if (node.depth <= prev_depth) ++result.stats.backtracks;
    prev_depth = node.depth;

    ++result.stats.lp_solves;
    detail::NodeLp lp = detail::solve_node_lp(inst, node.fixings);
    if (!lp.feasible) continue;
    double bound = lp.min_obj;
    if (int_obj) bound = std::ceil(bound - kFeasTol);
    if (bound >= best_min - kFeasTol && result.incumbent) continue;

    if (detail::primal_integral(lp.primal)) {
      Assignment sol = detail::round_primal(lp.primal);
      for (int i = 0; i < inst.nvars; ++i)
        if (!node.fixings.is_free(i)) sol.values[i] = node.fixings.values[i];
      if (check_feasible(inst, sol).first && lp.min_obj < best_min) {
        best_min = lp.min_obj;
        Incumbent inc;
        inc.solution = sol;
        inc.objective = objective_value(inst, sol);
        inc.found_at = clock.elapsed();
        result.trajectory.events.push_back({inc.found_at, inc.objective, "incumbent"});
        result.incumbent = std::move(inc);
        if (term.kind == Termination::Kind::first_feasible) break;
      }
      continue;
    }

    std::vector<int> candidates;
    for (int i = 0; i < inst.nvars; ++i)
      if (node.fixings.is_free(i)) candidates.push_back(i);
    if (candidates.empty()) continue;  // complete fixing, non-integral LP impossible
    const int branch = select_branch_var(z, candidates);
    const int pref = preferred_child(probs[branch], variant);

    Node other = node;
    other.fixings.values[branch] = static_cast<std::int8_t>(1 - pref);
    ++other.depth;
    Node preferred = std::move(node);
    preferred.fixings.values[branch] = static_cast<std::int8_t>(pref);
    ++preferred.depth;
    stack.push_back(std::move(other));
    stack.push_back(std::move(preferred));
  }

  result.stats.proved_optimal =
      stack.empty() && !limit_hit && term.kind != Termination::Kind::first_feasible;
  if (result.incumbent && term.kind == Termination::Kind::first_feasible)
    result.stats.proved_optimal = false;
  result.stats.wall_time_s = clock.elapsed();
  result.stats.found = result.incumbent.has_value();
  if (result.incumbent) {
    result.stats.best_objective = result.incumbent->objective;
    result.stats.best_time_s = result.incumbent->found_at;
    result.trajectory.events.push_back(
        {result.stats.wall_time_s, result.incumbent->objective, "end"});
  }
  return result;
}

/// Plain DFS control arm: constant scores (lowest-index branching) and
/// 1-then-0 child order; otherwise the same engine as pb_dfs.
inline SearchResult baseline_dfs(const MipInstance& inst, const Termination& term) {
  return pb_dfs(inst, ProbabilityVector(inst.nvars, 0.5), ScoreVariant::p, term);
}

struct ExactResult {
  std::optional<Assignment> solution;
  double objective = 0.0;
  bool proved_optimal = false;
  SearchStats stats;
};

/// Full B&B: best-bound node selection, most-fractional branching with
/// lowest-index ties. With no limits the result is provably optimal.
inline ExactResult solve_exact(const MipInstance& inst,
                               const Termination& limits = Termination::none()) {
  const detail::SearchClock clock;
  const bool int_obj = detail::integral_objective(inst);
  ExactResult result;
  double best_min = std::numeric_limits<double>::infinity();

  struct Node {
    double bound;  // min-sense bound inherited from the parent LP
    long order;
    Assignment fixings;
  };
  auto cmp = [](const Node& a, const Node& b) {
    return a.bound > b.bound || (a.bound == b.bound && a.order > b.order);
  };
  std::priority_queue<Node, std::vector<Node>, decltype(cmp)> queue(cmp);
  long counter = 0;
  queue.push({-std::numeric_limits<double>::infinity(), counter++,
              Assignment(inst.nvars)});
  bool limit_hit = false;

  while (!queue.empty()) {
    if (limits.kind == Termination::Kind::time_limit &&
        clock.elapsed() >= limits.seconds) {
      limit_hit = true;
      break;
    }
    if (limits.kind == Termination::Kind::node_limit &&
        result.stats.nodes >= limits.nodes) {
      limit_hit = true;
      break;
    }
    Node node = queue.top();
    queue.pop();
    double parent_bound = node.bound;
    if (int_obj) parent_bound = std::ceil(parent_bound - kFeasTol);
    if (result.solution && parent_bound >= best_min - kFeasTol) break;  // best-bound order

    ++result.stats.nodes;
    ++result.stats.lp_solves;
    detail::NodeLp lp = detail::solve_node_lp(inst, node.fixings);
    if (!lp.feasible) continue;
    double bound = lp.min_obj;
    if (int_obj) bound = std::ceil(bound - kFeasTol);
    if (result.solution && bound >= best_min - kFeasTol) continue;

    if (detail::primal_integral(lp.primal)) {
      Assignment sol = detail::round_primal(lp.primal);
      for (int i = 0; i < inst.nvars; ++i)
        if (!node.fixings.is_free(i)) sol.values[i] = node.fixings.values[i];
      if (check_feasible(inst, sol).first && lp.min_obj < best_min) {
        best_min = lp.min_obj;
        result.solution = std::move(sol);
        result.objective = objective_value(inst, *result.solution);
        result.stats.best_objective = result.objective;
        result.stats.best_time_s = clock.elapsed();
        result.stats.found = true;
      }
      continue;
    }

    // most fractional: largest distance to the nearest integer
    int branch = -1;
    double best_frac = -1.0;
    for (int i = 0; i < inst.nvars; ++i) {
      if (!node.fixings.is_free(i)) continue;
      const double f = std::min(lp.primal[i] - std::floor(lp.primal[i]),
                                std::ceil(lp.primal[i]) - lp.primal[i]);
      if (f > best_frac + 1e-12) {
        best_frac = f;
        branch = i;
      }
    }
    if (branch < 0) continue;
    for (int v : {0, 1}) {
      Node child;
      child.bound = lp.min_obj;
      child.order = counter++;
      child.fixings = node.fixings;
      child.fixings.values[branch] = static_cast<std::int8_t>(v);
      queue.push(std::move(child));
    }
  }

  result.proved_optimal = result.solution.has_value() && !limit_hit;
  result.stats.proved_optimal = result.proved_optimal;
  result.stats.wall_time_s = clock.elapsed();
  return result;
}

/// Root LP rounding: nearest integer per variable (0.5 rounds up);
/// an incumbent only if the rounded point is feasible.
inline std::optional<Incumbent> lp_rounding(const MipInstance& inst) {
  const detail::SearchClock clock;
  LpResult lp = lp_relax(inst);
  if (lp.status != LpResult::Status::optimal) return std::nullopt;
  Assignment a = detail::round_primal(lp.primal);
  if (!check_feasible(inst, a).first) return std::nullopt;
  Incumbent inc;
  inc.objective = objective_value(inst, a);
  inc.solution = std::move(a);
  inc.found_at = clock.elapsed();
  return inc;
}

inline void write_trajectory_csv(const Trajectory& traj, std::ostream& out) {
  out << "time_s,objective,event\n";
  for (const auto& ev : traj.events)
    out << ev.time_s << ',' << ev.objective << ',' << ev.event << '\n';
}

inline nlohmann::json stats_to_json(const SearchStats& s) {
  return {{"nodes", s.nodes},
          {"lp_solves", s.lp_solves},
          {"backtracks", s.backtracks},
          {"best_objective", s.best_objective},
          {"best_time_s", s.best_time_s},
          {"proved_optimal", s.proved_optimal}};
}

}  // namespace pbdfs
