// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "pbdfs/mip.hpp"

namespace pbdfs {

struct LpResult {
  enum class Status { optimal, infeasible };
  Status status = Status::infeasible;
  std::vector<double> primal;         // length n, in [0,1]
  double objective = 0.0;             // in the instance's sense
  std::vector<double> reduced_costs;  // length n, instance sense
  std::vector<double> duals;          // length m (original rows)
  int iterations = 0;
};

namespace detail {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-9;
constexpr double kLpFeasTol = 1e-7;
constexpr double kLpOptTol = 1e-9;

// Full-tableau primal simplex with upper-bounded variables.
// Columns: [0, n) structurals, [n, n+mi) slacks, then artificials.
// All internal rows are <= form, flipped where needed so that the
// initial basis (slack or artificial per row) is primal feasible.
class BoundedSimplex {
 public:
  BoundedSimplex(const MipInstance& inst, const Assignment& fixings)
      : inst_(inst) {
    n_ = inst.nvars;
    min_obj_.assign(inst.obj.begin(), inst.obj.end());
    if (inst.sense == Sense::maximize)
      for (double& c : min_obj_) c = -c;

    lo_.assign(n_, 0.0);
    hi_.assign(n_, 1.0);
    if (fixings.size() > 0) {
      if (fixings.size() != n_) throw std::invalid_argument("fixings length mismatch");
      for (int i = 0; i < n_; ++i)
        if (!fixings.is_free(i)) lo_[i] = hi_[i] = fixings.values[i];
    }

    // Normalize rows to <=; "=" becomes a <= / >= pair.
    for (int r = 0; r < inst.nrows(); ++r) {
      const auto& row = inst.rows[r];
      if (row.rel == Relation::le || row.rel == Relation::eq)
        add_le_row(row, r, +1);
      if (row.rel == Relation::ge || row.rel == Relation::eq)
        add_le_row(row, r, -1);
    }
    mi_ = static_cast<int>(rows_.size());
  }

  // max_phase2_iter < 0 means unlimited. When the cap is hit the current
  // (primal feasible) basic solution is reported as the result.
  LpResult solve(int max_phase2_iter = -1) {
    build_tableau();
    LpResult result;
    result.iterations = 0;

    if (nart_ > 0) {
      std::vector<double> phase1_cost(ncols_, 0.0);
      for (int j = n_ + mi_; j < ncols_; ++j) phase1_cost[j] = 1.0;
      build_reduced_costs(phase1_cost);
      run_phase(-1, result.iterations);
      double infeas = 0.0;
      for (int i = 0; i < mi_; ++i)
        if (basis_[i] >= n_ + mi_) infeas += beta_[i];
      if (infeas > kLpFeasTol) {
        result.status = LpResult::Status::infeasible;
        return result;
      }
      drive_out_artificials();
      for (int j = n_ + mi_; j < ncols_; ++j) hi_col_[j] = 0.0;
    }

    std::vector<double> phase2_cost(ncols_, 0.0);
    for (int j = 0; j < n_; ++j) phase2_cost[j] = min_obj_[j];
    build_reduced_costs(phase2_cost);
    run_phase(max_phase2_iter, result.iterations);

    result.status = LpResult::Status::optimal;
    extract(result);
    return result;
  }

 private:
  static constexpr std::int8_t kAtLower = 0;
  static constexpr std::int8_t kAtUpper = 1;
  static constexpr std::int8_t kBasic = 2;

  struct InternalRow {
    std::vector<std::pair<int, double>> coefs;
    double rhs;
    int orig;
    int sign;  // +1: same orientation as the original row, -1: negated
  };

  void add_le_row(const ConstraintRow& row, int orig, int sign) {
    InternalRow ir;
    ir.orig = orig;
    ir.sign = sign;
    ir.rhs = sign * row.rhs;
    ir.coefs.reserve(row.coefs.size());
    for (const auto& [col, val] : row.coefs) ir.coefs.emplace_back(col, sign * val);
    rows_.push_back(std::move(ir));
  }

  double& tab(int i, int j) { return tab_[static_cast<std::size_t>(i) * ncols_ + j]; }

  void build_tableau() {
    // Nonbasic structurals start at their lower bound.
    // Row flips (flip_[i] = -1) make each row's starting basic variable
    // (slack, or artificial when the slack would be negative) nonnegative.
    flip_.assign(mi_, 1);
    std::vector<double> start(n_);
    for (int j = 0; j < n_; ++j) start[j] = lo_[j];

    std::vector<int> art_row;
    for (int i = 0; i < mi_; ++i) {
      double act = 0.0;
      for (const auto& [col, val] : rows_[i].coefs) act += val * start[col];
      if (rows_[i].rhs - act < 0.0) {
        flip_[i] = -1;
        art_row.push_back(i);
      }
    }
    nart_ = static_cast<int>(art_row.size());
    ncols_ = n_ + mi_ + nart_;

    tab_.assign(static_cast<std::size_t>(mi_) * ncols_, 0.0);
    lo_col_.assign(ncols_, 0.0);
    hi_col_.assign(ncols_, kInf);
    for (int j = 0; j < n_; ++j) {
      lo_col_[j] = lo_[j];
      hi_col_[j] = hi_[j];
    }

    state_.assign(ncols_, kAtLower);
    xval_.assign(ncols_, 0.0);
    for (int j = 0; j < n_; ++j) xval_[j] = lo_[j];

    basis_.assign(mi_, -1);
    beta_.assign(mi_, 0.0);
    int art = 0;
    for (int i = 0; i < mi_; ++i) {
      for (const auto& [col, val] : rows_[i].coefs) tab(i, col) = flip_[i] * val;
      tab(i, n_ + i) = flip_[i];  // slack
      double rhs = flip_[i] * rows_[i].rhs;
      double act = 0.0;
      for (const auto& [col, val] : rows_[i].coefs)
        act += flip_[i] * val * start[col];
      if (flip_[i] == 1) {
        basis_[i] = n_ + i;
      } else {
        int acol = n_ + mi_ + art;
        tab(i, acol) = 1.0;
        basis_[i] = acol;
        ++art;
      }
      state_[basis_[i]] = kBasic;
      beta_[i] = rhs - act;
    }
  }

  void build_reduced_costs(const std::vector<double>& cost) {
    d_ = cost;
    for (int i = 0; i < mi_; ++i) {
      double cb = cost[basis_[i]];
      if (cb == 0.0) continue;
      const double* row = &tab_[static_cast<std::size_t>(i) * ncols_];
      for (int j = 0; j < ncols_; ++j) d_[j] -= cb * row[j];
    }
    for (int i = 0; i < mi_; ++i) d_[basis_[i]] = 0.0;
  }

  // Dantzig pricing with a Bland fallback after 5*(n+m) iterations.
  int choose_entering(bool bland) const {
    int best = -1;
    double best_viol = kLpOptTol;
    for (int j = 0; j < ncols_; ++j) {
      if (state_[j] == kBasic) continue;
      if (hi_col_[j] - lo_col_[j] <= 0.0) continue;  // fixed or retired column
      double viol = 0.0;
      if (state_[j] == kAtLower && d_[j] < -kLpOptTol)
        viol = -d_[j];
      else if (state_[j] == kAtUpper && d_[j] > kLpOptTol)
        viol = d_[j];
      else
        continue;
      if (bland) return j;
      if (viol > best_viol) {
        best_viol = viol;
        best = j;
      }
    }
    return best;
  }

  void run_phase(int max_iter, int& iter_total) {
    const int bland_after = 5 * (n_ + mi_);
    const int hard_cap = 1000 * (n_ + mi_ + 10);
    int iter = 0;
    while (true) {
      if (max_iter >= 0 && iter >= max_iter) return;
      if (iter > hard_cap) throw std::runtime_error("simplex iteration cap exceeded");
      int j = choose_entering(iter >= bland_after);
      if (j < 0) return;
      pivot_step(j);
      ++iter;
      ++iter_total;
    }
  }

  void pivot_step(int j) {
    const int dir = (state_[j] == kAtLower) ? +1 : -1;
    double t_best = hi_col_[j] - lo_col_[j];  // bound-flip distance
    int leave_row = -1;
    int leave_to = 0;  // 0: leaving hits lower, 1: hits upper
    for (int i = 0; i < mi_; ++i) {
      double w = dir * tab(i, j);
      int k = basis_[i];
      double t;
      int to;
      if (w > kPivotTol) {
        t = (beta_[i] - lo_col_[k]) / w;
        to = 0;
      } else if (w < -kPivotTol) {
        if (hi_col_[k] == kInf) continue;
        t = (hi_col_[k] - beta_[i]) / (-w);
        to = 1;
      } else {
        continue;
      }
      if (t < -1e-12) t = 0.0;
      if (t < t_best - 1e-12 ||
          (t < t_best + 1e-12 && leave_row >= 0 && basis_[i] < basis_[leave_row])) {
        t_best = t;
        leave_row = i;
        leave_to = to;
      }
    }
    if (t_best == kInf)
      throw std::runtime_error("simplex: unbounded direction on bounded LP");

    // Move basics along the direction, then update the basis.
    for (int i = 0; i < mi_; ++i) beta_[i] -= t_best * dir * tab(i, j);
    const double enter_val = xval_[j] + dir * t_best;

    if (leave_row < 0) {
      // Bound flip: entering traverses to its opposite bound.
      state_[j] = (dir > 0) ? kAtUpper : kAtLower;
      xval_[j] = (dir > 0) ? hi_col_[j] : lo_col_[j];
      return;
    }

    const int leaving = basis_[leave_row];
    state_[leaving] = (leave_to == 0) ? kAtLower : kAtUpper;
    xval_[leaving] = (leave_to == 0) ? lo_col_[leaving] : hi_col_[leaving];
    basis_[leave_row] = j;
    state_[j] = kBasic;
    beta_[leave_row] = enter_val;
    eliminate(leave_row, j);
  }

  // Gauss-Jordan update of the tableau and the reduced-cost row.
  void eliminate(int r, int j) {
    double* prow = &tab_[static_cast<std::size_t>(r) * ncols_];
    const double piv = prow[j];
    const double inv = 1.0 / piv;
    for (int k = 0; k < ncols_; ++k) prow[k] *= inv;
    prow[j] = 1.0;
    for (int i = 0; i < mi_; ++i) {
      if (i == r) continue;
      double* row = &tab_[static_cast<std::size_t>(i) * ncols_];
      const double f = row[j];
      if (f == 0.0) continue;
      for (int k = 0; k < ncols_; ++k) row[k] -= f * prow[k];
      row[j] = 0.0;
    }
    const double f = d_[j];
    if (f != 0.0) {
      for (int k = 0; k < ncols_; ++k) d_[k] -= f * prow[k];
      d_[j] = 0.0;
    }
  }

  // Pivot basic artificials out (degenerate pivots) where a usable column
  // exists; rows without one are redundant and left inert.
  void drive_out_artificials() {
    for (int i = 0; i < mi_; ++i) {
      if (basis_[i] < n_ + mi_) continue;
      int j = -1;
      for (int k = 0; k < n_ + mi_; ++k) {
        if (state_[k] == kBasic) continue;
        if (std::abs(tab(i, k)) > 1e-7) {
          j = k;
          break;
        }
      }
      if (j < 0) continue;
      const int art = basis_[i];
      state_[art] = kAtLower;
      xval_[art] = 0.0;
      basis_[i] = j;
      state_[j] = kBasic;
      beta_[i] = xval_[j];  // degenerate: value unchanged
      eliminate(i, j);
    }
  }

  void extract(LpResult& out) const {
    std::vector<double> x(ncols_, 0.0);
    for (int j = 0; j < ncols_; ++j) x[j] = xval_[j];
    for (int i = 0; i < mi_; ++i) x[basis_[i]] = beta_[i];

    out.primal.assign(n_, 0.0);
    for (int j = 0; j < n_; ++j) {
      double v = x[j];
      if (v < lo_[j]) v = lo_[j];
      if (v > hi_[j]) v = hi_[j];
      out.primal[j] = v;
    }
    double obj = 0.0;
    for (int j = 0; j < n_; ++j) obj += min_obj_[j] * out.primal[j];
    const double sense_sign = (inst_.sense == Sense::maximize) ? -1.0 : 1.0;
    out.objective = sense_sign * obj;

    out.reduced_costs.assign(n_, 0.0);
    for (int j = 0; j < n_; ++j)
      out.reduced_costs[j] = (state_[j] == kBasic) ? 0.0 : sense_sign * d_[j];

    // Internal-row dual from the slack reduced cost, mapped back through
    // the row flip and the le/ge orientation sign.
    out.duals.assign(inst_.nrows(), 0.0);
    for (int i = 0; i < mi_; ++i) {
      const double y_internal = -flip_[i] * d_[n_ + i];
      out.duals[rows_[i].orig] += sense_sign * rows_[i].sign * y_internal;
    }
  }

  const MipInstance& inst_;
  int n_ = 0;
  int mi_ = 0;
  int nart_ = 0;
  int ncols_ = 0;
  std::vector<double> min_obj_;
  std::vector<double> lo_, hi_;
  std::vector<InternalRow> rows_;
  std::vector<int> flip_;
  std::vector<double> tab_;
  std::vector<double> beta_;
  std::vector<double> d_;
  std::vector<double> xval_;
  std::vector<double> lo_col_, hi_col_;
  std::vector<int> basis_;
  std::vector<std::int8_t> state_;
};

}  // namespace detail

/// LP relaxation of a binary MIP under partial fixings. Free variables get
/// bounds [0,1]; fixed variables degenerate bounds [v,v]. Deterministic.
inline LpResult lp_relax(const MipInstance& inst, const Assignment& fixings,
                         int max_phase2_iter = -1) {
  detail::BoundedSimplex simplex(inst, fixings);
  return simplex.solve(max_phase2_iter);
}

inline LpResult lp_relax(const MipInstance& inst) {
  return lp_relax(inst, Assignment(inst.nvars));
}

}  // namespace pbdfs
