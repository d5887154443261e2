// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "pbdfs/matrix.hpp"
#include "pbdfs/mip.hpp"
#include "pbdfs/simplex.hpp"

namespace pbdfs {

struct FeatureMatrix {
  Matrix values;  // nvars x nfeat
  std::vector<std::string> names;

  int nvars() const { return values.rows; }
  int nfeat() const { return values.cols; }
};

struct RootStats {
  LpResult lp;  // root relaxation, no fixings
  std::vector<double> pseudo_up;
  std::vector<double> pseudo_down;
};

constexpr double kPseudoInfeasible = 1e6;
constexpr double kFracTol = 1e-6;

namespace detail {

inline double obj_min_sense(const MipInstance& inst, const LpResult& lp) {
  return inst.sense == Sense::maximize ? -lp.objective : lp.objective;
}

struct Stats {
  double sum = 0, mean = 0, stddev = 0, mn = 0, mx = 0;
};

// population statistics; an empty sample maps to all zeros
inline Stats stats_of(const std::vector<double>& v) {
  Stats s;
  if (v.empty()) return s;
  for (double x : v) s.sum += x;
  s.mean = s.sum / static_cast<double>(v.size());
  double sq = 0;
  s.mn = v[0];
  s.mx = v[0];
  for (double x : v) {
    sq += (x - s.mean) * (x - s.mean);
    s.mn = std::min(s.mn, x);
    s.mx = std::max(s.mx, x);
  }
  s.stddev = std::sqrt(sq / static_cast<double>(v.size()));
  return s;
}

}  // namespace detail

/// Synthesizes root pseudo costs by capped strong branching: objective
/// degradation of the child LP per unit of change of the branching
/// variable. Integral-at-root variables default to (1, 1); an infeasible
/// child yields the 1e6 sentinel.
inline void root_pseudocosts(const MipInstance& inst, const LpResult& root_lp,
                             int iter_cap, std::vector<double>& pseudo_up,
                             std::vector<double>& pseudo_down) {
  const int n = inst.nvars;
  pseudo_up.assign(n, 1.0);
  pseudo_down.assign(n, 1.0);
  const double root_obj = detail::obj_min_sense(inst, root_lp);
  for (int i = 0; i < n; ++i) {
    const double x = root_lp.primal[i];
    if (std::abs(x - std::round(x)) <= kFracTol) continue;
    Assignment fix(n);
    fix.values[i] = 1;
    LpResult up = lp_relax(inst, fix, iter_cap);
    pseudo_up[i] = (up.status == LpResult::Status::optimal)
                       ? std::max(0.0, detail::obj_min_sense(inst, up) - root_obj) /
                             (1.0 - x)
                       : kPseudoInfeasible;
    fix.values[i] = 0;
    LpResult down = lp_relax(inst, fix, iter_cap);
    pseudo_down[i] = (down.status == LpResult::Status::optimal)
                         ? std::max(0.0, detail::obj_min_sense(inst, down) - root_obj) / x
                         : kPseudoInfeasible;
  }
}

inline RootStats compute_root_stats(const MipInstance& inst, int iter_cap = 50) {
  RootStats rs;
  rs.lp = lp_relax(inst);
  if (rs.lp.status != LpResult::Status::optimal)
    throw std::runtime_error("root LP is infeasible");
  root_pseudocosts(inst, rs.lp, iter_cap, rs.pseudo_up, rs.pseudo_down);
  return rs;
}

inline const std::vector<std::string>& feature_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n = {
        "obj", "obj_pos", "obj_neg",
        "row_nnz", "row_pos_count", "row_neg_count",
        "lp_value", "lp_frac_down", "lp_frac_up", "lp_is_frac",
        "pc_up", "pc_down", "pc_ratio", "pc_sum", "pc_product", "reduced_cost",
        "lb", "ub",
        "row_degree_mean", "row_degree_std", "row_degree_min", "row_degree_max",
        "coef_rhs_ratio_max", "coef_rhs_ratio_min"};
    for (const char* grp : {"pos_coef", "neg_coef"})
      for (const char* st : {"sum", "mean", "std", "max", "min"})
        n.push_back(std::string(grp) + "_" + st);
    for (const char* w : {"unit", "dual", "invsum"})
      for (const char* st : {"sum", "mean", "std", "max", "min"})
        n.push_back(std::string("rowcoef_") + w + "_" + st);
    return n;
  }();
  return names;
}

/// Raw (unnormalized) per-variable feature matrix; 49 columns.
inline FeatureMatrix extract_features(const MipInstance& inst, const RootStats& rs) {
  const int n = inst.nvars;
  FeatureMatrix fm;
  fm.names = feature_names();
  fm.values = Matrix(n, static_cast<int>(fm.names.size()));

  std::vector<std::vector<int>> var_rows(n);  // rows containing each variable
  std::vector<double> row_coef_sum(inst.nrows(), 0.0);
  for (int r = 0; r < inst.nrows(); ++r) {
    for (const auto& [col, val] : inst.rows[r].coefs) {
      var_rows[col].push_back(r);
      row_coef_sum[r] += val;
    }
  }

  for (int i = 0; i < n; ++i) {
    double* f = fm.values.row(i);
    int k = 0;
    const double c = inst.obj[i];
    f[k++] = c;
    f[k++] = std::max(c, 0.0);
    f[k++] = std::max(-c, 0.0);

    int npos = 0, nneg = 0;
    std::vector<double> pos, neg;
    for (int r : var_rows[i]) {
      for (const auto& [col, val] : inst.rows[r].coefs) {
        if (col != i) continue;
        if (val > 0) {
          ++npos;
          pos.push_back(val);
        } else {
          ++nneg;
          neg.push_back(-val);
        }
      }
    }
    f[k++] = static_cast<double>(var_rows[i].size());
    f[k++] = npos;
    f[k++] = nneg;

    const double x = rs.lp.primal[i];
    f[k++] = x;
    f[k++] = x - std::floor(x);
    f[k++] = std::ceil(x) - x;
    f[k++] = (std::abs(x - std::round(x)) > kFracTol) ? 1.0 : 0.0;

    const double pu = rs.pseudo_up[i];
    const double pd = rs.pseudo_down[i];
    f[k++] = pu;
    f[k++] = pd;
    f[k++] = (pd > 1e-12) ? pu / pd : 0.0;
    f[k++] = pu + pd;
    f[k++] = pu * pd;
    f[k++] = rs.lp.reduced_costs[i];

    f[k++] = 0.0;  // global lower bound
    f[k++] = 1.0;  // global upper bound

    std::vector<double> degrees, ratios;
    for (int r : var_rows[i]) {
      degrees.push_back(static_cast<double>(inst.rows[r].coefs.size()));
      double coef = 0.0;
      for (const auto& [col, val] : inst.rows[r].coefs)
        if (col == i) coef = val;
      ratios.push_back(inst.rows[r].rhs != 0.0 ? coef / inst.rows[r].rhs : 0.0);
    }
    const auto ds = detail::stats_of(degrees);
    f[k++] = ds.mean;
    f[k++] = ds.stddev;
    f[k++] = ds.mn;
    f[k++] = ds.mx;
    const auto rat = detail::stats_of(ratios);
    f[k++] = rat.mx;
    f[k++] = rat.mn;

    for (const auto* sample : {&pos, &neg}) {
      const auto st = detail::stats_of(*sample);
      f[k++] = st.sum;
      f[k++] = st.mean;
      f[k++] = st.stddev;
      f[k++] = st.mx;
      f[k++] = st.mn;
    }

    // All coefficients of every containing row, under three row weights.
    std::vector<double> unit_w, dual_w, inv_w;
    for (int r : var_rows[i]) {
      const double dual = rs.lp.duals[r];
      const double inv = row_coef_sum[r] != 0.0 ? 1.0 / row_coef_sum[r] : 0.0;
      for (const auto& [col, val] : inst.rows[r].coefs) {
        unit_w.push_back(val);
        dual_w.push_back(val * dual);
        inv_w.push_back(val * inv);
      }
    }
    for (const auto* sample : {&unit_w, &dual_w, &inv_w}) {
      const auto st = detail::stats_of(*sample);
      f[k++] = st.sum;
      f[k++] = st.mean;
      f[k++] = st.stddev;
      f[k++] = st.mx;
      f[k++] = st.mn;
    }
  }
  return fm;
}

/// Per-column (v - min) / (max - min); constant columns map to 0.
inline FeatureMatrix minmax_normalize(const FeatureMatrix& fm) {
  FeatureMatrix out = fm;
  for (int j = 0; j < fm.nfeat(); ++j) {
    double mn = fm.values(0, j), mx = fm.values(0, j);
    for (int i = 1; i < fm.nvars(); ++i) {
      mn = std::min(mn, fm.values(i, j));
      mx = std::max(mx, fm.values(i, j));
    }
    const double range = mx - mn;
    for (int i = 0; i < fm.nvars(); ++i)
      out.values(i, j) = range > 0.0 ? (fm.values(i, j) - mn) / range : 0.0;
  }
  return out;
}

inline nlohmann::json features_to_json(const FeatureMatrix& fm) {
  nlohmann::json j;
  j["names"] = fm.names;
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < fm.nvars(); ++i)
    rows.push_back(std::vector<double>(fm.values.row(i), fm.values.row(i) + fm.nfeat()));
  j["rows"] = std::move(rows);
  return j;
}

}  // namespace pbdfs
