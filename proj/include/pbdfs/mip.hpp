// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace pbdfs {

enum class Sense { minimize, maximize };
enum class Relation { le, ge, eq };

constexpr double kFeasTol = 1e-6;

/// One linear constraint in sparse form: sum coefs * x {rel} rhs.
struct ConstraintRow {
  std::vector<std::pair<int, double>> coefs;  // sorted by column index
  Relation rel = Relation::le;
  double rhs = 0.0;
};

/// A binary MIP: optimize c^T x subject to linear rows, x in {0,1}^n.
struct MipInstance {
  std::string name;
  Sense sense = Sense::minimize;
  int nvars = 0;
  std::vector<double> obj;
  std::vector<ConstraintRow> rows;

  int nrows() const { return static_cast<int>(rows.size()); }
};

/// Partial or complete 0/1 assignment; kFree marks an unfixed variable.
struct Assignment {
  static constexpr std::int8_t kFree = -1;
  std::vector<std::int8_t> values;

  Assignment() = default;
  explicit Assignment(int n) : values(n, kFree) {}

  int size() const { return static_cast<int>(values.size()); }
  bool is_free(int i) const { return values[i] == kFree; }
  bool complete() const {
    return std::none_of(values.begin(), values.end(),
                        [](std::int8_t v) { return v == kFree; });
  }
  int num_fixed() const {
    return static_cast<int>(std::count_if(values.begin(), values.end(),
                                          [](std::int8_t v) { return v != kFree; }));
  }
};

inline std::vector<std::string> validate(const MipInstance& inst) {
  std::vector<std::string> errors;
  if (inst.nvars < 1) errors.push_back("nvars must be >= 1");
  if (static_cast<int>(inst.obj.size()) != inst.nvars)
    errors.push_back("objective length does not match nvars");
  for (int r = 0; r < inst.nrows(); ++r) {
    const auto& row = inst.rows[r];
    int prev = -1;
    for (const auto& [col, val] : row.coefs) {
      if (col < 0 || col >= inst.nvars)
        errors.push_back("row " + std::to_string(r) + ": column out of range");
      if (col == prev)
        errors.push_back("row " + std::to_string(r) + ": duplicate column " +
                         std::to_string(col));
      if (col < prev)
        errors.push_back("row " + std::to_string(r) + ": columns not sorted");
      if (val == 0.0)
        errors.push_back("row " + std::to_string(r) + ": stored zero coefficient");
      prev = col;
    }
  }
  return errors;
}

inline double objective_value(const MipInstance& inst, const Assignment& a) {
  if (a.size() != inst.nvars)
    throw std::invalid_argument("assignment length mismatch");
  if (!a.complete()) throw std::invalid_argument("assignment is incomplete");
  double obj = 0.0;
  for (int i = 0; i < inst.nvars; ++i) obj += inst.obj[i] * a.values[i];
  return obj;
}

/// Checks every row exactly; returns the indices of violated rows.
inline std::pair<bool, std::vector<int>> check_feasible(const MipInstance& inst,
                                                        const Assignment& a) {
  if (a.size() != inst.nvars)
    throw std::invalid_argument("assignment length mismatch");
  if (!a.complete()) throw std::invalid_argument("assignment is incomplete");
  std::vector<int> violated;
  for (int r = 0; r < inst.nrows(); ++r) {
    const auto& row = inst.rows[r];
    double lhs = 0.0;
    for (const auto& [col, val] : row.coefs) lhs += val * a.values[col];
    bool ok = true;
    switch (row.rel) {
      case Relation::le: ok = lhs <= row.rhs + kFeasTol; break;
      case Relation::ge: ok = lhs >= row.rhs - kFeasTol; break;
      case Relation::eq: ok = std::abs(lhs - row.rhs) <= kFeasTol; break;
    }
    if (!ok) violated.push_back(r);
  }
  return {violated.empty(), violated};
}

namespace detail {

inline std::string relation_token(Relation rel) {
  switch (rel) {
    case Relation::le: return "le";
    case Relation::ge: return "ge";
    case Relation::eq: return "eq";
  }
  return "le";
}

inline Relation parse_relation(const std::string& tok) {
  if (tok == "le") return Relation::le;
  if (tok == "ge") return Relation::ge;
  if (tok == "eq") return Relation::eq;
  throw std::runtime_error("unknown relation token: " + tok);
}

}  // namespace detail

inline nlohmann::json to_json(const MipInstance& inst) {
  nlohmann::json j;
  j["name"] = inst.name;
  j["sense"] = inst.sense == Sense::minimize ? "min" : "max";
  j["nvars"] = inst.nvars;
  j["obj"] = inst.obj;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : inst.rows) {
    nlohmann::json coefs = nlohmann::json::array();
    for (const auto& [col, val] : row.coefs) coefs.push_back({col, val});
    rows.push_back({{"coefs", std::move(coefs)},
                    {"rel", detail::relation_token(row.rel)},
                    {"rhs", row.rhs}});
  }
  j["rows"] = std::move(rows);
  return j;
}

inline MipInstance instance_from_json(const nlohmann::json& j) {
  MipInstance inst;
  inst.name = j.at("name").get<std::string>();
  const std::string sense = j.at("sense").get<std::string>();
  if (sense == "min")
    inst.sense = Sense::minimize;
  else if (sense == "max")
    inst.sense = Sense::maximize;
  else
    throw std::runtime_error("unknown sense token: " + sense);
  inst.nvars = j.at("nvars").get<int>();
  inst.obj = j.at("obj").get<std::vector<double>>();
  for (const auto& jr : j.at("rows")) {
    ConstraintRow row;
    for (const auto& jc : jr.at("coefs"))
      row.coefs.emplace_back(jc.at(0).get<int>(), jc.at(1).get<double>());
    row.rel = detail::parse_relation(jr.at("rel").get<std::string>());
    row.rhs = jr.at("rhs").get<double>();
    inst.rows.push_back(std::move(row));
  }
  auto errors = validate(inst);
  if (!errors.empty())
    throw std::runtime_error("invalid instance: " + errors.front());
  return inst;
}

inline void write_instance(const MipInstance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << to_json(inst).dump(2) << '\n';
}

inline MipInstance read_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  nlohmann::json j;
  in >> j;
  return instance_from_json(j);
}

inline bool structurally_equal(const MipInstance& a, const MipInstance& b) {
  if (a.name != b.name || a.sense != b.sense || a.nvars != b.nvars ||
      a.obj != b.obj || a.nrows() != b.nrows())
    return false;
  for (int r = 0; r < a.nrows(); ++r) {
    if (a.rows[r].coefs != b.rows[r].coefs || a.rows[r].rel != b.rows[r].rel ||
        a.rows[r].rhs != b.rows[r].rhs)
      return false;
  }
  return true;
}

}  // namespace pbdfs
