// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <ostream>
#include <vector>

#include "pbdfs/mip.hpp"

namespace pbdfs {

/// Variable-relation graph: an edge whenever two variables share a row.
struct LinkageGraph {
  int nnodes = 0;
  std::vector<std::vector<int>> adjacency;  // sorted neighbor lists
  std::vector<int> degrees;

  bool has_edge(int u, int v) const {
    const auto& a = adjacency[u];
    return std::binary_search(a.begin(), a.end(), v);
  }
  std::vector<std::pair<int, int>> edge_set() const {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < nnodes; ++u)
      for (int v : adjacency[u])
        if (u < v) edges.emplace_back(u, v);
    return edges;
  }
};

/// L = I - D^{-1/2} A D^{-1/2}, stored CSR. Isolated nodes get an
/// identity row (their D^{-1/2} entry is taken as 0).
struct NormalizedLaplacian {
  int n = 0;
  std::vector<int> row_ptr;
  std::vector<int> cols;
  std::vector<double> vals;

  double coeff(int i, int j) const {
    for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
      if (cols[k] == j) return vals[k];
    return 0.0;
  }
};

inline LinkageGraph build_linkage_graph(const MipInstance& inst) {
  LinkageGraph g;
  g.nnodes = inst.nvars;
  g.adjacency.assign(inst.nvars, {});
  for (const auto& row : inst.rows) {
    const auto& c = row.coefs;
    for (std::size_t a = 0; a < c.size(); ++a)
      for (std::size_t b = a + 1; b < c.size(); ++b) {
        g.adjacency[c[a].first].push_back(c[b].first);
        g.adjacency[c[b].first].push_back(c[a].first);
      }
  }
  g.degrees.assign(inst.nvars, 0);
  for (int v = 0; v < inst.nvars; ++v) {
    auto& a = g.adjacency[v];
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    g.degrees[v] = static_cast<int>(a.size());
  }
  return g;
}

inline NormalizedLaplacian normalized_laplacian(const LinkageGraph& g) {
  NormalizedLaplacian lap;
  lap.n = g.nnodes;
  lap.row_ptr.reserve(g.nnodes + 1);
  lap.row_ptr.push_back(0);
  std::vector<double> dinv_sqrt(g.nnodes, 0.0);
  for (int v = 0; v < g.nnodes; ++v)
    if (g.degrees[v] > 0) dinv_sqrt[v] = 1.0 / std::sqrt(g.degrees[v]);
  for (int i = 0; i < g.nnodes; ++i) {
    bool diag_done = false;
    for (int j : g.adjacency[i]) {
      if (!diag_done && j > i) {
        lap.cols.push_back(i);
        lap.vals.push_back(1.0);
        diag_done = true;
      }
      lap.cols.push_back(j);
      lap.vals.push_back(-dinv_sqrt[i] * dinv_sqrt[j]);
    }
    if (!diag_done) {
      lap.cols.push_back(i);
      lap.vals.push_back(1.0);
    }
    lap.row_ptr.push_back(static_cast<int>(lap.cols.size()));
  }
  return lap;
}

/// Debug dump: one "u v" pair per line.
inline void dump_edges(const LinkageGraph& g, std::ostream& out) {
  for (const auto& [u, v] : g.edge_set()) out << u << ' ' << v << '\n';
}

}  // namespace pbdfs
