// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "pbdfs/mip.hpp"
#include "pbdfs/rng.hpp"

namespace pbdfs {

struct UGraph {
  int nnodes = 0;
  std::vector<std::pair<int, int>> edges;  // u < v, sorted, unique
};

struct CapBid {
  std::vector<int> bundle;  // sorted item indices
  double price = 0.0;
};

/// Erdos-Renyi graph where each pair appears with probability
/// min(1, affinity/(n-1)), i.e. affinity is the target expected degree.
inline UGraph gen_graph(int n, int affinity, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("gen_graph requires n >= 2");
  if (affinity < 1) throw std::invalid_argument("gen_graph requires affinity >= 1");
  const double p = std::min(1.0, static_cast<double>(affinity) / (n - 1));
  std::mt19937_64 rng(seed);
  UGraph g;
  g.nnodes = n;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (detail::uniform01(rng) < p) g.edges.emplace_back(u, v);
  return g;
}

inline std::vector<std::vector<int>> adjacency_lists(const UGraph& g) {
  std::vector<std::vector<int>> adj(g.nnodes);
  for (const auto& [u, v] : g.edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

/// max sum x_v  s.t.  x_u + x_v <= 1 per edge
inline MipInstance formulate_misp(const UGraph& g) {
  MipInstance inst;
  inst.name = "misp";
  inst.sense = Sense::maximize;
  inst.nvars = g.nnodes;
  inst.obj.assign(g.nnodes, 1.0);
  for (const auto& [u, v] : g.edges) {
    ConstraintRow row;
    row.coefs = {{u, 1.0}, {v, 1.0}};
    row.rel = Relation::le;
    row.rhs = 1.0;
    inst.rows.push_back(std::move(row));
  }
  return inst;
}

/// min sum x_v  s.t.  x_v + sum_{u in N(v)} x_u >= 1 per node
inline MipInstance formulate_dsp(const UGraph& g) {
  MipInstance inst;
  inst.name = "dsp";
  inst.sense = Sense::minimize;
  inst.nvars = g.nnodes;
  inst.obj.assign(g.nnodes, 1.0);
  const auto adj = adjacency_lists(g);
  for (int v = 0; v < g.nnodes; ++v) {
    ConstraintRow row;
    std::vector<int> cols = adj[v];
    cols.push_back(v);
    std::sort(cols.begin(), cols.end());
    for (int c : cols) row.coefs.emplace_back(c, 1.0);
    row.rel = Relation::ge;
    row.rhs = 1.0;
    inst.rows.push_back(std::move(row));
  }
  return inst;
}

/// min sum x_v  s.t.  x_u + x_v >= 1 per edge
inline MipInstance formulate_vcp(const UGraph& g) {
  MipInstance inst;
  inst.name = "vcp";
  inst.sense = Sense::minimize;
  inst.nvars = g.nnodes;
  inst.obj.assign(g.nnodes, 1.0);
  for (const auto& [u, v] : g.edges) {
    ConstraintRow row;
    row.coefs = {{u, 1.0}, {v, 1.0}};
    row.rel = Relation::ge;
    row.rhs = 1.0;
    inst.rows.push_back(std::move(row));
  }
  return inst;
}

/// Correlated-bundle bid generator: bundles grow by a weighted random walk
/// over an item compatibility matrix drawn from the seed; bundle size is
/// geometric with mean 5; price scales with bundle size +-20%.
inline std::vector<CapBid> gen_cap_bids(int n_items, int n_bids,
                                        std::uint64_t seed) {
  if (n_items < 1 || n_bids < 1)
    throw std::invalid_argument("gen_cap requires n_items >= 1 and n_bids >= 1");
  std::mt19937_64 rng(seed);
  std::vector<double> compat(static_cast<std::size_t>(n_items) * n_items);
  for (double& w : compat) w = detail::uniform01(rng);

  const double stop_p = 1.0 / 5.0;  // mean bundle size 5
  std::vector<CapBid> bids;
  bids.reserve(n_bids);
  for (int b = 0; b < n_bids; ++b) {
    std::vector<char> in_bundle(n_items, 0);
    int cur = static_cast<int>(detail::uniform01(rng) * n_items);
    if (cur >= n_items) cur = n_items - 1;
    std::vector<int> bundle = {cur};
    in_bundle[cur] = 1;
    while (static_cast<int>(bundle.size()) < n_items &&
           detail::uniform01(rng) >= stop_p) {
      // weighted choice among items not yet in the bundle
      double total = 0.0;
      for (int j = 0; j < n_items; ++j)
        if (!in_bundle[j]) total += compat[static_cast<std::size_t>(cur) * n_items + j];
      double pick = detail::uniform01(rng) * total;
      int next = -1;
      for (int j = 0; j < n_items; ++j) {
        if (in_bundle[j]) continue;
        pick -= compat[static_cast<std::size_t>(cur) * n_items + j];
        next = j;
        if (pick <= 0.0) break;
      }
      if (next < 0) break;
      bundle.push_back(next);
      in_bundle[next] = 1;
      cur = next;
    }
    std::sort(bundle.begin(), bundle.end());
    CapBid bid;
    bid.price = static_cast<double>(bundle.size()) *
                (1.0 + (detail::uniform01(rng) * 0.4 - 0.2)) * 10.0;
    bid.bundle = std::move(bundle);
    bids.push_back(std::move(bid));
  }
  return bids;
}

/// max sum p_i x_i  s.t.  sum_{bids containing item j} x_i <= 1 per item
/// that appears in at least one bundle
inline MipInstance formulate_cap(const std::vector<CapBid>& bids, int n_items) {
  MipInstance inst;
  inst.name = "cap";
  inst.sense = Sense::maximize;
  inst.nvars = static_cast<int>(bids.size());
  inst.obj.reserve(bids.size());
  for (const auto& bid : bids) inst.obj.push_back(bid.price);
  std::vector<std::vector<int>> item_bids(n_items);
  for (int i = 0; i < inst.nvars; ++i)
    for (int j : bids[i].bundle) item_bids[j].push_back(i);
  for (int j = 0; j < n_items; ++j) {
    if (item_bids[j].empty()) continue;
    ConstraintRow row;
    for (int i : item_bids[j]) row.coefs.emplace_back(i, 1.0);
    row.rel = Relation::le;
    row.rhs = 1.0;
    inst.rows.push_back(std::move(row));
  }
  return inst;
}

inline MipInstance gen_cap(int n_items, int n_bids, std::uint64_t seed) {
  return formulate_cap(gen_cap_bids(n_items, n_bids, seed), n_items);
}

}  // namespace pbdfs
