// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "pbdfs/features.hpp"
#include "pbdfs/linkage.hpp"
#include "pbdfs/matrix.hpp"
#include "pbdfs/rng.hpp"

namespace pbdfs {

using ProbabilityVector = std::vector<double>;

constexpr double kProbClamp = 1e-12;

/// GCN per the propagation rule H^{l+1} = act(L H^l W^l + H^l), with the
/// residual applied only where layer input and output widths agree
/// (it is dimensionally impossible at the first and last layer).
/// type == lr degenerates to a single sigmoid layer on raw features.
struct GcnModel {
  enum class Type { gcn, lr };
  Type type = Type::gcn;
  std::vector<int> dims;        // layer widths, weights.size() + 1 entries
  std::vector<Matrix> weights;  // W^l : dims[l] x dims[l+1]

  int nlayers() const { return static_cast<int>(weights.size()); }
  int input_dim() const { return dims.front(); }
};

struct TrainExample {
  NormalizedLaplacian laplacian;
  FeatureMatrix features;  // min-max normalized
  std::vector<std::int8_t> labels;
};

namespace detail {

inline double glorot_limit(int fan_in, int fan_out) {
  return std::sqrt(6.0 / (fan_in + fan_out));
}

inline Matrix init_weight(int in, int out, std::mt19937_64& rng) {
  Matrix w(in, out);
  const double lim = glorot_limit(in, out);
  for (double& v : w.data) v = (uniform01(rng) * 2.0 - 1.0) * lim;
  return w;
}

inline double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

inline bool residual_at(const GcnModel& m, int layer) {
  return m.type == GcnModel::Type::gcn && m.dims[layer] == m.dims[layer + 1];
}

}  // namespace detail

inline GcnModel make_gcn(int nfeat, int hidden, int nlayers, std::uint64_t seed) {
  if (nlayers < 2) throw std::invalid_argument("gcn needs at least 2 layers");
  GcnModel m;
  m.type = GcnModel::Type::gcn;
  m.dims.push_back(nfeat);
  for (int l = 1; l < nlayers; ++l) m.dims.push_back(hidden);
  m.dims.push_back(1);
  std::mt19937_64 rng(seed);
  for (int l = 0; l < nlayers; ++l)
    m.weights.push_back(detail::init_weight(m.dims[l], m.dims[l + 1], rng));
  return m;
}

inline GcnModel make_logreg(int nfeat, std::uint64_t seed) {
  GcnModel m;
  m.type = GcnModel::Type::lr;
  m.dims = {nfeat, 1};
  std::mt19937_64 rng(seed);
  m.weights.push_back(detail::init_weight(nfeat, 1, rng));
  return m;
}

struct ForwardCache {
  std::vector<Matrix> h;   // h[l]: activations entering layer l; h[L]: unused sigmoid input slot
  std::vector<Matrix> lh;  // lh[l] = L * h[l]
  std::vector<Matrix> z;   // z[l]: pre-activation of layer l
};

inline ProbabilityVector gcn_forward(const GcnModel& model,
                                     const NormalizedLaplacian& lap,
                                     const FeatureMatrix& features,
                                     ForwardCache* cache = nullptr) {
  if (features.nfeat() != model.input_dim())
    throw std::invalid_argument("feature width does not match model input");
  if (model.type == GcnModel::Type::gcn && lap.n != features.nvars())
    throw std::invalid_argument("laplacian size does not match feature rows");

  const int L = model.nlayers();
  Matrix h = features.values;
  if (cache) {
    cache->h.clear();
    cache->lh.clear();
    cache->z.clear();
  }
  for (int l = 0; l < L; ++l) {
    Matrix prop = (model.type == GcnModel::Type::gcn) ? spmm(lap, h) : h;
    Matrix z = matmul(prop, model.weights[l]);
    if (detail::residual_at(model, l))
      for (std::size_t i = 0; i < z.data.size(); ++i) z.data[i] += h.data[i];
    if (cache) {
      cache->h.push_back(std::move(h));
      cache->lh.push_back(std::move(prop));
      cache->z.push_back(z);
    }
    h = std::move(z);
    if (l + 1 < L) {
      for (double& v : h.data) v = std::max(v, 0.0);  // ReLU
    } else {
      for (double& v : h.data)
        v = std::clamp(detail::sigmoid(v), kProbClamp, 1.0 - kProbClamp);
    }
  }
  ProbabilityVector p(h.data.begin(), h.data.end());
  return p;
}

/// Mean binary cross-entropy over all variables of the batch (Eq-3 style
/// normalization by the total variable count).
inline double cross_entropy(const ProbabilityVector& p,
                            const std::vector<std::int8_t>& y) {
  if (p.size() != y.size()) throw std::invalid_argument("length mismatch");
  double loss = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double q = std::clamp(p[i], kProbClamp, 1.0 - kProbClamp);
    loss += y[i] ? -std::log(q) : -std::log(1.0 - q);
  }
  return loss / static_cast<double>(p.size());
}

inline double cross_entropy_batch(const std::vector<ProbabilityVector>& ps,
                                  const std::vector<std::vector<std::int8_t>>& ys) {
  double loss = 0.0;
  std::size_t total = 0;
  for (std::size_t k = 0; k < ps.size(); ++k) {
    loss += cross_entropy(ps[k], ys[k]) * static_cast<double>(ps[k].size());
    total += ps[k].size();
  }
  return total ? loss / static_cast<double>(total) : 0.0;
}

/// Exact gradients of cross_entropy(gcn_forward(.)) w.r.t. every W^l,
/// for one example (mean loss over its variables).
inline std::vector<Matrix> gcn_gradients(const GcnModel& model,
                                         const TrainExample& ex,
                                         ProbabilityVector* out_p = nullptr) {
  ForwardCache cache;
  ProbabilityVector p = gcn_forward(model, ex.laplacian, ex.features, &cache);
  const int L = model.nlayers();
  const int n = ex.features.nvars();
  const double inv_n = 1.0 / static_cast<double>(n);

  std::vector<Matrix> grads(L);
  // sigmoid + BCE: dZ = (p - y) / n
  Matrix dz(n, 1);
  for (int i = 0; i < n; ++i) dz(i, 0) = (p[i] - ex.labels[i]) * inv_n;

  for (int l = L - 1; l >= 0; --l) {
    grads[l] = matmul_at_b(cache.lh[l], dz);
    if (l == 0) break;
    Matrix dh = matmul_a_bt(dz, model.weights[l]);
    if (model.type == GcnModel::Type::gcn) dh = spmm(ex.laplacian, dh);
    if (detail::residual_at(model, l))
      for (std::size_t i = 0; i < dh.data.size(); ++i) dh.data[i] += dz.data[i];
    // backprop through the ReLU of layer l-1
    Matrix next(dh.rows, dh.cols);
    for (std::size_t i = 0; i < dh.data.size(); ++i)
      next.data[i] = cache.z[l - 1].data[i] > 0.0 ? dh.data[i] : 0.0;
    dz = std::move(next);
  }
  if (out_p) *out_p = std::move(p);
  return grads;
}

struct TrainConfig {
  double learning_rate = 1e-2;
  int epochs = 200;
  std::uint64_t seed = 0;
  int validation_count = 0;  // last k examples held out; 0 keeps the final model
};

/// Sequential SGD, one gradient step per instance graph, shuffled per epoch.
inline GcnModel train(GcnModel model, const std::vector<TrainExample>& dataset,
                      const TrainConfig& cfg,
                      std::vector<double>* epoch_losses = nullptr) {
  if (dataset.empty()) throw std::invalid_argument("empty training dataset");
  const int nval = std::min(cfg.validation_count, static_cast<int>(dataset.size()) - 1);
  const int ntrain = static_cast<int>(dataset.size()) - nval;

  std::mt19937_64 rng(cfg.seed);
  std::vector<int> order(ntrain);
  std::iota(order.begin(), order.end(), 0);

  GcnModel best = model;
  double best_val = std::numeric_limits<double>::infinity();
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double loss_sum = 0.0;
    std::size_t loss_n = 0;
    for (int idx : order) {
      const TrainExample& ex = dataset[idx];
      ProbabilityVector p;
      auto grads = gcn_gradients(model, ex, &p);
      loss_sum += cross_entropy(p, ex.labels) * static_cast<double>(p.size());
      loss_n += p.size();
      for (int l = 0; l < model.nlayers(); ++l)
        for (std::size_t i = 0; i < grads[l].data.size(); ++i)
          model.weights[l].data[i] -= cfg.learning_rate * grads[l].data[i];
    }
    if (epoch_losses)
      epoch_losses->push_back(loss_n ? loss_sum / static_cast<double>(loss_n) : 0.0);
    if (nval > 0) {
      std::vector<ProbabilityVector> ps;
      std::vector<std::vector<std::int8_t>> ys;
      for (int k = ntrain; k < static_cast<int>(dataset.size()); ++k) {
        ps.push_back(gcn_forward(model, dataset[k].laplacian, dataset[k].features));
        ys.push_back(dataset[k].labels);
      }
      const double val = cross_entropy_batch(ps, ys);
      if (val < best_val) {
        best_val = val;
        best = model;
      }
    }
  }
  return nval > 0 ? best : model;
}

/// AP over descending-score ranks with stable index tie-break.
inline double average_precision(const ProbabilityVector& p,
                                const std::vector<std::int8_t>& y) {
  if (p.size() != y.size()) throw std::invalid_argument("length mismatch");
  int npos = 0;
  for (auto v : y) npos += v;
  if (npos == 0) throw std::invalid_argument("average_precision needs a positive label");
  std::vector<int> order(p.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return p[a] > p[b]; });
  double ap = 0.0;
  int tp = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (!y[order[k]]) continue;
    ++tp;
    const double precision = static_cast<double>(tp) / static_cast<double>(k + 1);
    ap += precision / static_cast<double>(npos);  // delta recall = 1/npos
  }
  return ap;
}

inline nlohmann::json model_to_json(const GcnModel& m) {
  nlohmann::json j;
  j["type"] = m.type == GcnModel::Type::gcn ? "gcn" : "lr";
  j["dims"] = m.dims;
  j["version"] = 1;
  nlohmann::json ws = nlohmann::json::array();
  for (const auto& w : m.weights) ws.push_back(w.data);
  j["weights"] = std::move(ws);
  return j;
}

inline GcnModel model_from_json(const nlohmann::json& j) {
  if (j.at("version").get<int>() != 1)
    throw std::runtime_error("unsupported model file version");
  GcnModel m;
  const std::string type = j.at("type").get<std::string>();
  if (type == "gcn")
    m.type = GcnModel::Type::gcn;
  else if (type == "lr")
    m.type = GcnModel::Type::lr;
  else
    throw std::runtime_error("unknown model type: " + type);
  m.dims = j.at("dims").get<std::vector<int>>();
  if (m.dims.size() < 2) throw std::runtime_error("corrupt model dims");
  const auto& ws = j.at("weights");
  if (ws.size() + 1 != m.dims.size())
    throw std::runtime_error("weight count does not match dims");
  for (std::size_t l = 0; l < ws.size(); ++l) {
    Matrix w(m.dims[l], m.dims[l + 1]);
    auto data = ws[l].get<std::vector<double>>();
    if (data.size() != w.data.size())
      throw std::runtime_error("weight matrix size mismatch");
    w.data = std::move(data);
    m.weights.push_back(std::move(w));
  }
  return m;
}

inline void save_model(const GcnModel& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << model_to_json(m).dump() << '\n';
}

inline GcnModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception&) {
    throw std::runtime_error("malformed model file: " + path);
  }
  return model_from_json(j);
}

}  // namespace pbdfs
