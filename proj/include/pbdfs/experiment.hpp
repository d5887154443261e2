// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "pbdfs/features.hpp"
#include "pbdfs/graphs.hpp"
#include "pbdfs/linkage.hpp"
#include "pbdfs/mip.hpp"
#include "pbdfs/model.hpp"
#include "pbdfs/search.hpp"

namespace pbdfs {

/// Bad user input (unknown tokens, malformed config): exit code 2 territory.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ScaleSpec {
  int n_min = 0;       // graph nodes (misp/dsp/vcp) or auction bids (cap)
  int n_max = 0;
  int cap_items = 0;   // cap only
};

struct ExperimentConfig {
  std::string dataset_dir = "dataset";
  std::string problem = "misp";  // misp | dsp | vcp | cap
  std::string scale = "small";   // small | medium | large
  ScaleSpec small{50, 100, 20};
  ScaleSpec medium{120, 160, 30};
  ScaleSpec large{200, 200, 40};
  int train_count = 100;
  int test_count = 20;
  int affinity = 4;
  std::string model = "gcn";  // gcn | lr
  int gcn_hidden = 32;
  int gcn_layers = 4;
  TrainConfig train;
  ScoreVariant variant = ScoreVariant::max_p_1mp;
  Termination termination = Termination::first_feasible();
  std::string method = "pbdfs-gcn";  // heuristic command
  std::uint64_t seed = 1;
};

inline ScoreVariant parse_variant(const std::string& tok) {
  if (tok == "max_p_1mp") return ScoreVariant::max_p_1mp;
  if (tok == "p") return ScoreVariant::p;
  if (tok == "one_minus_p") return ScoreVariant::one_minus_p;
  throw ConfigError("unknown score variant: " + tok);
}

inline Termination parse_termination(const nlohmann::json& j) {
  const std::string kind = j.value("kind", "first_feasible");
  if (kind == "first_feasible") return Termination::first_feasible();
  if (kind == "time_limit") return Termination::time_limit(j.at("seconds").get<double>());
  if (kind == "node_limit") return Termination::node_limit(j.at("nodes").get<long>());
  if (kind == "none") return Termination::none();
  throw ConfigError("unknown termination kind: " + kind);
}

inline ScaleSpec parse_scale_spec(const nlohmann::json& j, const ScaleSpec& dflt) {
  ScaleSpec s = dflt;
  s.n_min = j.value("n_min", s.n_min);
  s.n_max = j.value("n_max", s.n_max);
  s.cap_items = j.value("cap_items", s.cap_items);
  return s;
}

inline void validate_config(const ExperimentConfig& cfg) {
  if (cfg.problem != "misp" && cfg.problem != "dsp" && cfg.problem != "vcp" &&
      cfg.problem != "cap")
    throw ConfigError("unknown problem: " + cfg.problem);
  if (cfg.scale != "small" && cfg.scale != "medium" && cfg.scale != "large")
    throw ConfigError("unknown scale: " + cfg.scale);
  if (cfg.model != "gcn" && cfg.model != "lr")
    throw ConfigError("unknown model: " + cfg.model);
  if (cfg.train_count < 1 || cfg.test_count < 1)
    throw ConfigError("train/test counts must be >= 1");
  if (!(cfg.small.n_min < cfg.medium.n_min && cfg.medium.n_min < cfg.large.n_min) ||
      !(cfg.small.n_max <= cfg.medium.n_max && cfg.medium.n_max <= cfg.large.n_max))
    throw ConfigError("scales must be strictly ordered small < medium < large");
}

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig cfg;
  cfg.dataset_dir = j.value("dataset_dir", cfg.dataset_dir);
  cfg.problem = j.value("problem", cfg.problem);
  cfg.scale = j.value("scale", cfg.scale);
  if (j.contains("sizes")) {
    const auto& s = j.at("sizes");
    if (s.contains("small")) cfg.small = parse_scale_spec(s.at("small"), cfg.small);
    if (s.contains("medium")) cfg.medium = parse_scale_spec(s.at("medium"), cfg.medium);
    if (s.contains("large")) cfg.large = parse_scale_spec(s.at("large"), cfg.large);
  }
  cfg.train_count = j.value("train_count", cfg.train_count);
  cfg.test_count = j.value("test_count", cfg.test_count);
  cfg.affinity = j.value("affinity", cfg.affinity);
  cfg.model = j.value("model", cfg.model);
  cfg.gcn_hidden = j.value("gcn_hidden", cfg.gcn_hidden);
  cfg.gcn_layers = j.value("gcn_layers", cfg.gcn_layers);
  cfg.train.learning_rate = j.value("learning_rate", cfg.train.learning_rate);
  cfg.train.epochs = j.value("epochs", cfg.train.epochs);
  cfg.train.validation_count = j.value("validation_count", cfg.train.validation_count);
  if (j.contains("score_variant"))
    cfg.variant = parse_variant(j.at("score_variant").get<std::string>());
  if (j.contains("termination")) cfg.termination = parse_termination(j.at("termination"));
  cfg.method = j.value("method", cfg.method);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.train.seed = cfg.seed;
  validate_config(cfg);
  return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("malformed config " + path + ": " + e.what());
  }
  return config_from_json(j);
}

namespace detail {

inline const ScaleSpec& scale_spec(const ExperimentConfig& cfg, const std::string& scale) {
  if (scale == "small") return cfg.small;
  if (scale == "medium") return cfg.medium;
  return cfg.large;
}

inline int scale_id(const std::string& scale) {
  return scale == "small" ? 0 : scale == "medium" ? 1 : 2;
}

// Unique, stable per-instance seed: scales never collide for sane counts.
inline std::uint64_t instance_seed(const ExperimentConfig& cfg,
                                   const std::string& scale, int index) {
  return cfg.seed + 1000003ULL * static_cast<std::uint64_t>(scale_id(scale)) +
         static_cast<std::uint64_t>(index);
}

inline std::filesystem::path scale_dir(const ExperimentConfig& cfg,
                                       const std::string& scale) {
  return std::filesystem::path(cfg.dataset_dir) / cfg.problem / scale;
}

inline MipInstance generate_instance(const ExperimentConfig& cfg, const ScaleSpec& spec,
                                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int span = spec.n_max - spec.n_min + 1;
  const int n = spec.n_min + static_cast<int>(rng() % static_cast<unsigned>(span));
  if (cfg.problem == "cap") return gen_cap(spec.cap_items, n, seed);
  UGraph g = gen_graph(n, cfg.affinity, seed);
  if (cfg.problem == "misp") return formulate_misp(g);
  if (cfg.problem == "dsp") return formulate_dsp(g);
  return formulate_vcp(g);
}

// All instance seeds present in a scale directory, ascending.
inline std::vector<std::uint64_t> list_instances(const std::filesystem::path& dir) {
  std::vector<std::uint64_t> seeds;
  if (!std::filesystem::exists(dir)) return seeds;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.size() < 6 || name.substr(name.size() - 5) != ".json") continue;
    const std::string stem = name.substr(0, name.size() - 5);
    if (stem.find('.') != std::string::npos) continue;  // meta/sol/pred sidecars
    if (stem.empty() || stem.find_first_not_of("0123456789") != std::string::npos)
      continue;
    seeds.push_back(std::stoull(stem));
  }
  std::sort(seeds.begin(), seeds.end());
  return seeds;
}

inline std::string split_of(const std::filesystem::path& dir, std::uint64_t seed) {
  std::ifstream in(dir / (std::to_string(seed) + ".meta.json"));
  if (!in) return "test";
  nlohmann::json j;
  in >> j;
  return j.value("split", "test");
}

inline std::vector<std::uint64_t> split_instances(const std::filesystem::path& dir,
                                                  const std::string& split) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t s : list_instances(dir))
    if (split_of(dir, s) == split) out.push_back(s);
  return out;
}

struct Label {
  double objective = 0.0;
  std::vector<std::int8_t> values;
  bool proved_optimal = false;
};

inline std::optional<Label> read_label(const std::filesystem::path& dir,
                                       std::uint64_t seed) {
  std::ifstream in(dir / (std::to_string(seed) + ".sol.json"));
  if (!in) return std::nullopt;
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception&) {
    throw std::runtime_error("malformed label file for seed " + std::to_string(seed));
  }
  Label lab;
  lab.objective = j.at("objective").get<double>();
  for (int v : j.at("values").get<std::vector<int>>())
    lab.values.push_back(static_cast<std::int8_t>(v));
  lab.proved_optimal = j.at("proved_optimal").get<bool>();
  return lab;
}

inline std::filesystem::path model_path(const ExperimentConfig& cfg) {
  return std::filesystem::path(cfg.dataset_dir) / cfg.problem /
         ("model-" + cfg.model + ".json");
}

struct PredictTimer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double stop() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

// Features + forward pass for one instance; returns probabilities and
// the wall time spent (the prediction time the report adds to best-time).
inline ProbabilityVector predict_instance(const GcnModel& model,
                                          const MipInstance& inst,
                                          double* predict_time_s) {
  PredictTimer timer;
  RootStats rs = compute_root_stats(inst);
  FeatureMatrix fm = minmax_normalize(extract_features(inst, rs));
  NormalizedLaplacian lap;
  if (model.type == GcnModel::Type::gcn)
    lap = normalized_laplacian(build_linkage_graph(inst));
  ProbabilityVector p = gcn_forward(model, lap, fm);
  if (predict_time_s) *predict_time_s = timer.stop();
  return p;
}

}  // namespace detail

/// Geometric mean of (x_i + shift) minus shift; the report aggregation.
inline double shifted_geomean(const std::vector<double>& xs, double shift = 1.0) {
  if (xs.empty()) return 0.0;
  double log_sum = 0.0;
  for (double x : xs) {
    if (x + shift <= 0.0) throw std::invalid_argument("shifted_geomean needs x > -shift");
    log_sum += std::log(x + shift);
  }
  return std::exp(log_sum / static_cast<double>(xs.size())) - shift;
}

struct ReportRow {
  std::string method;
  double best_objective = 0.0;  // shifted geomean over feasible instances
  double best_time_s = 0.0;     // shifted geomean, prediction time included
  int n_no_feasible = 0;
  int calls = 0;  // 1 per instance for standalone runs
  double total_time_s = 0.0;
};

/// gen: write instances + metadata sidecars for every scale.
/// Small holds train_count + test_count (split recorded in metadata);
/// medium and large hold test_count test instances each.
inline int cmd_gen(const ExperimentConfig& cfg) {
  int written = 0;
  for (const std::string& scale : {"small", "medium", "large"}) {
    const auto dir = detail::scale_dir(cfg, scale);
    std::filesystem::create_directories(dir);
    const ScaleSpec& spec = detail::scale_spec(cfg, scale);
    const int count = (scale == "small" ? cfg.train_count : 0) + cfg.test_count;
    for (int k = 0; k < count; ++k) {
      const std::uint64_t seed = detail::instance_seed(cfg, scale, k);
      MipInstance inst = detail::generate_instance(cfg, spec, seed);
      write_instance(inst, (dir / (std::to_string(seed) + ".json")).string());
      nlohmann::json meta = {
          {"problem", cfg.problem},
          {"scale", scale},
          {"seed", seed},
          {"affinity", cfg.affinity},
          {"n_min", spec.n_min},
          {"n_max", spec.n_max},
          {"split", (scale == "small" && k < cfg.train_count) ? "train" : "test"}};
      if (cfg.problem == "cap") meta["cap_items"] = spec.cap_items;
      std::ofstream out(dir / (std::to_string(seed) + ".meta.json"));
      out << meta.dump(2) << '\n';
      ++written;
    }
  }
  return written;
}

/// label: solve every unlabeled instance of cfg.scale exactly and write
/// {objective, values, proved_optimal}. Already-labeled files are skipped.
inline int cmd_label(const ExperimentConfig& cfg,
                     const Termination& limits = Termination::none(),
                     std::ostream& log = std::cerr) {
  const auto dir = detail::scale_dir(cfg, cfg.scale);
  if (!std::filesystem::exists(dir))
    throw std::runtime_error("no instances at " + dir.string() + "; run gen first");
  int labeled = 0;
  for (std::uint64_t seed : detail::list_instances(dir)) {
    const auto sol_path = dir / (std::to_string(seed) + ".sol.json");
    if (std::filesystem::exists(sol_path)) {
      log << "label: skipping already-labeled " << seed << "\n";
      continue;
    }
    MipInstance inst = read_instance((dir / (std::to_string(seed) + ".json")).string());
    ExactResult res = solve_exact(inst, limits);
    nlohmann::json j;
    j["objective"] = res.objective;
    std::vector<int> values;
    if (res.solution)
      for (int i = 0; i < inst.nvars; ++i) values.push_back(res.solution->values[i]);
    j["values"] = values;
    j["proved_optimal"] = res.proved_optimal;
    std::ofstream out(sol_path);
    out << j.dump() << '\n';
    ++labeled;
  }
  return labeled;
}

/// train: fit the configured model on the proved-optimal labeled train
/// split of the small scale; saves the model next to the dataset.
inline void cmd_train(const ExperimentConfig& cfg) {
  const auto dir = detail::scale_dir(cfg, "small");
  std::vector<TrainExample> data;
  for (std::uint64_t seed : detail::split_instances(dir, "train")) {
    auto lab = detail::read_label(dir, seed);
    if (!lab || !lab->proved_optimal) continue;  // unproven labels are excluded
    MipInstance inst = read_instance((dir / (std::to_string(seed) + ".json")).string());
    TrainExample ex;
    ex.features = minmax_normalize(extract_features(inst, compute_root_stats(inst)));
    if (cfg.model == "gcn")
      ex.laplacian = normalized_laplacian(build_linkage_graph(inst));
    ex.labels = lab->values;
    data.push_back(std::move(ex));
  }
  if (data.empty())
    throw std::runtime_error("no proved-optimal labeled training instances; run label");
  const int nfeat = data.front().features.nfeat();
  GcnModel model = cfg.model == "gcn"
                       ? make_gcn(nfeat, cfg.gcn_hidden, cfg.gcn_layers, cfg.seed)
                       : make_logreg(nfeat, cfg.seed);
  model = train(std::move(model), data, cfg.train);
  save_model(model, detail::model_path(cfg).string());
}

/// predict: write per-instance probability files for the test split of
/// cfg.scale, with the measured prediction wall time.
inline int cmd_predict(const ExperimentConfig& cfg) {
  GcnModel model = load_model(detail::model_path(cfg).string());
  const auto dir = detail::scale_dir(cfg, cfg.scale);
  int written = 0;
  for (std::uint64_t seed : detail::split_instances(dir, "test")) {
    MipInstance inst = read_instance((dir / (std::to_string(seed) + ".json")).string());
    double ptime = 0.0;
    ProbabilityVector p = detail::predict_instance(model, inst, &ptime);
    nlohmann::json j = {{"p", p}, {"predict_time_s", ptime}};
    std::ofstream out(dir / (std::to_string(seed) + ".pred." + cfg.model + ".json"));
    out << j.dump() << '\n';
    ++written;
  }
  if (written == 0) throw std::runtime_error("no test instances to predict");
  return written;
}

/// eval-ml: per-instance AP against the labels on the test split of
/// cfg.scale; CSV of rows plus a mean row. Returns the mean AP.
inline double cmd_eval_ml(const ExperimentConfig& cfg) {
  GcnModel model = load_model(detail::model_path(cfg).string());
  const auto dir = detail::scale_dir(cfg, cfg.scale);
  std::ofstream csv(std::filesystem::path(cfg.dataset_dir) / cfg.problem /
                    ("eval-" + cfg.model + "-" + cfg.scale + ".csv"));
  csv << "seed,ap\n";
  std::vector<double> aps;
  for (std::uint64_t seed : detail::split_instances(dir, "test")) {
    auto lab = detail::read_label(dir, seed);
    if (!lab || !lab->proved_optimal) continue;
    MipInstance inst = read_instance((dir / (std::to_string(seed) + ".json")).string());
    ProbabilityVector p = detail::predict_instance(model, inst, nullptr);
    const double ap = average_precision(p, lab->values);
    csv << seed << ',' << ap << '\n';
    aps.push_back(ap);
  }
  if (aps.empty()) throw std::runtime_error("no labeled test instances; run label");
  double mean = 0.0;
  for (double a : aps) mean += a;
  mean /= static_cast<double>(aps.size());
  csv << "mean," << mean << '\n';
  return mean;
}

struct HeuristicRun {
  std::uint64_t seed = 0;
  bool feasible = false;
  double best_objective = 0.0;
  double best_time_s = 0.0;
  double predict_time_s = 0.0;
  long nodes = 0;
  long lp_solves = 0;
  long backtracks = 0;
  bool proved_optimal = false;
};

namespace detail {

inline HeuristicRun run_heuristic_on(const ExperimentConfig& cfg,
                                     const std::filesystem::path& dir,
                                     std::uint64_t seed, const GcnModel* model) {
  MipInstance inst = read_instance((dir / (std::to_string(seed) + ".json")).string());
  HeuristicRun run;
  run.seed = seed;
  SearchResult res;
  if (cfg.method == "rounding") {
    PredictTimer timer;
    auto inc = lp_rounding(inst);
    res.stats.wall_time_s = timer.stop();
    if (inc) {
      res.stats.found = true;
      res.stats.best_objective = inc->objective;
      res.stats.best_time_s = inc->found_at;
      res.trajectory.events.push_back({inc->found_at, inc->objective, "incumbent"});
      res.trajectory.events.push_back({res.stats.wall_time_s, inc->objective, "end"});
      res.incumbent = std::move(inc);
    }
    res.stats.nodes = 1;
    res.stats.lp_solves = 1;
  } else if (cfg.method == "dfs") {
    res = baseline_dfs(inst, cfg.termination);
  } else {
    ProbabilityVector probs;
    if (cfg.method == "pbdfs-oracle") {
      auto lab = read_label(dir, seed);
      if (!lab || !lab->proved_optimal)
        throw std::runtime_error("pbdfs-oracle needs proved-optimal labels; run label");
      probs.assign(lab->values.begin(), lab->values.end());
    } else {
      probs = predict_instance(*model, inst, &run.predict_time_s);
    }
    res = pb_dfs(inst, probs, cfg.variant, cfg.termination);
  }
  run.feasible = res.stats.found;
  run.best_objective = res.stats.best_objective;
  run.best_time_s = res.stats.best_time_s;
  run.nodes = res.stats.nodes;
  run.lp_solves = res.stats.lp_solves;
  run.backtracks = res.stats.backtracks;
  run.proved_optimal = res.stats.proved_optimal;
  std::ofstream traj(dir / (std::to_string(seed) + "." + cfg.method + ".traj.csv"));
  write_trajectory_csv(res.trajectory, traj);
  return run;
}

}  // namespace detail

/// heuristic: run cfg.method over the test split of cfg.scale; writes one
/// trajectory CSV per instance plus a per-instance result CSV consumed by
/// cmd_report. Returns the raw runs.
inline std::vector<HeuristicRun> cmd_heuristic(const ExperimentConfig& cfg) {
  if (cfg.method != "pbdfs-gcn" && cfg.method != "pbdfs-lr" &&
      cfg.method != "pbdfs-oracle" && cfg.method != "dfs" && cfg.method != "rounding")
    throw ConfigError("unknown heuristic method: " + cfg.method);
  std::optional<GcnModel> model;
  if (cfg.method == "pbdfs-gcn" || cfg.method == "pbdfs-lr") {
    ExperimentConfig mc = cfg;
    mc.model = cfg.method == "pbdfs-gcn" ? "gcn" : "lr";
    model = load_model(detail::model_path(mc).string());
  }
  const auto dir = detail::scale_dir(cfg, cfg.scale);
  std::vector<HeuristicRun> runs;
  for (std::uint64_t seed : detail::split_instances(dir, "test"))
    runs.push_back(
        detail::run_heuristic_on(cfg, dir, seed, model ? &*model : nullptr));
  if (runs.empty()) throw std::runtime_error("no test instances; run gen first");

  std::ofstream csv(std::filesystem::path(cfg.dataset_dir) / cfg.problem /
                    (cfg.scale + "-" + cfg.method + ".csv"));
  csv << "seed,feasible,best_objective,best_time_s,predict_time_s,nodes,lp_solves,"
         "backtracks,proved_optimal\n";
  for (const auto& r : runs)
    csv << r.seed << ',' << (r.feasible ? 1 : 0) << ',' << r.best_objective << ','
        << r.best_time_s << ',' << r.predict_time_s << ',' << r.nodes << ','
        << r.lp_solves << ',' << r.backtracks << ',' << (r.proved_optimal ? 1 : 0)
        << '\n';
  return runs;
}

/// Pure aggregation of per-instance runs into one report row; prediction
/// time is added to the best-solution time before the geomean.
inline ReportRow aggregate_runs(const std::string& method,
                                const std::vector<HeuristicRun>& runs) {
  ReportRow row;
  row.method = method;
  row.calls = static_cast<int>(runs.size());
  std::vector<double> objs, times;
  for (const auto& r : runs) {
    row.total_time_s += r.best_time_s + r.predict_time_s;
    if (!r.feasible) {
      ++row.n_no_feasible;
      continue;
    }
    objs.push_back(r.best_objective);
    times.push_back(r.best_time_s + r.predict_time_s);
  }
  row.best_objective = shifted_geomean(objs);
  row.best_time_s = shifted_geomean(times);
  return row;
}

namespace detail {

inline std::vector<HeuristicRun> read_runs_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path.string());
  std::vector<HeuristicRun> runs;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    HeuristicRun r;
    int feas = 0, proved = 0;
    char c;
    std::istringstream row(line);
    row >> r.seed >> c >> feas >> c >> r.best_objective >> c >> r.best_time_s >> c >>
        r.predict_time_s >> c >> r.nodes >> c >> r.lp_solves >> c >> r.backtracks >>
        c >> proved;
    if (row.fail()) throw std::runtime_error("malformed results row: " + line);
    r.feasible = feas != 0;
    r.proved_optimal = proved != 0;
    runs.push_back(r);
  }
  return runs;
}

}  // namespace detail

/// report: aggregate every `{scale}-{method}.csv` under the problem dir
/// into one row per method; writes `report-{scale}.csv` and returns rows.
inline std::vector<ReportRow> cmd_report(const ExperimentConfig& cfg,
                                         std::ostream& out = std::cout) {
  const auto problem_dir = std::filesystem::path(cfg.dataset_dir) / cfg.problem;
  if (!std::filesystem::exists(problem_dir))
    throw std::runtime_error("no results under " + problem_dir.string());
  std::map<std::string, std::vector<HeuristicRun>> by_method;
  const std::string prefix = cfg.scale + "-";
  for (const auto& entry : std::filesystem::directory_iterator(problem_dir)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind(prefix, 0) != 0 || name.substr(name.size() - 4) != ".csv") continue;
    const std::string method = name.substr(prefix.size(), name.size() - prefix.size() - 4);
    by_method[method] = detail::read_runs_csv(entry.path());
  }
  if (by_method.empty())
    throw std::runtime_error("no heuristic results for scale " + cfg.scale);
  std::vector<ReportRow> rows;
  std::ofstream csv(problem_dir / ("report-" + cfg.scale + ".csv"));
  csv << "method,best_objective,best_time_s,n_no_feasible,calls,total_time_s\n";
  out << "method best_objective best_time_s n_no_feasible calls total_time_s\n";
  for (const auto& [method, runs] : by_method) {
    ReportRow row = aggregate_runs(method, runs);
    csv << row.method << ',' << row.best_objective << ',' << row.best_time_s << ','
        << row.n_no_feasible << ',' << row.calls << ',' << row.total_time_s << '\n';
    out << row.method << ' ' << row.best_objective << ' ' << row.best_time_s << ' '
        << row.n_no_feasible << ' ' << row.calls << ' ' << row.total_time_s << '\n';
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace pbdfs
