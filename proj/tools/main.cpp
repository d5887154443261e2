// SPDX-License-Identifier: Apache-2.0
//
// pbdfs: dataset generation, exact labeling, model training, prediction,
// ranking evaluation, heuristic runs and report aggregation for the
// prediction-guided DFS primal heuristic.

#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pbdfs/experiment.hpp"

namespace {

struct Cli {
  std::string config_path;
  std::string problem, scale, model, method, dataset_dir, variant;
  long seed = -1;
};

void add_overrides(CLI::App* sub, Cli& cli) {
  sub->add_option("--config", cli.config_path, "JSON config file");
  sub->add_option("--problem", cli.problem, "misp|dsp|vcp|cap");
  sub->add_option("--scale", cli.scale, "small|medium|large");
  sub->add_option("--model", cli.model, "gcn|lr");
  sub->add_option("--method", cli.method,
                  "pbdfs-gcn|pbdfs-lr|pbdfs-oracle|dfs|rounding");
  sub->add_option("--dataset-dir", cli.dataset_dir, "dataset root directory");
  sub->add_option("--score-variant", cli.variant, "max_p_1mp|p|one_minus_p");
  sub->add_option("--seed", cli.seed, "base random seed");
}

pbdfs::ExperimentConfig resolve(const Cli& cli) {
  pbdfs::ExperimentConfig cfg = cli.config_path.empty()
                                    ? pbdfs::ExperimentConfig{}
                                    : pbdfs::load_config(cli.config_path);
  if (!cli.problem.empty()) cfg.problem = cli.problem;
  if (!cli.scale.empty()) cfg.scale = cli.scale;
  if (!cli.model.empty()) cfg.model = cli.model;
  if (!cli.method.empty()) cfg.method = cli.method;
  if (!cli.dataset_dir.empty()) cfg.dataset_dir = cli.dataset_dir;
  if (!cli.variant.empty()) cfg.variant = pbdfs::parse_variant(cli.variant);
  if (cli.seed >= 0) {
    cfg.seed = static_cast<std::uint64_t>(cli.seed);
    cfg.train.seed = cfg.seed;
  }
  pbdfs::validate_config(cfg);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ML-guided primal heuristic pipeline for binary MIPs"};
  app.require_subcommand(1);
  Cli cli;

  auto* gen = app.add_subcommand("gen", "generate instances for every scale");
  auto* label = app.add_subcommand("label", "solve instances exactly for labels");
  auto* train = app.add_subcommand("train", "train the predictor on labeled data");
  auto* predict = app.add_subcommand("predict", "write per-instance probabilities");
  auto* eval_ml = app.add_subcommand("eval-ml", "average precision on the test split");
  auto* heuristic = app.add_subcommand("heuristic", "run a primal heuristic method");
  auto* report = app.add_subcommand("report", "aggregate heuristic results");
  for (auto* sub : {gen, label, train, predict, eval_ml, heuristic, report})
    add_overrides(sub, cli);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // usage errors exit 2
  }

  try {
    const pbdfs::ExperimentConfig cfg = resolve(cli);
    if (gen->parsed()) {
      std::cout << "gen: wrote " << pbdfs::cmd_gen(cfg) << " instances under "
                << cfg.dataset_dir << "/" << cfg.problem << "\n";
    } else if (label->parsed()) {
      std::cout << "label: solved " << pbdfs::cmd_label(cfg) << " instances ("
                << cfg.scale << ")\n";
    } else if (train->parsed()) {
      pbdfs::cmd_train(cfg);
      std::cout << "train: saved " << cfg.model << " model\n";
    } else if (predict->parsed()) {
      std::cout << "predict: wrote " << pbdfs::cmd_predict(cfg)
                << " probability files (" << cfg.scale << ")\n";
    } else if (eval_ml->parsed()) {
      std::cout << "eval-ml: mean AP " << pbdfs::cmd_eval_ml(cfg) << " ("
                << cfg.model << ", " << cfg.scale << ")\n";
    } else if (heuristic->parsed()) {
      auto runs = pbdfs::cmd_heuristic(cfg);
      const auto row = pbdfs::aggregate_runs(cfg.method, runs);
      std::cout << "heuristic " << row.method << ": objective "
                << row.best_objective << ", time " << row.best_time_s << "s, "
                << row.n_no_feasible << "/" << row.calls << " without feasible\n";
    } else if (report->parsed()) {
      pbdfs::cmd_report(cfg);
    }
  } catch (const pbdfs::ConfigError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
