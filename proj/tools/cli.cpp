// Copyright 2026 The qsvmperf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qsvm/classifier.hpp"
#include "qsvm/dataset.hpp"
#include "qsvm/experiments.hpp"
#include "qsvm/model_io.hpp"
#include "qsvm/trainer.hpp"

namespace qsvm::cli {
namespace {

struct ChainFlags {
  int n = 6;
  double mu0 = 1.8;
  int kj = 1;
  int kd = 9;
  double gamma = 0.2;

  ChainConfig config() const {
    ChainConfig c;
    c.num_spins = n;
    c.mu0 = mu0;
    c.k_coupling = kj;
    c.k_transverse = kd;
    c.field = gamma;
    return c;
  }
};

struct TrainFlags {
  double C = 1e4;
  double eps = 1e-2;
  double delta = 0.1;
  int tmax = 50;
  std::string oracle = "gaussian";

  TrainConfig config(int threads) const {
    TrainConfig c;
    c.C = C;
    c.eps = eps;
    c.delta = delta;
    c.t_max = tmax;
    c.threads = threads;
    return c;
  }
  OracleMode mode() const { return oracle == "exact" ? OracleMode::exact : OracleMode::gaussian; }
};

void add_chain_flags(CLI::App* app, ChainFlags& f) {
  app->add_option("--n", f.n, "number of spins")->check(CLI::Range(2, 10));
  app->add_option("--mu0", f.mu0, "magnetization threshold")->check(CLI::PositiveNumber);
  app->add_option("--kj", f.kj, "coupling profile wave number");
  app->add_option("--kd", f.kd, "transverse profile wave number");
  app->add_option("--gamma", f.gamma, "longitudinal field");
}

void add_train_flags(CLI::App* app, TrainFlags& f, const std::string& default_oracle) {
  f.oracle = default_oracle;
  app->add_option("--C", f.C, "SVM regularization")->check(CLI::PositiveNumber);
  app->add_option("--eps", f.eps, "outer tolerance")->check(CLI::PositiveNumber);
  app->add_option("--delta", f.delta, "failure probability")
      ->check(CLI::Range(0.0, 1.0));
  app->add_option("--tmax", f.tmax, "iteration cap")->check(CLI::PositiveNumber);
  app->add_option("--oracle", f.oracle, "inner-product oracle")
      ->check(CLI::IsMember({"exact", "gaussian"}));
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  return out;
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string general(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Structural SVM training on spin-chain ground-state data"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  int threads = 1;
  std::string out_path;
  std::string data_path;
  std::string model_path;
  ChainFlags chain;
  TrainFlags trainf;

  std::size_t gen_m = 100;
  double balance_limit = 0.7;
  CLI::App* gen = app.add_subcommand("gen", "sample a labeled data set to CSV");
  add_chain_flags(gen, chain);
  gen->add_option("--m", gen_m, "number of samples")->check(CLI::PositiveNumber);
  gen->add_option("--balance-limit", balance_limit,
                  "redraw until the majority fraction is at most this (1 disables)")
      ->check(CLI::Range(0.5, 1.0));
  gen->add_option("--seed", seed, "random seed");
  gen->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  gen->add_option("--out", out_path, "output CSV")->required();

  CLI::App* trn = app.add_subcommand("train", "train a model from a CSV data set");
  add_chain_flags(trn, chain);
  add_train_flags(trn, trainf, "gaussian");
  trn->add_option("--data", data_path, "training CSV")->required();
  trn->add_option("--seed", seed, "oracle seed");
  trn->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  trn->add_option("--out", out_path, "output model file")->required();

  std::string predict_oracle;
  CLI::App* pred = app.add_subcommand("predict", "label a CSV data set with a model");
  pred->add_option("--model", model_path, "model file")->required();
  pred->add_option("--data", data_path, "CSV to classify")->required();
  pred->add_option("--oracle", predict_oracle, "override the model's oracle mode")
      ->check(CLI::IsMember({"exact", "gaussian"}));
  pred->add_option("--seed", seed, "oracle seed");
  pred->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  pred->add_option("--out", out_path, "output predictions, one label per line")->required();

  std::vector<std::size_t> table1_m{100, 1000};
  bool no_rbf = false;
  CLI::App* t1 = app.add_subcommand("table1", "accuracy, iterations and psi_min versus m");
  add_chain_flags(t1, chain);
  add_train_flags(t1, trainf, "gaussian");
  t1->add_option("--m", table1_m, "training-set sizes")->delimiter(',');
  t1->add_flag("--no-rbf", no_rbf, "skip the RBF baseline column");
  t1->add_option("--seed", seed, "random seed");
  t1->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  t1->add_option("--out", out_path, "output TSV")->required();

  std::vector<int> table2_n{4, 5, 6};
  std::size_t instances = 10;
  std::size_t table2_m = 1000;
  CLI::App* t2 = app.add_subcommand("table2", "psi_min statistics versus N");
  add_train_flags(t2, trainf, "gaussian");
  t2->add_option("--n", table2_n, "spin counts")->delimiter(',');
  t2->add_option("--instances", instances, "instances per N")->check(CLI::Range(1, 100));
  t2->add_option("--m", table2_m, "samples per instance")->check(CLI::PositiveNumber);
  t2->add_option("--seed", seed, "random seed");
  t2->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  t2->add_option("--out", out_path, "output TSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    if (gen->parsed()) {
      const ChainConfig cfg = chain.config();
      cfg.validate();
      const Dataset ds = generate_balanced(cfg, gen_m, -2.0, 2.0, balance_limit, 50, seed,
                                           threads);
      save(ds, out_path);
      out << "wrote " << ds.size() << " samples to " << out_path << " (majority fraction "
          << fixed(balance_ratio(ds), 3) << ")\n";
    } else if (trn->parsed()) {
      const ChainConfig cfg = chain.config();
      cfg.validate();
      const Dataset ds = load(data_path, cfg, threads);
      const TrainConfig tc = trainf.config(threads);
      tc.validate();
      InnerProductOracle oracle(trainf.mode(), seed);
      const TrainResult run = train(ds, tc, oracle);
      save_model(make_model_file(run, ds, trainf.mode(), seed), out_path);
      out << "trained on " << ds.size() << " samples: iterations " << run.model.iterations
          << ", terminated by " << to_string(run.model.terminated_by) << ", psi_min "
          << general(run.model.psi_min) << ", xi_hat " << general(run.model.xi_hat) << '\n';
    } else if (pred->parsed()) {
      const ModelFile mf = load_model(model_path);
      const Dataset train_set = restore_training_set(mf, threads);
      const Dataset test = load(data_path, mf.chain, threads);
      const OracleMode mode =
          predict_oracle.empty() ? mf.oracle
                                 : (predict_oracle == "exact" ? OracleMode::exact
                                                              : OracleMode::gaussian);
      InnerProductOracle oracle(mode, seed);
      const std::vector<Prediction> preds =
          predict_all(mf.model, train_set, test, oracle, mf.model.config.eps,
                      mf.model.config.delta, threads);
      std::ofstream file = open_output(out_path);
      std::size_t correct = 0;
      for (std::size_t i = 0; i < preds.size(); ++i) {
        file << (preds[i].label > 0 ? "+1" : "-1") << '\n';
        if (preds[i].label == test[i].label) ++correct;
      }
      if (!file) throw std::runtime_error("failed writing predictions: " + out_path);
      out << "predicted " << preds.size() << " samples, accuracy against stored labels "
          << fixed(static_cast<double>(correct) / static_cast<double>(preds.size()), 4)
          << '\n';
    } else if (t1->parsed()) {
      ExperimentConfig cfg;
      cfg.chain = chain.config();
      cfg.chain.validate();
      cfg.train = trainf.config(threads);
      cfg.oracle = trainf.mode();
      cfg.with_rbf = !no_rbf;
      cfg.threads = threads;
      const std::vector<Table1Row> rows = run_table1(table1_m, cfg, seed);
      std::ofstream file = open_output(out_path);
      write_table1_tsv(file, rows);
      if (!file) throw std::runtime_error("failed writing report: " + out_path);
      for (const auto& r : rows) {
        out << "m=" << r.m << "  psi_min=" << general(r.psi_min)
            << "  iterations=" << r.iterations << " (" << to_string(r.terminated_by)
            << ")  accuracy=" << fixed(r.accuracy, 4)
            << "  rbf_accuracy=" << (cfg.with_rbf ? fixed(r.rbf_accuracy, 4) : "NA") << '\n';
        err << "m=" << r.m << " wall " << fixed(r.wall_seconds, 2) << " s\n";
      }
    } else if (t2->parsed()) {
      Table2Config cfg;
      cfg.base.train = trainf.config(threads);
      cfg.base.oracle = trainf.mode();
      cfg.base.threads = threads;
      cfg.m = table2_m;
      const std::vector<Table2Row> rows = run_table2(table2_n, instances, cfg, seed);
      std::ofstream file = open_output(out_path);
      write_table2_tsv(file, rows);
      if (!file) throw std::runtime_error("failed writing report: " + out_path);
      for (const auto& r : rows) {
        out << "N=" << r.num_spins << "  instances=" << r.instances
            << "  psi_min mean=" << general(r.psi_min_mean)
            << " min=" << general(r.psi_min_min) << " sd=" << general(r.psi_min_sd) << '\n';
        err << "N=" << r.num_spins << " wall " << fixed(r.wall_seconds, 2) << " s\n";
      }
    }
  } catch (const OutOfScope& e) {
    err << "out of scope: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "invalid argument: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  err << "elapsed " << fixed(std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                           start)
                                 .count(),
                             2)
      << " s\n";
  return kExitOk;
}

}  // namespace qsvm::cli
