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

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

#include "qsvm/dataset.hpp"
#include "qsvm/oracle.hpp"
#include "qsvm/trainer.hpp"

namespace qsvm {

/// Raised for requests deliberately outside desk scale.
class OutOfScope : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Largest training-set size the harness accepts.
inline constexpr std::size_t kMaxDeskSamples = 10000;

struct RbfGrid {
  std::vector<double> C;
  std::vector<double> gamma;

  /// C in {1, 10, ..., 1e5}, gamma in {2^-4, ..., 2^4}.
  static RbfGrid standard();
};

struct RbfResult {
  double accuracy = 0.0;
  double holdout_accuracy = 0.0;
  double C = 0.0;
  double gamma = 0.0;
};

/// Grid search on a held-out fraction of `train`, then retrain the best pair on
/// all of `train` and score `test`. The grid is deduplicated before use; ties
/// go to the smaller C, then the smaller gamma.
RbfResult rbf_baseline(const Dataset& train, const Dataset& test, const RbfGrid& grid,
                       double holdout, std::uint64_t seed, double eps = 1e-2,
                       int max_iterations = 500);

struct ExperimentConfig {
  ChainConfig chain;
  TrainConfig train;
  OracleMode oracle = OracleMode::gaussian;
  double train_frac = 0.7;
  double range_lo = -2.0;
  double range_hi = 2.0;
  double balance_limit = 0.7;
  int redraw_budget = 50;
  bool with_rbf = true;
  RbfGrid grid = RbfGrid::standard();
  double holdout = 0.2;
  int threads = 1;
};

/// Draws data sets from substreams of `seed` until the majority fraction is at
/// most `balance_limit`. Throws std::runtime_error when the budget runs out.
Dataset generate_balanced(const ChainConfig& chain, std::size_t m, double range_lo,
                          double range_hi, double balance_limit, int budget,
                          std::uint64_t seed, int threads = 1);

struct Table1Row {
  std::size_t m = 0;
  double psi_min = 0.0;
  int iterations = 0;
  double accuracy = 0.0;
  double rbf_accuracy = 0.0;
  Termination terminated_by = Termination::tolerance;
  std::uint64_t seed = 0;
  double wall_seconds = 0.0;
};

/// One row per m: generate, split, train, evaluate, and the RBF baseline.
/// Row seeds depend only on (seed, m).
std::vector<Table1Row> run_table1(std::span<const std::size_t> m_list,
                                  const ExperimentConfig& cfg, std::uint64_t seed);

struct Table2Config {
  ExperimentConfig base;
  std::size_t m = 1000;
  /// mu0 = mu0_per_spin * N.
  double mu0_per_spin = 0.3;
  int k_coupling_max = 3;
  int k_transverse_max = 10;
  double field_max = 0.5;
  int config_budget = 200;
};

struct Table2Row {
  int num_spins = 0;
  std::size_t instances = 0;
  double psi_min_mean = 0.0;
  double psi_min_min = 0.0;
  double psi_min_sd = 0.0;
  std::vector<double> psi_min;
  std::uint64_t seed = 0;
  double wall_seconds = 0.0;
};

/// Per N: random (k_J, k_Delta, Gamma) draws, unbalanced draws and draws whose
/// transverse profile vanishes identically rejected,
/// training on the full data set. The standard deviation uses n - 1 and is 0
/// for a single instance.
std::vector<Table2Row> run_table2(std::span<const int> n_list, std::size_t instances,
                                  const Table2Config& cfg, std::uint64_t seed);

void write_table1_tsv(std::ostream& out, std::span<const Table1Row> rows);
void write_table2_tsv(std::ostream& out, std::span<const Table2Row> rows);

}  // namespace qsvm
