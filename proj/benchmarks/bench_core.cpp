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

#include <random>

#include <benchmark/benchmark.h>

#include "qsvm/dataset.hpp"
#include "qsvm/feature_kernel.hpp"
#include "qsvm/qp_solver.hpp"
#include "qsvm/spin_chain.hpp"
#include "qsvm/trainer.hpp"

namespace {

qsvm::Dataset table_data(std::size_t m) {
  qsvm::GenSpec spec;
  spec.m = m;
  spec.seed = 7;
  return qsvm::generate(qsvm::ChainConfig{}, spec);
}

void BM_GroundState(benchmark::State& state) {
  qsvm::ChainConfig cfg;
  cfg.num_spins = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(qsvm::solve_point(cfg, {0.7, -1.1}));
  }
}
BENCHMARK(BM_GroundState)->DenseRange(4, 8, 2);

void BM_GramDense(benchmark::State& state) {
  const qsvm::Dataset ds = table_data(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(qsvm::gram(ds, qsvm::KernelStorage::dense));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GramDense)->RangeMultiplier(4)->Range(64, 1024)->Complexity();

void BM_FactoredMultiply(benchmark::State& state) {
  const qsvm::Dataset ds = table_data(static_cast<std::size_t>(state.range(0)));
  const qsvm::KernelCache k = qsvm::gram(ds, qsvm::KernelStorage::factored);
  const Eigen::VectorXd v = Eigen::VectorXd::Ones(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(k.multiply(v));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FactoredMultiply)->RangeMultiplier(4)->Range(256, 4096)->Complexity();

void BM_PsdProject(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  const auto n = state.range(0);
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < n * n; ++i) a.data()[i] = g(rng);
  const Eigen::MatrixXd s = 0.5 * (a + a.transpose());
  for (auto _ : state) benchmark::DoNotOptimize(qsvm::psd_project(s));
}
BENCHMARK(BM_PsdProject)->Arg(10)->Arg(25)->Arg(50);

void BM_RestrictedDual(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u;
  const auto k = state.range(0);
  Eigen::MatrixXd a(k, k);
  for (Eigen::Index i = 0; i < k * k; ++i) a.data()[i] = g(rng);
  qsvm::RestrictedDual rd;
  rd.jhat = 1e-3 * a * a.transpose();
  rd.b.resize(k);
  for (Eigen::Index i = 0; i < k; ++i) rd.b[i] = u(rng);
  rd.budget = 1e4;
  for (auto _ : state) benchmark::DoNotOptimize(qsvm::solve_restricted_dual(rd));
}
BENCHMARK(BM_RestrictedDual)->Arg(5)->Arg(20)->Arg(50);

// Whole training run on the default chain, exact oracle.
void BM_Train(benchmark::State& state) {
  const qsvm::KernelCache k = qsvm::gram(table_data(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) {
    qsvm::InnerProductOracle oracle(qsvm::OracleMode::exact);
    benchmark::DoNotOptimize(qsvm::train(k, qsvm::TrainConfig{}, oracle));
  }
}
BENCHMARK(BM_Train)->Arg(100)->Arg(700)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
