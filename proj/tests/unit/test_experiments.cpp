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

#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "instances.hpp"
#include "qsvm/experiments.hpp"

namespace {

TEST(RbfGrid, StandardShape) {
  const auto g = qsvm::RbfGrid::standard();
  EXPECT_EQ(g.C.size(), 6u);
  EXPECT_EQ(g.gamma.size(), 9u);
  EXPECT_EQ(g.C.front(), 1.0);
  EXPECT_EQ(g.C.back(), 1e5);
  EXPECT_EQ(g.gamma.front(), 1.0 / 16);
  EXPECT_EQ(g.gamma.back(), 16.0);
}

TEST(RbfBaseline, DuplicateGridEntriesIgnored) {
  const qsvm::Dataset all = qsvm_test::small_dataset(60, 5);
  const auto [train, test] = qsvm::split(all, 0.7, 1);
  const qsvm::RbfGrid plain{{1.0, 100.0}, {0.5, 4.0}};
  const qsvm::RbfGrid dup{{100.0, 1.0, 100.0}, {4.0, 0.5, 0.5}};
  const auto a = qsvm::rbf_baseline(train, test, plain, 0.2, 3);
  const auto b = qsvm::rbf_baseline(train, test, dup, 0.2, 3);
  EXPECT_EQ(a.accuracy, b.accuracy);
  EXPECT_EQ(a.C, b.C);
  EXPECT_EQ(a.gamma, b.gamma);
  EXPECT_THROW(qsvm::rbf_baseline(train, test, qsvm::RbfGrid{{}, {1.0}}, 0.2, 3),
               std::invalid_argument);
}

TEST(RunTable1, RefusesOutOfScope) {
  qsvm::ExperimentConfig cfg;
  const std::vector<std::size_t> huge{100000};
  EXPECT_THROW(qsvm::run_table1(huge, cfg, 7), qsvm::OutOfScope);
}

TEST(RunTable1, SmallRow) {
  qsvm::ExperimentConfig cfg;
  cfg.with_rbf = false;
  const std::vector<std::size_t> ms{100};
  const auto rows = qsvm::run_table1(ms, cfg, 7);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].m, 100u);
  EXPECT_LE(rows[0].iterations, cfg.train.t_max);
  EXPECT_TRUE(std::isnan(rows[0].rbf_accuracy));
  std::ostringstream tsv;
  qsvm::write_table1_tsv(tsv, rows);
  EXPECT_EQ(tsv.str().substr(0, tsv.str().find('\n')), "m\tpsi_min\titerations\taccuracy\trbf_accuracy");
  EXPECT_NE(tsv.str().find("\tNA\n"), std::string::npos);
}

TEST(RunTable2, SingleInstanceHasZeroSd) {
  qsvm::Table2Config cfg;
  cfg.m = 200;
  const std::vector<int> ns{4};
  const auto rows = qsvm::run_table2(ns, 1, cfg, 3);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].instances, 1u);
  EXPECT_EQ(rows[0].psi_min_sd, 0.0);
  EXPECT_EQ(rows[0].psi_min_mean, rows[0].psi_min_min);
  std::ostringstream tsv;
  qsvm::write_table2_tsv(tsv, rows);
  EXPECT_EQ(tsv.str().substr(0, tsv.str().find('\n')),
            "N\tinstances\tpsi_min_mean\tpsi_min_min\tpsi_min_sd");
}

TEST(RunTable2, RejectsBadArguments) {
  qsvm::Table2Config cfg;
  const std::vector<int> bad_n{3};
  EXPECT_THROW(qsvm::run_table2(bad_n, 1, cfg, 0), std::invalid_argument);
  const std::vector<int> ok_n{4};
  EXPECT_THROW(qsvm::run_table2(ok_n, 0, cfg, 0), std::invalid_argument);
  EXPECT_THROW(qsvm::run_table2(ok_n, 101, cfg, 0), std::invalid_argument);
}

TEST(GenerateBalanced, RespectsLimit) {
  qsvm::ChainConfig chain;
  const auto ds = qsvm::generate_balanced(chain, 100, -2.0, 2.0, 0.7, 50, 42);
  EXPECT_LE(qsvm::balance_ratio(ds), 0.7);
  EXPECT_THROW(qsvm::generate_balanced(chain, 101, -2.0, 2.0, 0.5, 1, 42), std::runtime_error);
}

}  // namespace
