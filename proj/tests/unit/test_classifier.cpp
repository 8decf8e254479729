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

#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "instances.hpp"
#include "qsvm/classifier.hpp"
#include "qsvm/trainer.hpp"

namespace {

using qsvm::ConstraintVector;
using qsvm::InnerProductOracle;
using qsvm::OracleMode;

qsvm::Model random_model(std::size_t m, std::size_t k, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0);
  qsvm::Model model;
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<std::uint8_t> bits(m);
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng() & 1);
    model.constraints.emplace_back(bits);
  }
  model.alpha.resize(static_cast<Eigen::Index>(k));
  for (Eigen::Index c = 0; c < model.alpha.size(); ++c) model.alpha[c] = u(rng);
  return model;
}

TEST(MakePrediction, SignConvention) {
  EXPECT_EQ(qsvm::make_prediction(0.3).label, 1);
  EXPECT_EQ(qsvm::make_prediction(-0.3).label, -1);
  EXPECT_EQ(qsvm::make_prediction(0.0).label, 1);
  EXPECT_EQ(qsvm::make_prediction(-0.3).decision, -0.3);
}

TEST(DecisionValue, ZeroModel) {
  const qsvm::Dataset train = qsvm_test::small_dataset(5, 1);
  qsvm::Model model;
  model.constraints = {ConstraintVector::ones(5)};
  model.alpha = Eigen::VectorXd::Zero(1);
  InnerProductOracle exact(OracleMode::exact);
  EXPECT_EQ(qsvm::decision_value(model, train[0].psi, train, exact, 0.01, 0.1), 0.0);
}

TEST(DecisionValue, SingleTerm) {
  const qsvm::Dataset train = qsvm_test::small_dataset(5, 2);
  qsvm::Model model;
  model.constraints = {ConstraintVector::unit(5, 3)};
  const double c = 7.0;
  model.alpha = Eigen::VectorXd::Constant(1, c);
  InnerProductOracle exact(OracleMode::exact);
  const auto& x = train[1].psi;
  EXPECT_NEAR(qsvm::decision_value(model, x, train, exact, 0.01, 0.1),
              c * train[3].label * qsvm::feature_inner(train[3].psi, x) / 5.0, 1e-12);
  EXPECT_NEAR(qsvm::decision_value(model, train[3].psi, train, exact, 0.01, 0.1),
              c * train[3].label / 5.0, 1e-12);
}

TEST(DecisionValue, MatchesLoops) {
  std::mt19937_64 rng(3);
  const qsvm::Dataset train = qsvm_test::small_dataset(3, 3);
  const qsvm::Dataset test = qsvm_test::small_dataset(4, 3);
  InnerProductOracle exact(OracleMode::exact);
  for (int trial = 0; trial < 10; ++trial) {
    const qsvm::Model model = random_model(3, 3, rng);
    for (std::size_t q = 0; q < test.size(); ++q) {
      if (test[q].psi.dimension() != train[0].psi.dimension()) continue;
      double ref = 0.0;
      for (std::size_t c = 0; c < 3; ++c) {
        for (std::size_t j = 0; j < 3; ++j) {
          ref += model.alpha[static_cast<Eigen::Index>(c)] * model.constraints[c][j] *
                 train[j].label * qsvm::feature_inner(train[j].psi, test[q].psi) / 3.0;
        }
      }
      EXPECT_NEAR(qsvm::decision_value(model, test[q].psi, train, exact, 0.01, 0.1), ref, 1e-12);
    }
  }
}

TEST(DecisionValue, PermutationInvariant) {
  std::mt19937_64 rng(8);
  const qsvm::Dataset train = qsvm_test::small_dataset(9, 4);
  const qsvm::Model model = random_model(9, 4, rng);
  std::vector<std::size_t> perm(9);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  const qsvm::Dataset shuffled = train.subset(perm);
  qsvm::Model moved = model;
  for (std::size_t k = 0; k < model.constraints.size(); ++k) {
    for (std::size_t i = 0; i < 9; ++i) moved.constraints[k].set(i, model.constraints[k][perm[i]]);
  }
  InnerProductOracle exact(OracleMode::exact);
  for (std::size_t q = 0; q < 9; ++q) {
    EXPECT_NEAR(qsvm::decision_value(model, train[q].psi, train, exact, 0.01, 0.1),
                qsvm::decision_value(moved, train[q].psi, shuffled, exact, 0.01, 0.1), 1e-12);
  }
}

TEST(DecisionValue, SizeMismatchThrows) {
  std::mt19937_64 rng(1);
  const qsvm::Dataset train = qsvm_test::small_dataset(5, 1);
  const qsvm::Model model = random_model(4, 2, rng);
  InnerProductOracle exact(OracleMode::exact);
  EXPECT_THROW(qsvm::decision_value(model, train[0].psi, train, exact, 0.01, 0.1),
               std::invalid_argument);
}

TEST(DecisionValue, GaussianWithinTolerance) {
  std::mt19937_64 rng(2);
  const qsvm::Dataset train = qsvm_test::small_dataset(6, 6);
  const qsvm::Model model = random_model(6, 2, rng);
  InnerProductOracle exact(OracleMode::exact);
  InnerProductOracle noisy(OracleMode::gaussian, 4);
  const double truth = qsvm::decision_value(model, train[0].psi, train, exact, 0.01, 0.1);
  int inside = 0;
  for (int rep = 0; rep < 5000; ++rep) {
    inside += std::abs(qsvm::decision_value(model, train[0].psi, train, noisy, 0.01, 0.1) - truth) <=
              0.01;
  }
  EXPECT_GE(inside / 5000.0, 0.88);
}

TEST(Evaluate, Examples) {
  const qsvm::Dataset train = qsvm_test::small_dataset(20, 9);
  InnerProductOracle exact(OracleMode::exact);
  qsvm::Model empty;
  empty.alpha = Eigen::VectorXd(0);
  int pos = 0;
  for (int y : train.labels()) pos += y > 0;
  EXPECT_NEAR(qsvm::evaluate(empty, train, train, exact, 0.01, 0.1), pos / 20.0, 1e-15);

  std::vector<std::size_t> positives;
  for (std::size_t i = 0; i < train.size(); ++i) {
    if (train[i].label > 0) positives.push_back(i);
  }
  ASSERT_FALSE(positives.empty());
  EXPECT_EQ(qsvm::evaluate(empty, train, train.subset(positives), exact, 0.01, 0.1), 1.0);
}

TEST(PredictAll, ThreadAndOrderIndependent) {
  const qsvm::Dataset train = qsvm_test::small_dataset(30, 10);
  InnerProductOracle o(OracleMode::gaussian, 1);
  const auto run = qsvm::train(train, qsvm::TrainConfig{}, o);
  InnerProductOracle a(OracleMode::gaussian, 5), b(OracleMode::gaussian, 5);
  const auto pa = qsvm::predict_all(run.model, train, train, a, 0.01, 0.1, 1);
  const auto pb = qsvm::predict_all(run.model, train, train, b, 0.01, 0.1, 3);
  ASSERT_EQ(pa.size(), pb.size());
  for (std::size_t i = 0; i < pa.size(); ++i) EXPECT_EQ(pa[i].decision, pb[i].decision);
}

TEST(PredictAll, HardSeparatedTrainingPointsAgreeWithLabels) {
  const qsvm::Dataset train = qsvm_test::small_dataset(30, 11);
  InnerProductOracle exact(OracleMode::exact);
  const auto run = qsvm::train(train, qsvm::TrainConfig{}, exact);
  const auto preds = qsvm::predict_all(run.model, train, train, exact, 0.01, 0.1);
  const Eigen::VectorXd& zetas = run.final_state.zetas;
  for (std::size_t i = 0; i < train.size(); ++i) {
    if (zetas[static_cast<Eigen::Index>(i)] >= 1.0) EXPECT_EQ(preds[i].label, train[i].label);
  }
}

TEST(Rbf, DecisionMatchesLoop) {
  std::mt19937_64 rng(12);
  const qsvm::Dataset train = qsvm_test::small_dataset(4, 12);
  const qsvm::Model model = random_model(4, 2, rng);
  const auto pts = train.points();
  Eigen::VectorXd y(4);
  for (int i = 0; i < 4; ++i) y[i] = train[static_cast<std::size_t>(i)].label;
  const qsvm::CouplingPoint x{0.3, -0.4};
  double ref = 0.0;
  for (std::size_t c = 0; c < 2; ++c) {
    for (std::size_t j = 0; j < 4; ++j) {
      const double d2 = std::pow(pts[j].coupling - x.coupling, 2) +
                        std::pow(pts[j].transverse - x.transverse, 2);
      ref += model.alpha[static_cast<Eigen::Index>(c)] * model.constraints[c][j] *
             y[static_cast<Eigen::Index>(j)] * std::exp(-0.7 * d2) / 4.0;
    }
  }
  EXPECT_NEAR(qsvm::rbf_decision_value(model, pts, y, 0.7, x), ref, 1e-12);
}

}  // namespace
