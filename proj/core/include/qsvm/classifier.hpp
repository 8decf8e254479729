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

#include <span>

#include <Eigen/Dense>

#include "qsvm/dataset.hpp"
#include "qsvm/oracle.hpp"
#include "qsvm/trainer.hpp"

namespace qsvm {

struct Prediction {
  double decision = 0.0;
  int label = 1;
};

/// label = +1 iff decision >= 0.
Prediction make_prediction(double decision) noexcept;

/// Exact <sum_c a_c Psi_c, Phi(x)> collapsed onto the training expansion.
class DecisionFunction {
 public:
  DecisionFunction(const Model& model, const Dataset& train);

  double exact(const Wavefunction& x) const;
  std::size_t support_size() const noexcept { return support_.size(); }

 private:
  std::vector<std::size_t> support_;
  Eigen::VectorXd beta_;   // nonzero expansion weights
  Eigen::MatrixXd states_;  // matching training ground states, one per column
};

/// One oracle call on the exact decision value.
double decision_value(const Model& model, const Wavefunction& x, const Dataset& train,
                      InnerProductOracle& oracle, double eps, double delta);

Prediction predict(const Model& model, const Wavefunction& x, const Dataset& train,
                   InnerProductOracle& oracle, double eps, double delta);

/// Predictions for every test sample; point i draws from reserved substream i.
std::vector<Prediction> predict_all(const Model& model, const Dataset& train,
                                    const Dataset& test, InnerProductOracle& oracle,
                                    double eps, double delta, int threads = 1);

/// Fraction of test samples classified correctly.
double evaluate(const Model& model, const Dataset& train, const Dataset& test,
                InnerProductOracle& oracle, double eps, double delta, int threads = 1);

/// Exact RBF-kernel decision value on a raw point.
double rbf_decision_value(const Model& model, std::span<const CouplingPoint> train_points,
                          const Eigen::VectorXd& train_labels, double gamma,
                          const CouplingPoint& x);

double evaluate_rbf(const Model& model, std::span<const CouplingPoint> train_points,
                    const Eigen::VectorXd& train_labels, double gamma,
                    std::span<const CouplingPoint> test_points,
                    std::span<const int> test_labels);

}  // namespace qsvm
