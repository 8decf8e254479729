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

#include "qsvm/classifier.hpp"

#include <stdexcept>

#include "qsvm/feature_kernel.hpp"
#include "qsvm/parallel.hpp"

namespace qsvm {
namespace {

Eigen::VectorXd label_vector(std::span<const int> labels) {
  Eigen::VectorXd y(static_cast<Eigen::Index>(labels.size()));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    y[static_cast<Eigen::Index>(i)] = static_cast<double>(labels[i]);
  }
  return y;
}

Eigen::VectorXd model_expansion(const Model& model, const Eigen::VectorXd& y) {
  if (model.constraints.empty()) return Eigen::VectorXd::Zero(y.size());
  if (model.size() != static_cast<std::size_t>(y.size())) {
    throw std::invalid_argument("model was trained on " + std::to_string(model.size()) +
                                " samples but the training set has " +
                                std::to_string(y.size()));
  }
  return expansion_weights(model, y);
}

}  // namespace

Prediction make_prediction(double decision) noexcept {
  return {decision, decision >= 0.0 ? 1 : -1};
}

DecisionFunction::DecisionFunction(const Model& model, const Dataset& train) {
  const std::vector<int> labels = train.labels();
  const Eigen::VectorXd beta = model_expansion(model, label_vector(labels));
  for (Eigen::Index j = 0; j < beta.size(); ++j) {
    if (beta[j] != 0.0) support_.push_back(static_cast<std::size_t>(j));
  }
  const auto s = static_cast<Eigen::Index>(support_.size());
  beta_.resize(s);
  const Eigen::Index dim = static_cast<Eigen::Index>(train[0].psi.dimension());
  states_.resize(dim, s);
  for (Eigen::Index k = 0; k < s; ++k) {
    const std::size_t j = support_[static_cast<std::size_t>(k)];
    beta_[k] = beta[static_cast<Eigen::Index>(j)];
    states_.col(k) = train[j].psi.amplitudes();
  }
}

double DecisionFunction::exact(const Wavefunction& x) const {
  if (support_.empty()) return 0.0;
  if (x.amplitudes().size() != states_.rows()) {
    throw std::invalid_argument("test state dimension does not match the training states");
  }
  // (1 + <psi_j, x>^2) / 2 for every support point at once.
  const Eigen::ArrayXd overlap = (states_.transpose() * x.amplitudes()).array();
  return (0.5 * (1.0 + overlap.square())).matrix().dot(beta_);
}

double decision_value(const Model& model, const Wavefunction& x, const Dataset& train,
                      InnerProductOracle& oracle, double eps, double delta) {
  return oracle.estimate(DecisionFunction(model, train).exact(x), eps, delta);
}

Prediction predict(const Model& model, const Wavefunction& x, const Dataset& train,
                   InnerProductOracle& oracle, double eps, double delta) {
  return make_prediction(decision_value(model, x, train, oracle, eps, delta));
}

std::vector<Prediction> predict_all(const Model& model, const Dataset& train,
                                    const Dataset& test, InnerProductOracle& oracle,
                                    double eps, double delta, int threads) {
  const DecisionFunction f(model, train);
  const std::uint64_t first = oracle.reserve(test.size());
  std::vector<Prediction> out(test.size());
  parallel_for(test.size(), threads, [&](std::size_t i) {
    out[i] = make_prediction(oracle.estimate_at(f.exact(test[i].psi), eps, delta, first + i));
  });
  return out;
}

double evaluate(const Model& model, const Dataset& train, const Dataset& test,
                InnerProductOracle& oracle, double eps, double delta, int threads) {
  const std::vector<Prediction> preds = predict_all(model, train, test, oracle, eps, delta,
                                                    threads);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (preds[i].label == test[i].label) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(preds.size());
}

double rbf_decision_value(const Model& model, std::span<const CouplingPoint> train_points,
                          const Eigen::VectorXd& train_labels, double gamma,
                          const CouplingPoint& x) {
  if (static_cast<Eigen::Index>(train_points.size()) != train_labels.size()) {
    throw std::invalid_argument("training points and labels differ in length");
  }
  const Eigen::VectorXd beta = model_expansion(model, train_labels);
  double acc = 0.0;
  for (std::size_t j = 0; j < train_points.size(); ++j) {
    const double b = beta[static_cast<Eigen::Index>(j)];
    if (b != 0.0) acc += b * rbf_kernel(train_points[j], x, gamma);
  }
  return acc;
}

double evaluate_rbf(const Model& model, std::span<const CouplingPoint> train_points,
                    const Eigen::VectorXd& train_labels, double gamma,
                    std::span<const CouplingPoint> test_points,
                    std::span<const int> test_labels) {
  if (test_points.empty() || test_points.size() != test_labels.size()) {
    throw std::invalid_argument("test points and labels must be nonempty and aligned");
  }
  std::size_t correct = 0;
  for (std::size_t i = 0; i < test_points.size(); ++i) {
    const Prediction p = make_prediction(
        rbf_decision_value(model, train_points, train_labels, gamma, test_points[i]));
    if (p.label == test_labels[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(test_points.size());
}

}  // namespace qsvm
