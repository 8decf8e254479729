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

#include "qsvm/oracle.hpp"

#include <random>
#include <stdexcept>

#include <boost/math/distributions/normal.hpp>

#include "qsvm/dataset.hpp"

namespace qsvm {

double sigma_for(double eps, double delta) {
  if (!(eps > 0.0)) throw std::invalid_argument("oracle tolerance eps must be positive");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("oracle failure probability delta must lie in (0, 1)");
  }
  const boost::math::normal_distribution<double> standard;
  const double z = boost::math::quantile(boost::math::complement(standard, delta / 2.0));
  return eps / z;
}

double InnerProductOracle::estimate(double true_value, double eps, double delta) {
  return estimate_at(true_value, eps, delta, reserve(1));
}

double InnerProductOracle::estimate_at(double true_value, double eps, double delta,
                                       std::uint64_t index) const {
  const double sigma = sigma_for(eps, delta);
  if (mode_ == OracleMode::exact) return true_value;
  std::mt19937_64 rng(derive_seed(seed_, index));
  std::normal_distribution<double> noise(0.0, sigma);
  return true_value + noise(rng);
}

}  // namespace qsvm
