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
#include <cstdlib>

#include <gtest/gtest.h>

#include "qsvm/oracle.hpp"
#include "reference.hpp"

namespace {

using qsvm::InnerProductOracle;
using qsvm::OracleMode;

TEST(SigmaFor, MatchesErfBisection) {
  EXPECT_NEAR(qsvm::sigma_for(0.01, 0.1), 0.0060795, 1e-7);
  EXPECT_NEAR(0.01 / qsvm::sigma_for(0.01, 0.1), 1.644854, 1e-6);
  for (double delta : {0.5, 0.1, 0.01, 1e-4, 1e-8}) {
    EXPECT_NEAR(qsvm::sigma_for(1.0, delta), 1.0 / qsvm_test::two_sided_z(delta), 1e-9) << delta;
  }
  // delta = P(|X| > 1) makes the quantile exactly one.
  const double one_sigma = 1.0 - std::erf(1.0 / std::sqrt(2.0));
  EXPECT_NEAR(std::abs(one_sigma - 0.31731), 0.0, 1e-5);
  EXPECT_NEAR(qsvm::sigma_for(1.0, one_sigma), 1.0, 1e-10);
}

TEST(SigmaFor, RejectsBadArguments) {
  EXPECT_THROW(qsvm::sigma_for(0.0, 0.1), std::invalid_argument);
  EXPECT_THROW(qsvm::sigma_for(-1.0, 0.1), std::invalid_argument);
  EXPECT_THROW(qsvm::sigma_for(0.1, 0.0), std::invalid_argument);
  EXPECT_THROW(qsvm::sigma_for(0.1, 1.0), std::invalid_argument);
  EXPECT_THROW(qsvm::sigma_for(std::nan(""), 0.1), std::invalid_argument);
}

TEST(Oracle, ExactModeIsTransparent) {
  InnerProductOracle o(OracleMode::exact, 3);
  EXPECT_EQ(o.estimate(0.25, 0.01, 0.1), 0.25);
  EXPECT_EQ(o.estimate(-7.5, 1e-9, 1e-9), -7.5);
  EXPECT_EQ(o.calls(), 2u);
  EXPECT_THROW(o.estimate(1.0, 0.0, 0.1), std::invalid_argument);
}

TEST(Oracle, GaussianCoverageAndMean) {
  for (auto [eps, delta] : {std::pair{0.01, 0.1}, std::pair{0.1, 0.01}}) {
    InnerProductOracle o(OracleMode::gaussian, 99);
    const int n = 100000;
    int inside = 0;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double err = o.estimate(0.3, eps, delta) - 0.3;
      sum += err;
      if (std::abs(err) <= eps) ++inside;
    }
    const double coverage = static_cast<double>(inside) / n;
    EXPECT_GE(coverage, 1.0 - delta - 0.01);
    EXPECT_LE(coverage, 1.0 - delta + 0.01);
    // Mean error is within 5 standard errors of zero.
    EXPECT_LE(std::abs(sum / n), 5.0 * qsvm::sigma_for(eps, delta) / std::sqrt(n));
  }
}

TEST(Oracle, DeterministicAndIndexAddressed) {
  InnerProductOracle a(OracleMode::gaussian, 5);
  InnerProductOracle b(OracleMode::gaussian, 5);
  InnerProductOracle other(OracleMode::gaussian, 6);
  for (std::uint64_t i = 0; i < 50; ++i) {
    const double va = a.estimate(0.0, 0.1, 0.1);
    EXPECT_EQ(va, b.estimate_at(0.0, 0.1, 0.1, i));
    EXPECT_NE(va, other.estimate_at(0.0, 0.1, 0.1, i));
  }
  EXPECT_EQ(b.calls(), 0u);
  EXPECT_EQ(b.reserve(10), 0u);
  EXPECT_EQ(b.reserve(5), 10u);
  EXPECT_EQ(b.calls(), 15u);
}

}  // namespace
