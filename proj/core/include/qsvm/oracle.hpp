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

#include <cstdint>

namespace qsvm {

enum class OracleMode { exact, gaussian };

/// Noise scale whose two-sided coverage P(|X| <= eps) is exactly 1 - delta for
/// X ~ N(0, sigma^2), i.e. sigma = eps / z_{1 - delta/2}.
/// Throws std::invalid_argument unless eps > 0 and 0 < delta < 1.
double sigma_for(double eps, double delta);

/// Simulated inner-product estimation IP_{eps,delta}.
///
/// Gaussian mode adds N(0, sigma_for(eps, delta)^2) noise to the true value.
/// Each call consumes one substream index, derived from (seed, counter), so a
/// caller that reserves an index range up front gets schedule-independent
/// draws from estimate_at().
class InnerProductOracle {
 public:
  explicit InnerProductOracle(OracleMode mode = OracleMode::exact, std::uint64_t seed = 0)
      : mode_(mode), seed_(seed) {}

  double estimate(double true_value, double eps, double delta);

  /// Draw for an explicit substream index; does not touch the counter.
  double estimate_at(double true_value, double eps, double delta,
                     std::uint64_t index) const;

  /// Advances the counter by n and returns the first reserved index.
  std::uint64_t reserve(std::uint64_t n) noexcept {
    const std::uint64_t first = counter_;
    counter_ += n;
    return first;
  }

  OracleMode mode() const noexcept { return mode_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t calls() const noexcept { return counter_; }

 private:
  OracleMode mode_;
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace qsvm
