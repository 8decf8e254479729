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
#include <filesystem>
#include <span>
#include <utility>
#include <vector>

#include "qsvm/spin_chain.hpp"

namespace qsvm {

struct Sample {
  CouplingPoint point;
  int label = 1;  // +1 or -1
  Wavefunction psi;
};

/// Sampling parameters for one data set draw.
struct GenSpec {
  std::size_t m = 100;
  double range_lo = -2.0;
  double range_hi = 2.0;
  std::uint64_t seed = 0;
  double balance_limit = 0.7;
  int threads = 1;

  void validate() const;
};

/// Labeled samples sharing one chain configuration.
class Dataset {
 public:
  Dataset(ChainConfig config, std::uint64_t seed, std::vector<Sample> samples);

  const ChainConfig& config() const noexcept { return config_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::size_t size() const noexcept { return samples_.size(); }
  const std::vector<Sample>& samples() const noexcept { return samples_; }
  const Sample& operator[](std::size_t i) const { return samples_[i]; }

  std::vector<int> labels() const;
  std::vector<CouplingPoint> points() const;

  /// Subset in the given index order.
  Dataset subset(std::span<const std::size_t> indices) const;

 private:
  ChainConfig config_;
  std::uint64_t seed_;
  std::vector<Sample> samples_;
};

/// Deterministic 64-bit seed for substream `index` of `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// Solves each point's ground state and labels it by <M> >= mu0.
Dataset make_dataset(const ChainConfig& cfg, std::span<const CouplingPoint> points,
                     std::uint64_t seed = 0, int threads = 1);

/// Uniform i.i.d. (J, Delta) draws over the square range. Sample i draws from
/// substream derive_seed(seed, i), so the result is schedule-independent.
/// Balance is not enforced here; see balance_ratio.
Dataset generate(const ChainConfig& cfg, const GenSpec& spec);

/// Majority-label fraction, in [0.5, 1].
double balance_ratio(const Dataset& ds);

/// Shuffled split with |train| = round(train_frac * m).
/// Throws std::invalid_argument when m < 2 or train_frac is outside (0, 1).
std::pair<Dataset, Dataset> split(const Dataset& ds, double train_frac,
                                  std::uint64_t seed);

/// Writes the "J,Delta,label" CSV form.
void save(const Dataset& ds, const std::filesystem::path& path);

/// Reads a CSV written by save() and recomputes ground states under `cfg`.
/// Throws std::runtime_error on malformed input, an empty file, a file with no
/// samples, or a stored label that disagrees with the recomputed one.
Dataset load(const std::filesystem::path& path, const ChainConfig& cfg,
             int threads = 1);

}  // namespace qsvm
