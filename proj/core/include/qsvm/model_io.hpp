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
#include <filesystem>
#include <vector>

#include "qsvm/dataset.hpp"
#include "qsvm/oracle.hpp"
#include "qsvm/trainer.hpp"

namespace qsvm {

inline constexpr int kModelFormatVersion = 1;

/// Everything predict needs: the model plus the training set it indexes. The
/// training set is stored as raw points so ground states can be recomputed.
struct ModelFile {
  Model model;
  ChainConfig chain;
  std::vector<CouplingPoint> points;
  std::vector<int> labels;
  std::uint64_t data_seed = 0;
  OracleMode oracle = OracleMode::exact;
  std::uint64_t oracle_seed = 0;
};

ModelFile make_model_file(const TrainResult& run, const Dataset& train, OracleMode oracle,
                          std::uint64_t oracle_seed);

/// JSON text; reals keep round-trip precision.
void save_model(const ModelFile& file, const std::filesystem::path& path);

/// Throws std::runtime_error on unreadable or inconsistent files.
ModelFile load_model(const std::filesystem::path& path);

/// Recomputes the training ground states; throws if a stored label disagrees.
Dataset restore_training_set(const ModelFile& file, int threads = 1);

}  // namespace qsvm
