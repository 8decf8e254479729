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

#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "instances.hpp"
#include "qsvm/classifier.hpp"
#include "qsvm/model_io.hpp"

namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "qsvm_model_io_test";
  fs::create_directories(dir);
  return dir / name;
}

TEST(ModelIo, RoundTrip) {
  const qsvm::Dataset train = qsvm_test::small_dataset(25, 3);
  qsvm::InnerProductOracle o(qsvm::OracleMode::gaussian, 17);
  const auto run = qsvm::train(train, qsvm::TrainConfig{}, o);
  const qsvm::ModelFile mf = qsvm::make_model_file(run, train, qsvm::OracleMode::gaussian, 17);
  const fs::path p = scratch("round_trip.json");
  qsvm::save_model(mf, p);
  const qsvm::ModelFile back = qsvm::load_model(p);

  EXPECT_EQ(back.model.constraints, mf.model.constraints);
  EXPECT_EQ(back.model.alpha, mf.model.alpha);
  EXPECT_EQ(back.model.xi_hat, mf.model.xi_hat);
  EXPECT_EQ(back.model.psi_min, mf.model.psi_min);
  EXPECT_EQ(back.model.iterations, mf.model.iterations);
  EXPECT_EQ(back.model.terminated_by, mf.model.terminated_by);
  EXPECT_EQ(back.model.config.C, mf.model.config.C);
  EXPECT_EQ(back.model.config.t_max, mf.model.config.t_max);
  EXPECT_EQ(back.chain, mf.chain);
  EXPECT_EQ(back.points, mf.points);
  EXPECT_EQ(back.labels, mf.labels);
  EXPECT_EQ(back.oracle, qsvm::OracleMode::gaussian);
  EXPECT_EQ(back.oracle_seed, 17u);

  const qsvm::Dataset restored = qsvm::restore_training_set(back);
  qsvm::InnerProductOracle exact(qsvm::OracleMode::exact);
  for (std::size_t i = 0; i < train.size(); i += 5) {
    EXPECT_EQ(qsvm::decision_value(mf.model, train[i].psi, train, exact, 0.01, 0.1),
              qsvm::decision_value(back.model, train[i].psi, restored, exact, 0.01, 0.1));
  }

  // Saving the loaded file reproduces the bytes.
  const fs::path again = scratch("round_trip_again.json");
  qsvm::save_model(back, again);
  std::ifstream a(p), b(again);
  EXPECT_EQ(std::string(std::istreambuf_iterator<char>(a), {}),
            std::string(std::istreambuf_iterator<char>(b), {}));
}

TEST(ModelIo, RejectsBadFiles) {
  EXPECT_THROW(qsvm::load_model(scratch("does_not_exist.json")), std::runtime_error);
  const fs::path p = scratch("garbage.json");
  std::ofstream(p) << "{ not json";
  EXPECT_THROW(qsvm::load_model(p), std::runtime_error);
  std::ofstream(p) << R"({"version": 99})";
  EXPECT_THROW(qsvm::load_model(p), std::runtime_error);
}

TEST(ModelIo, DetectsLabelDrift) {
  const qsvm::Dataset train = qsvm_test::small_dataset(10, 4);
  qsvm::InnerProductOracle o(qsvm::OracleMode::exact);
  const auto run = qsvm::train(train, qsvm::TrainConfig{}, o);
  qsvm::ModelFile mf = qsvm::make_model_file(run, train, qsvm::OracleMode::exact, 0);
  mf.labels[0] = -mf.labels[0];
  EXPECT_THROW(qsvm::restore_training_set(mf), std::runtime_error);
}

}  // namespace
