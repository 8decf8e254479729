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

#include "qsvm/model_io.hpp"

#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace qsvm {
namespace {

using nlohmann::json;

std::string boundary_name(Boundary b) { return b == Boundary::open ? "open" : "periodic"; }

Boundary boundary_from(const std::string& s) {
  if (s == "periodic") return Boundary::periodic;
  if (s == "open") return Boundary::open;
  throw std::runtime_error("model file: unknown boundary '" + s + "'");
}

std::string oracle_name(OracleMode m) { return m == OracleMode::gaussian ? "gaussian" : "exact"; }

OracleMode oracle_from(const std::string& s) {
  if (s == "exact") return OracleMode::exact;
  if (s == "gaussian") return OracleMode::gaussian;
  throw std::runtime_error("model file: unknown oracle mode '" + s + "'");
}

}  // namespace

ModelFile make_model_file(const TrainResult& run, const Dataset& train, OracleMode oracle,
                          std::uint64_t oracle_seed) {
  ModelFile f;
  f.model = run.model;
  f.chain = train.config();
  f.points = train.points();
  f.labels = train.labels();
  f.data_seed = train.seed();
  f.oracle = oracle;
  f.oracle_seed = oracle_seed;
  return f;
}

void save_model(const ModelFile& file, const std::filesystem::path& path) {
  const Model& model = file.model;
  json j;
  j["version"] = kModelFormatVersion;
  j["config"] = {{"C", model.config.C},
                 {"eps", model.config.eps},
                 {"delta", model.config.delta},
                 {"t_max", model.config.t_max}};
  j["chain"] = {{"num_spins", file.chain.num_spins},
                {"k_coupling", file.chain.k_coupling},
                {"k_transverse", file.chain.k_transverse},
                {"field", file.chain.field},
                {"mu0", file.chain.mu0},
                {"boundary", boundary_name(file.chain.boundary)}};
  json points = json::array();
  for (const auto& p : file.points) points.push_back({p.coupling, p.transverse});
  j["training"] = {{"seed", file.data_seed}, {"points", points}, {"labels", file.labels}};
  j["oracle"] = {{"mode", oracle_name(file.oracle)}, {"seed", file.oracle_seed}};
  json constraints = json::array();
  for (const auto& c : model.constraints) constraints.push_back(c.to_string());
  j["constraints"] = constraints;
  j["alpha"] = std::vector<double>(model.alpha.data(), model.alpha.data() + model.alpha.size());
  j["xi_hat"] = model.xi_hat;
  j["psi_min"] = model.psi_min;
  j["iterations"] = model.iterations;
  j["terminated_by"] = to_string(model.terminated_by);

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open model file for writing: " + path.string());
  out << j.dump(1) << '\n';
  if (!out) throw std::runtime_error("failed writing model file: " + path.string());
}

ModelFile load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file: " + path.string());
  ModelFile f;
  try {
    const json j = json::parse(in);
    if (j.at("version").get<int>() != kModelFormatVersion) {
      throw std::runtime_error("unsupported model format version");
    }
    Model& model = f.model;
    const json& cfg = j.at("config");
    model.config.C = cfg.at("C").get<double>();
    model.config.eps = cfg.at("eps").get<double>();
    model.config.delta = cfg.at("delta").get<double>();
    model.config.t_max = cfg.at("t_max").get<int>();

    const json& chain = j.at("chain");
    f.chain.num_spins = chain.at("num_spins").get<int>();
    f.chain.k_coupling = chain.at("k_coupling").get<int>();
    f.chain.k_transverse = chain.at("k_transverse").get<int>();
    f.chain.field = chain.at("field").get<double>();
    f.chain.mu0 = chain.at("mu0").get<double>();
    f.chain.boundary = boundary_from(chain.at("boundary").get<std::string>());
    f.chain.validate();

    const json& training = j.at("training");
    f.data_seed = training.at("seed").get<std::uint64_t>();
    for (const auto& p : training.at("points")) {
      f.points.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    }
    f.labels = training.at("labels").get<std::vector<int>>();
    f.oracle = oracle_from(j.at("oracle").at("mode").get<std::string>());
    f.oracle_seed = j.at("oracle").at("seed").get<std::uint64_t>();

    for (const auto& c : j.at("constraints")) {
      model.constraints.push_back(ConstraintVector::from_string(c.get<std::string>()));
    }
    const auto alpha = j.at("alpha").get<std::vector<double>>();
    model.alpha = Eigen::Map<const Eigen::VectorXd>(alpha.data(),
                                                    static_cast<Eigen::Index>(alpha.size()));
    model.xi_hat = j.at("xi_hat").get<double>();
    model.psi_min = j.at("psi_min").get<double>();
    model.iterations = j.at("iterations").get<int>();
    model.terminated_by = termination_from_string(j.at("terminated_by").get<std::string>());
    if (!model.constraints.empty()) model.config.c_init = model.constraints.front();
  } catch (const json::exception& e) {
    throw std::runtime_error("malformed model file " + path.string() + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error("malformed model file " + path.string() + ": " + e.what());
  }

  if (f.points.size() != f.labels.size() || f.points.empty()) {
    throw std::runtime_error("model file: training points and labels are inconsistent");
  }
  if (static_cast<std::size_t>(f.model.alpha.size()) != f.model.constraints.size()) {
    throw std::runtime_error("model file: alpha and constraints differ in length");
  }
  for (const auto& c : f.model.constraints) {
    if (c.size() != f.points.size()) {
      throw std::runtime_error("model file: constraint length does not match training set");
    }
  }
  return f;
}

Dataset restore_training_set(const ModelFile& file, int threads) {
  Dataset ds = make_dataset(file.chain, file.points, file.data_seed, threads);
  const std::vector<int> labels = ds.labels();
  if (labels != file.labels) {
    throw std::runtime_error("model file: stored labels disagree with recomputed ground states");
  }
  return ds;
}

}  // namespace qsvm
