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

#include "qsvm/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>

#include "qsvm/parallel.hpp"

namespace qsvm {
namespace {

constexpr const char* kCsvHeader = "J,Delta,label";

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s, std::size_t line) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw std::runtime_error("malformed number '" + std::string(s) +
                             "' on line " + std::to_string(line));
  }
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

void GenSpec::validate() const {
  if (m < 1) throw std::invalid_argument("sample count must be at least 1");
  if (!(range_lo < range_hi)) throw std::invalid_argument("empty sampling range");
  if (!(balance_limit >= 0.5 && balance_limit < 1.0)) {
    throw std::invalid_argument("balance_limit must lie in [0.5, 1)");
  }
}

Dataset::Dataset(ChainConfig config, std::uint64_t seed, std::vector<Sample> samples)
    : config_(config), seed_(seed), samples_(std::move(samples)) {
  if (samples_.empty()) throw std::invalid_argument("dataset has no samples");
  for (const Sample& s : samples_) {
    if (s.label != 1 && s.label != -1) {
      throw std::invalid_argument("labels must be +1 or -1");
    }
    if (s.psi.num_spins() != config_.num_spins) {
      throw std::invalid_argument("ground state size does not match config");
    }
  }
}

std::vector<int> Dataset::labels() const {
  std::vector<int> out;
  out.reserve(samples_.size());
  for (const Sample& s : samples_) out.push_back(s.label);
  return out;
}

std::vector<CouplingPoint> Dataset::points() const {
  std::vector<CouplingPoint> out;
  out.reserve(samples_.size());
  for (const Sample& s : samples_) out.push_back(s.point);
  return out;
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  std::vector<Sample> picked;
  picked.reserve(indices.size());
  for (std::size_t i : indices) picked.push_back(samples_.at(i));
  return Dataset(config_, seed_, std::move(picked));
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

Dataset make_dataset(const ChainConfig& cfg, std::span<const CouplingPoint> points,
                     std::uint64_t seed, int threads) {
  cfg.validate();
  std::vector<std::optional<Sample>> slots(points.size());
  parallel_for(points.size(), threads, [&](std::size_t i) {
    Wavefunction psi = solve_point(cfg, points[i]);
    const int label = label_point(magnetization(psi), cfg.mu0);
    slots[i].emplace(Sample{points[i], label, std::move(psi)});
  });
  std::vector<Sample> samples;
  samples.reserve(slots.size());
  for (auto& s : slots) samples.push_back(std::move(*s));
  return Dataset(cfg, seed, std::move(samples));
}

Dataset generate(const ChainConfig& cfg, const GenSpec& spec) {
  cfg.validate();
  spec.validate();
  std::vector<CouplingPoint> points(spec.m);
  for (std::size_t i = 0; i < spec.m; ++i) {
    std::mt19937_64 rng(derive_seed(spec.seed, i));
    std::uniform_real_distribution<double> uniform(spec.range_lo, spec.range_hi);
    const double j = uniform(rng);
    const double delta = uniform(rng);
    points[i] = CouplingPoint{j, delta};
  }
  return make_dataset(cfg, points, spec.seed, spec.threads);
}

double balance_ratio(const Dataset& ds) {
  const auto positives = static_cast<double>(
      std::count_if(ds.samples().begin(), ds.samples().end(),
                    [](const Sample& s) { return s.label == 1; }));
  const double m = static_cast<double>(ds.size());
  return std::max(positives, m - positives) / m;
}

std::pair<Dataset, Dataset> split(const Dataset& ds, double train_frac,
                                  std::uint64_t seed) {
  if (!(train_frac > 0.0 && train_frac < 1.0)) {
    throw std::invalid_argument("train fraction must lie in (0, 1)");
  }
  const std::size_t m = ds.size();
  if (m < 2) throw std::invalid_argument("cannot split fewer than 2 samples");
  const auto n_train = static_cast<std::size_t>(std::llround(train_frac * m));
  if (n_train == 0 || n_train == m) {
    throw std::invalid_argument("split would leave one side empty");
  }
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(derive_seed(seed, 0x5EED5EEDULL));
  std::shuffle(order.begin(), order.end(), rng);
  const std::span<const std::size_t> all(order);
  return {ds.subset(all.first(n_train)), ds.subset(all.subspan(n_train))};
}

void save(const Dataset& ds, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << kCsvHeader << '\n';
  for (const Sample& s : ds.samples()) {
    out << format_double(s.point.coupling) << ',' << format_double(s.point.transverse)
        << ',' << s.label << '\n';
  }
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

Dataset load(const std::filesystem::path& path, const ChainConfig& cfg, int threads) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open dataset file " + path.string());
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("dataset file " + path.string() + " is empty");
  }
  if (trim(line) != kCsvHeader) {
    throw std::runtime_error("dataset file " + path.string() +
                             " has unexpected header '" + line + "'");
  }
  std::vector<CouplingPoint> points;
  std::vector<int> stored;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view row = trim(line);
    if (row.empty()) continue;
    const auto c1 = row.find(',');
    const auto c2 = c1 == std::string_view::npos ? c1 : row.find(',', c1 + 1);
    if (c2 == std::string_view::npos || row.find(',', c2 + 1) != std::string_view::npos) {
      throw std::runtime_error("malformed row on line " + std::to_string(lineno));
    }
    const double j = parse_double(trim(row.substr(0, c1)), lineno);
    const double delta = parse_double(trim(row.substr(c1 + 1, c2 - c1 - 1)), lineno);
    const std::string_view lab = trim(row.substr(c2 + 1));
    int label = 0;
    if (lab == "1" || lab == "+1") {
      label = 1;
    } else if (lab == "-1") {
      label = -1;
    } else {
      throw std::runtime_error("invalid label '" + std::string(lab) + "' on line " +
                               std::to_string(lineno));
    }
    points.push_back({j, delta});
    stored.push_back(label);
  }
  if (points.empty()) {
    throw std::runtime_error("dataset file " + path.string() + " has no samples");
  }
  Dataset ds = make_dataset(cfg, points, 0, threads);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (ds[i].label != stored[i]) {
      throw std::runtime_error("label mismatch on sample " + std::to_string(i) +
                               ": stored " + std::to_string(stored[i]) +
                               ", recomputed " + std::to_string(ds[i].label) +
                               " (chain config differs from the generating one?)");
    }
  }
  return ds;
}

}  // namespace qsvm
