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

#include "qsvm/feature_kernel.hpp"

#include <bit>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qsvm/parallel.hpp"

namespace qsvm {

double feature_inner(const Eigen::VectorXd& psi_i, const Eigen::VectorXd& psi_j) {
  if (psi_i.size() != psi_j.size()) {
    throw std::invalid_argument("feature_inner: state dimensions differ");
  }
  const double overlap = psi_i.dot(psi_j);
  return 0.5 * (1.0 + overlap * overlap);
}

Eigen::VectorXd explicit_feature(const Eigen::VectorXd& psi) {
  const auto dim = static_cast<std::size_t>(psi.size());
  if (dim == 0 || !std::has_single_bit(dim)) {
    throw std::invalid_argument("explicit_feature: length is not a power of two");
  }
  if (std::countr_zero(dim) > kMaxExplicitSpins) {
    throw std::invalid_argument("explicit_feature: at most " +
                                std::to_string(kMaxExplicitSpins) + " spins supported");
  }
  const double s = 1.0 / std::numbers::sqrt2;
  Eigen::VectorXd phi = Eigen::VectorXd::Zero(2 * dim * dim);
  phi[0] = s;
  const Eigen::Index offset = static_cast<Eigen::Index>(dim * dim);
  for (Eigen::Index r1 = 0; r1 < psi.size(); ++r1) {
    for (Eigen::Index r2 = 0; r2 < psi.size(); ++r2) {
      phi[offset + r1 * psi.size() + r2] = s * psi[r1] * psi[r2];
    }
  }
  return phi;
}

Eigen::VectorXd explicit_witness(int num_spins, double mu0) {
  if (num_spins < 1 || num_spins > kMaxExplicitSpins) {
    throw std::invalid_argument("explicit_witness: unsupported spin count " +
                                std::to_string(num_spins));
  }
  const Eigen::Index dim = Eigen::Index{1} << num_spins;
  Eigen::VectorXd w = Eigen::VectorXd::Zero(2 * dim * dim);
  w[0] = -mu0;
  for (Eigen::Index b = 0; b < dim; ++b) {
    const double total_z = num_spins - 2.0 * std::popcount(static_cast<std::uint64_t>(b));
    w[dim * dim + b * dim + b] = total_z * total_z / num_spins;
  }
  return w;
}

bool witness_check(const Dataset& ds) {
  const Eigen::VectorXd w = explicit_witness(ds.config().num_spins, ds.config().mu0);
  for (const Sample& s : ds.samples()) {
    const double value = w.dot(explicit_feature(s.psi));
    const int sign = value >= 0.0 ? 1 : -1;
    if (sign != s.label) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

ConstraintVector::ConstraintVector(std::size_t m, bool value)
    : bits_(m, value ? 1 : 0) {}

ConstraintVector::ConstraintVector(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto& b : bits_) b = b ? 1 : 0;
}

ConstraintVector ConstraintVector::unit(std::size_t m, std::size_t i) {
  ConstraintVector c(m);
  c.set(i, true);
  return c;
}

ConstraintVector ConstraintVector::from_string(std::string_view bits) {
  std::vector<std::uint8_t> out;
  out.reserve(bits.size());
  for (char ch : bits) {
    if (ch != '0' && ch != '1') {
      throw std::invalid_argument("constraint bitstring may only contain 0 and 1");
    }
    out.push_back(ch == '1' ? 1 : 0);
  }
  return ConstraintVector(std::move(out));
}

std::size_t ConstraintVector::count() const noexcept {
  std::size_t n = 0;
  for (auto b : bits_) n += b;
  return n;
}

std::vector<std::size_t> ConstraintVector::support() const {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) idx.push_back(i);
  }
  return idx;
}

std::string ConstraintVector::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) s[i] = '1';
  }
  return s;
}

// ---------------------------------------------------------------------------

struct KernelCache::Impl {
  KernelStorage storage = KernelStorage::dense;
  Eigen::VectorXd labels;
  Eigen::MatrixXd dense;   // dense storage
  Eigen::MatrixXd states;  // factored storage, one state per column
  mutable std::mutex memo_mutex;
  mutable std::vector<std::shared_ptr<const Eigen::VectorXd>> memo;
};

namespace {

Eigen::VectorXd to_label_vector(std::span<const int> labels) {
  Eigen::VectorXd y(static_cast<Eigen::Index>(labels.size()));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != 1 && labels[i] != -1) {
      throw std::invalid_argument("labels must be +1 or -1");
    }
    y[static_cast<Eigen::Index>(i)] = labels[i];
  }
  return y;
}

}  // namespace

KernelCache KernelCache::dense(Eigen::MatrixXd kernel, std::span<const int> labels) {
  if (kernel.rows() != kernel.cols() ||
      static_cast<std::size_t>(kernel.rows()) != labels.size() || labels.empty()) {
    throw std::invalid_argument("kernel matrix and labels disagree in size");
  }
  auto impl = std::make_shared<Impl>();
  impl->storage = KernelStorage::dense;
  impl->labels = to_label_vector(labels);
  impl->dense = std::move(kernel);
  return KernelCache(std::move(impl));
}

KernelCache KernelCache::factored(Eigen::MatrixXd states, std::span<const int> labels) {
  if (static_cast<std::size_t>(states.cols()) != labels.size() || labels.empty()) {
    throw std::invalid_argument("state matrix and labels disagree in size");
  }
  auto impl = std::make_shared<Impl>();
  impl->storage = KernelStorage::factored;
  impl->labels = to_label_vector(labels);
  impl->states = std::move(states);
  impl->memo.resize(labels.size());
  return KernelCache(std::move(impl));
}

std::size_t KernelCache::size() const noexcept {
  return static_cast<std::size_t>(impl_->labels.size());
}

KernelStorage KernelCache::storage() const noexcept { return impl_->storage; }

const Eigen::VectorXd& KernelCache::labels() const noexcept { return impl_->labels; }

double KernelCache::operator()(std::size_t i, std::size_t j) const {
  const auto a = static_cast<Eigen::Index>(i);
  const auto b = static_cast<Eigen::Index>(j);
  if (impl_->storage == KernelStorage::dense) return impl_->dense(a, b);
  const double g = impl_->states.col(a).dot(impl_->states.col(b));
  return 0.5 * (1.0 + g * g);
}

Eigen::VectorXd KernelCache::row(std::size_t i) const {
  const auto a = static_cast<Eigen::Index>(i);
  if (impl_->storage == KernelStorage::dense) return impl_->dense.row(a).transpose();
  {
    std::lock_guard lock(impl_->memo_mutex);
    if (impl_->memo.at(i)) return *impl_->memo[i];
  }
  Eigen::VectorXd g = impl_->states.transpose() * impl_->states.col(a);
  auto computed = std::make_shared<const Eigen::VectorXd>(
      (0.5 * (1.0 + g.array().square())).matrix());
  std::lock_guard lock(impl_->memo_mutex);
  if (!impl_->memo[i]) impl_->memo[i] = computed;
  return *impl_->memo[i];
}

Eigen::VectorXd KernelCache::multiply(const Eigen::VectorXd& v) const {
  if (v.size() != impl_->labels.size()) {
    throw std::invalid_argument("kernel multiply: vector length mismatch");
  }
  if (impl_->storage == KernelStorage::dense) {
    return impl_->dense.selfadjointView<Eigen::Lower>() * v;
  }
  const Eigen::MatrixXd& a = impl_->states;
  const Eigen::MatrixXd weighted = a * v.asDiagonal() * a.transpose();
  const Eigen::VectorXd quad = (a.array() * (weighted * a).array()).colwise().sum();
  return (0.5 * (v.sum() + quad.array())).matrix();
}

Eigen::MatrixXd KernelCache::to_dense() const {
  if (impl_->storage == KernelStorage::dense) return impl_->dense;
  Eigen::MatrixXd g = impl_->states.transpose() * impl_->states;
  return (0.5 * (1.0 + g.array().square())).matrix();
}

KernelCache gram(const Dataset& ds, int threads) {
  return gram(ds, ds.size() > kDenseGramLimit ? KernelStorage::factored
                                              : KernelStorage::dense,
              threads);
}

KernelCache gram(const Dataset& ds, KernelStorage storage, int threads) {
  const std::size_t m = ds.size();
  const auto dim = static_cast<Eigen::Index>(ds[0].psi.dimension());
  Eigen::MatrixXd states(dim, static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i) {
    states.col(static_cast<Eigen::Index>(i)) = ds[i].psi.amplitudes();
  }
  const std::vector<int> labels = ds.labels();
  if (storage == KernelStorage::factored) {
    return KernelCache::factored(std::move(states), labels);
  }
  Eigen::MatrixXd k(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  parallel_for(m, threads, [&](std::size_t i) {
    const auto a = static_cast<Eigen::Index>(i);
    for (Eigen::Index b = 0; b <= a; ++b) {
      const double g = states.col(a).dot(states.col(b));
      const double v = 0.5 * (1.0 + g * g);
      k(a, b) = v;
      k(b, a) = v;
    }
  });
  return KernelCache::dense(std::move(k), labels);
}

double rbf_kernel(const CouplingPoint& u, const CouplingPoint& v, double gamma) {
  const double dj = u.coupling - v.coupling;
  const double dd = u.transverse - v.transverse;
  return std::exp(-gamma * (dj * dj + dd * dd));
}

KernelCache rbf_gram(std::span<const CouplingPoint> points, std::span<const int> labels,
                     double gamma) {
  const auto m = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd k(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    k(a, a) = 1.0;
    for (Eigen::Index b = 0; b < a; ++b) {
      const double v = rbf_kernel(points[a], points[b], gamma);
      k(a, b) = v;
      k(b, a) = v;
    }
  }
  return KernelCache::dense(std::move(k), labels);
}

// ---------------------------------------------------------------------------

double psi_inner(const ConstraintVector& c, const ConstraintVector& cp,
                 const KernelCache& cache) {
  const std::size_t m = cache.size();
  if (c.size() != m || cp.size() != m) {
    throw std::invalid_argument("psi_inner: constraint length does not match data");
  }
  const Eigen::VectorXd& y = cache.labels();
  const std::vector<std::size_t> si = c.support();
  const std::vector<std::size_t> sj = cp.support();
  double acc = 0.0;
  for (std::size_t i : si) {
    double inner = 0.0;
    for (std::size_t j : sj) inner += y[static_cast<Eigen::Index>(j)] * cache(i, j);
    acc += y[static_cast<Eigen::Index>(i)] * inner;
  }
  const double md = static_cast<double>(m);
  return acc / (md * md);
}

PsiStats psi_stats(const ConstraintVector& c, const KernelCache& cache) {
  PsiStats s;
  s.ones = c.count();
  s.norm = std::sqrt(std::max(psi_inner(c, c, cache), 0.0));
  s.eta = std::sqrt(static_cast<double>(s.ones) / static_cast<double>(cache.size()));
  return s;
}

double margin_inner(const ConstraintVector& c, std::size_t i, const KernelCache& cache) {
  const std::size_t m = cache.size();
  if (c.size() != m) {
    throw std::invalid_argument("margin_inner: constraint length does not match data");
  }
  if (i >= m) throw std::out_of_range("margin_inner: sample index out of range");
  const Eigen::VectorXd& y = cache.labels();
  double acc = 0.0;
  for (std::size_t j : c.support()) acc += y[static_cast<Eigen::Index>(j)] * cache(j, i);
  return y[static_cast<Eigen::Index>(i)] * acc / static_cast<double>(m);
}

Eigen::VectorXd feature_products(const ConstraintVector& c, const KernelCache& cache) {
  const std::size_t m = cache.size();
  if (c.size() != m) {
    throw std::invalid_argument("feature_products: constraint length does not match data");
  }
  Eigen::VectorXd weights = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
  for (std::size_t j : c.support()) {
    weights[static_cast<Eigen::Index>(j)] = cache.labels()[static_cast<Eigen::Index>(j)];
  }
  return cache.multiply(weights) / static_cast<double>(m);
}

}  // namespace qsvm
