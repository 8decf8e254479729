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
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qsvm/dataset.hpp"
#include "qsvm/spin_chain.hpp"

namespace qsvm {

/// Feature-space inner product of the ground-state doubling map
/// |Phi> = (|0>|0>|0> + |1>|psi>|psi>) / sqrt(2), which reduces to
/// (1 + <psi_i, psi_j>^2) / 2.
double feature_inner(const Eigen::VectorXd& psi_i, const Eigen::VectorXd& psi_j);
inline double feature_inner(const Wavefunction& a, const Wavefunction& b) {
  return feature_inner(a.amplitudes(), b.amplitudes());
}

/// Largest N accepted by the explicit 2^(2N+1)-dimensional constructions.
inline constexpr int kMaxExplicitSpins = 5;

/// Explicit feature vector in the |control>|reg1>|reg2> basis, control bit
/// most significant. Throws std::invalid_argument for N > kMaxExplicitSpins.
Eigen::VectorXd explicit_feature(const Eigen::VectorXd& psi);
inline Eigen::VectorXd explicit_feature(const Wavefunction& psi) {
  return explicit_feature(psi.amplitudes());
}

/// Separating direction |1>|M> - mu0 |0>|0..0> in the explicit feature basis,
/// where |M> is the vectorized (1/N)(sum_j Z_j)^2. It satisfies
/// <W, explicit_feature(psi)> = (<psi|M|psi> - mu0) / sqrt(2).
Eigen::VectorXd explicit_witness(int num_spins, double mu0);

/// True iff sign(<W, Phi(x_i)>) = y_i for every sample, with sign(0) = +1.
bool witness_check(const Dataset& ds);

/// Bit vector c in {0,1}^m indexing one structural-SVM constraint.
class ConstraintVector {
 public:
  ConstraintVector() = default;
  explicit ConstraintVector(std::size_t m, bool value = false);
  explicit ConstraintVector(std::vector<std::uint8_t> bits);

  static ConstraintVector ones(std::size_t m) { return ConstraintVector(m, true); }
  static ConstraintVector zeros(std::size_t m) { return ConstraintVector(m, false); }
  static ConstraintVector unit(std::size_t m, std::size_t i);
  /// Parses a string of '0'/'1' characters.
  static ConstraintVector from_string(std::string_view bits);

  std::size_t size() const noexcept { return bits_.size(); }
  /// ||c||_1.
  std::size_t count() const noexcept;
  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  void set(std::size_t i, bool value) { bits_.at(i) = value ? 1 : 0; }
  std::vector<std::size_t> support() const;
  std::string to_string() const;

  bool operator==(const ConstraintVector&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

enum class KernelStorage { dense, factored };

/// Gram matrix K_ij = <Phi(x_i), Phi(x_j)> together with the labels y.
///
/// Dense storage keeps the full m x m matrix. Factored storage keeps the
/// ground-state matrix and evaluates entries on demand, memoizing rows; its
/// matrix-vector products use K v = (sum(v) + diag(A^T A diag(v) A^T A)) / 2
/// in O(m 4^N). Instances are cheap to copy and safe to read concurrently.
class KernelCache {
 public:
  static KernelCache dense(Eigen::MatrixXd kernel, std::span<const int> labels);
  /// `states` holds one ground state per column.
  static KernelCache factored(Eigen::MatrixXd states, std::span<const int> labels);

  std::size_t size() const noexcept;
  KernelStorage storage() const noexcept;
  const Eigen::VectorXd& labels() const noexcept;

  double operator()(std::size_t i, std::size_t j) const;
  Eigen::VectorXd row(std::size_t i) const;
  /// K v.
  Eigen::VectorXd multiply(const Eigen::VectorXd& v) const;
  /// Full matrix; materialized on each call in factored mode.
  Eigen::MatrixXd to_dense() const;

 private:
  struct Impl;
  explicit KernelCache(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// Above this many samples gram() switches to factored storage by default.
inline constexpr std::size_t kDenseGramLimit = 4000;

/// Quantum-kernel Gram cache for a data set.
KernelCache gram(const Dataset& ds, int threads = 1);
KernelCache gram(const Dataset& ds, KernelStorage storage, int threads = 1);

/// K(u, v) = exp(-gamma ||u - v||^2) on raw (J, Delta) points.
double rbf_kernel(const CouplingPoint& u, const CouplingPoint& v, double gamma);
KernelCache rbf_gram(std::span<const CouplingPoint> points, std::span<const int> labels,
                     double gamma);

/// <Psi_c, Psi_c'> = (1/m^2) sum_{i,j} c_i c'_j y_i y_j K_ij over the supports.
double psi_inner(const ConstraintVector& c, const ConstraintVector& cp,
                 const KernelCache& cache);

struct PsiStats {
  double norm = 0.0;  // ||Psi_c||
  double eta = 0.0;   // sqrt(||c||_1 / m), unit feature norms
  std::size_t ones = 0;
};

PsiStats psi_stats(const ConstraintVector& c, const KernelCache& cache);

/// <Psi_c, y_i Phi(x_i)> = (1/m) sum_j c_j y_j y_i K_ji.
double margin_inner(const ConstraintVector& c, std::size_t i, const KernelCache& cache);

/// Vector of <Psi_c, Phi(x_i)> for all i, i.e. K (c o y) / m.
Eigen::VectorXd feature_products(const ConstraintVector& c, const KernelCache& cache);

}  // namespace qsvm
