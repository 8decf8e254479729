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

#include "qsvm/spin_chain.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qsvm {
namespace {

constexpr double kNormTolerance = 1e-10;
constexpr double kDegeneracyGap = 1e-10;

int log2_exact(std::size_t n) {
  if (n == 0 || !std::has_single_bit(n)) {
    throw std::invalid_argument("wavefunction length " + std::to_string(n) +
                                " is not a power of two");
  }
  return std::countr_zero(n);
}

// +1 for |0>, -1 for |1> on qubit `site` (0-based, site 0 = most significant).
inline double z_value(std::size_t basis, int site, int num_spins) {
  return ((basis >> (num_spins - 1 - site)) & 1U) ? -1.0 : 1.0;
}

}  // namespace

void ChainConfig::validate() const {
  if (num_spins < 2 || num_spins > 10) {
    throw std::invalid_argument("num_spins must lie in [2, 10], got " +
                                std::to_string(num_spins));
  }
  if (!(mu0 > 0.0)) {
    throw std::invalid_argument("mu0 must be positive");
  }
  if (!std::isfinite(field)) {
    throw std::invalid_argument("field must be finite");
  }
}

Wavefunction::Wavefunction(Eigen::VectorXd amplitudes)
    : amplitudes_(std::move(amplitudes)),
      num_spins_(log2_exact(static_cast<std::size_t>(amplitudes_.size()))) {
  const double norm = amplitudes_.norm();
  if (!(std::abs(norm - 1.0) <= kNormTolerance)) {
    throw std::invalid_argument("wavefunction is not normalized (norm " +
                                std::to_string(norm) + ")");
  }
}

Eigen::VectorXd canonical_sign(Eigen::VectorXd amplitudes) {
  for (Eigen::Index i = 0; i < amplitudes.size(); ++i) {
    if (amplitudes[i] != 0.0) {
      if (amplitudes[i] < 0.0) amplitudes = -amplitudes;
      break;
    }
  }
  return amplitudes;
}

CouplingProfiles coupling_profiles(const ChainConfig& cfg,
                                   const CouplingPoint& point) {
  const int n = cfg.num_spins;
  CouplingProfiles p;
  p.coupling.resize(n);
  p.transverse.resize(n);
  p.longitudinal.assign(n, cfg.field);
  for (int j = 1; j <= n; ++j) {
    p.coupling[j - 1] =
        point.coupling *
        std::cos(cfg.k_coupling * std::numbers::pi * (j - 1) / n);
    p.transverse[j - 1] =
        point.transverse * std::sin(cfg.k_transverse * std::numbers::pi * j / n);
  }
  return p;
}

Eigen::MatrixXd build_hamiltonian(std::span<const double> coupling,
                                  std::span<const double> transverse,
                                  std::span<const double> longitudinal,
                                  Boundary boundary) {
  const std::size_t n = coupling.size();
  if (transverse.size() != n || longitudinal.size() != n) {
    throw std::invalid_argument("coupling profile lengths differ");
  }
  if (n == 0 || n > 16) {
    throw std::invalid_argument("unsupported chain length " +
                                std::to_string(n));
  }
  const int spins = static_cast<int>(n);
  const std::size_t dim = std::size_t{1} << n;
  const std::size_t bonds = boundary == Boundary::periodic ? n : n - 1;

  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (std::size_t b = 0; b < dim; ++b) {
    double diag = 0.0;
    for (std::size_t j = 0; j < bonds; ++j) {
      const int next = static_cast<int>((j + 1) % n);
      diag -= coupling[j] * z_value(b, static_cast<int>(j), spins) *
              z_value(b, next, spins);
    }
    for (std::size_t j = 0; j < n; ++j) {
      diag += longitudinal[j] * z_value(b, static_cast<int>(j), spins);
    }
    h(b, b) = diag;
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t flipped = b ^ (std::size_t{1} << (n - 1 - j));
      h(flipped, b) += transverse[j];
    }
  }
  return h;
}

Wavefunction ground_state(const Eigen::MatrixXd& hamiltonian) {
  if (hamiltonian.rows() != hamiltonian.cols() || hamiltonian.rows() == 0) {
    throw std::invalid_argument("hamiltonian must be a nonempty square matrix");
  }
  const double asym = (hamiltonian - hamiltonian.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10) {
    throw std::invalid_argument("hamiltonian is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(hamiltonian);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("symmetric eigensolver did not converge");
  }
  const Eigen::VectorXd& evals = solver.eigenvalues();
  const Eigen::MatrixXd& evecs = solver.eigenvectors();

  Eigen::VectorXd best = canonical_sign(evecs.col(0));
  for (Eigen::Index k = 1; k < evals.size(); ++k) {
    if (evals[k] - evals[0] >= kDegeneracyGap) break;
    Eigen::VectorXd candidate = canonical_sign(evecs.col(k));
    if (std::lexicographical_compare(best.begin(), best.end(),
                                     candidate.begin(), candidate.end())) {
      best = std::move(candidate);
    }
  }
  best.normalize();

  const double scale = std::max(1.0, hamiltonian.norm());
  const double residual = (hamiltonian * best - evals[0] * best).norm();
  if (residual > 1e-9 * scale) {
    throw std::runtime_error("ground state residual " +
                             std::to_string(residual) + " exceeds tolerance");
  }
  return Wavefunction(std::move(best));
}

double magnetization(const Eigen::VectorXd& amplitudes) {
  const std::size_t dim = static_cast<std::size_t>(amplitudes.size());
  const int n = log2_exact(dim);
  double acc = 0.0;
  for (std::size_t b = 0; b < dim; ++b) {
    const double total_z = n - 2.0 * std::popcount(b);
    acc += amplitudes[b] * amplitudes[b] * total_z * total_z;
  }
  return acc / n;
}

int label_point(double mval, double mu0) noexcept {
  return mval >= mu0 ? 1 : -1;
}

Wavefunction solve_point(const ChainConfig& cfg, const CouplingPoint& point) {
  const CouplingProfiles p = coupling_profiles(cfg, point);
  return ground_state(
      build_hamiltonian(p.coupling, p.transverse, p.longitudinal, cfg.boundary));
}

}  // namespace qsvm
