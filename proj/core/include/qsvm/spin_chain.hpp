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
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qsvm {

enum class Boundary { periodic, open };

/// Parameters of the generalized Ising chain used to generate data sets.
///
/// The per-site profiles are J_j = J cos(k_J pi (j-1) / N),
/// Delta_j = Delta sin(k_Delta pi j / N) and Gamma_j = Gamma, j = 1..N.
struct ChainConfig {
  int num_spins = 6;
  int k_coupling = 1;
  int k_transverse = 9;
  double field = 0.2;
  double mu0 = 1.8;
  Boundary boundary = Boundary::periodic;

  /// Throws std::invalid_argument unless 2 <= num_spins <= 10 and mu0 > 0.
  void validate() const;

  bool operator==(const ChainConfig&) const = default;
};

/// The two sampled parameters (J, Delta) of one data point.
struct CouplingPoint {
  double coupling = 0.0;
  double transverse = 0.0;

  bool operator==(const CouplingPoint&) const = default;
};

struct CouplingProfiles {
  std::vector<double> coupling;      // J_j
  std::vector<double> transverse;    // Delta_j (Pauli X amplitude)
  std::vector<double> longitudinal;  // Gamma_j (Pauli Z amplitude)
};

/// Real, unit-norm state vector over 2^N computational basis states.
///
/// Qubit 1 is the most significant bit of the basis index. Z acts as +1 on
/// |0> and -1 on |1>.
class Wavefunction {
 public:
  /// Throws std::invalid_argument if the length is not a power of two or the
  /// norm differs from one by more than 1e-10.
  explicit Wavefunction(Eigen::VectorXd amplitudes);

  const Eigen::VectorXd& amplitudes() const noexcept { return amplitudes_; }
  std::size_t dimension() const noexcept {
    return static_cast<std::size_t>(amplitudes_.size());
  }
  int num_spins() const noexcept { return num_spins_; }

 private:
  Eigen::VectorXd amplitudes_;
  int num_spins_;
};

/// Flips the global sign so that the first nonzero amplitude is positive.
Eigen::VectorXd canonical_sign(Eigen::VectorXd amplitudes);

CouplingProfiles coupling_profiles(const ChainConfig& cfg,
                                   const CouplingPoint& point);

/// H = -sum_j J_j Z_j Z_{j+1} + sum_j (Delta_j X_j + Gamma_j Z_j).
///
/// Periodic boundaries identify Z_{N+1} with Z_1; open boundaries drop the
/// j = N bond. Throws std::invalid_argument on mismatched profile lengths.
Eigen::MatrixXd build_hamiltonian(std::span<const double> coupling,
                                  std::span<const double> transverse,
                                  std::span<const double> longitudinal,
                                  Boundary boundary);

/// Lowest eigenvector of a real symmetric matrix with the sign convention
/// applied. Degenerate ground spaces resolve to the lexicographically
/// largest canonical eigenvector among the solver's degenerate columns.
/// Throws std::runtime_error if the eigensolver fails.
Wavefunction ground_state(const Eigen::MatrixXd& hamiltonian);

/// <M> with M = (1/N) (sum_j Z_j)^2, a diagonal operator in the
/// computational basis.
double magnetization(const Eigen::VectorXd& amplitudes);
inline double magnetization(const Wavefunction& psi) {
  return magnetization(psi.amplitudes());
}

/// +1 when mval >= mu0, -1 otherwise.
int label_point(double mval, double mu0) noexcept;

/// Ground state of the chain at one coupling point.
Wavefunction solve_point(const ChainConfig& cfg, const CouplingPoint& point);

}  // namespace qsvm
