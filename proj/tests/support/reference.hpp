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

// Independent reference computations used as test oracles. Nothing here
// calls into the library's algorithms; only plain data types are shared.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace qsvm_test {

// ---------------------------------------------------------------- physics

inline Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline Eigen::MatrixXd pauli_x() { return (Eigen::MatrixXd(2, 2) << 0, 1, 1, 0).finished(); }
inline Eigen::MatrixXd pauli_z() { return (Eigen::MatrixXd(2, 2) << 1, 0, 0, -1).finished(); }

/// Single-site operator on qubit q (0-based, qubit 0 most significant).
inline Eigen::MatrixXd site_op(const Eigen::MatrixXd& op, int q, int n) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Identity(1, 1);
  for (int s = 0; s < n; ++s) {
    out = kron(out, s == q ? op : Eigen::MatrixXd::Identity(2, 2));
  }
  return out;
}

/// H = -sum_j J_j Z_j Z_{j+1} + sum_j (D_j X_j + G_j Z_j) from tensor products.
inline Eigen::MatrixXd kron_hamiltonian(const std::vector<double>& j,
                                        const std::vector<double>& d,
                                        const std::vector<double>& g, bool periodic) {
  const int n = static_cast<int>(d.size());
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  const int bonds = periodic ? n : n - 1;
  for (int s = 0; s < bonds; ++s) {
    h -= j[static_cast<std::size_t>(s)] * site_op(pauli_z(), s, n) *
         site_op(pauli_z(), (s + 1) % n, n);
  }
  for (int s = 0; s < n; ++s) {
    h += d[static_cast<std::size_t>(s)] * site_op(pauli_x(), s, n);
    h += g[static_cast<std::size_t>(s)] * site_op(pauli_z(), s, n);
  }
  return h;
}

/// <psi| (1/N)(sum_j Z_j)^2 |psi> by explicit operator application.
inline double magnetization_by_operator(const Eigen::VectorXd& psi, int n) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXd total = Eigen::MatrixXd::Zero(dim, dim);
  for (int s = 0; s < n; ++s) total += site_op(pauli_z(), s, n);
  return psi.dot(total * (total * psi)) / n;
}

inline Eigen::VectorXd random_unit(std::mt19937_64& rng, Eigen::Index dim) {
  std::normal_distribution<double> g;
  Eigen::VectorXd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v[i] = g(rng);
  return v.normalized();
}

// ------------------------------------------------------------- statistics

/// z with P(|X| <= z) = 1 - delta for standard normal X, by bisection on erf.
inline double two_sided_z(double delta) {
  double lo = 0.0;
  double hi = 40.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (std::erf(mid / std::sqrt(2.0)) < 1.0 - delta) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// ------------------------------------------------------------------- QPs

/// max sum(a) - 1/2 a^T Q a over 0 <= a <= upper, Q_ij = y_i y_j K_ij, by
/// exact coordinate ascent until the box Frank-Wolfe gap is below `gap_tol`.
/// Returns the optimal value, which equals the soft-margin primal optimum
///   min 1/2 ||w||^2 + upper * sum_i xi_i.
inline double box_dual_optimum(const Eigen::MatrixXd& k, const Eigen::VectorXd& y, double upper,
                               double gap_tol = 1e-12, Eigen::VectorXd* out = nullptr) {
  const Eigen::Index m = y.size();
  const Eigen::MatrixXd q = y.asDiagonal() * k * y.asDiagonal();
  Eigen::VectorXd a = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd g = Eigen::VectorXd::Ones(m);  // 1 - Q a
  for (int sweep = 0; sweep < 2000000; ++sweep) {
    for (Eigen::Index i = 0; i < m; ++i) {
      const double next =
          q(i, i) > 0.0 ? std::clamp(a[i] + g[i] / q(i, i), 0.0, upper) : (g[i] > 0 ? upper : 0.0);
      const double step = next - a[i];
      if (step != 0.0) {
        a[i] = next;
        g -= step * q.col(i);
      }
    }
    double gap = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) gap += g[i] > 0 ? g[i] * (upper - a[i]) : -g[i] * a[i];
    if (gap <= gap_tol) break;
  }
  if (out != nullptr) *out = a;
  return a.sum() - 0.5 * a.dot(q * a);
}

/// max -1/2 a^T J a + b^T a over {a >= 0, sum a <= budget} by pairwise
/// Frank-Wolfe on the simplex with a slack vertex. Stops when the FW gap,
/// an upper bound on suboptimality, is below `gap_tol`.
inline double capped_simplex_optimum(const Eigen::MatrixXd& j, const Eigen::VectorXd& b,
                                     double budget, double gap_tol = 1e-11,
                                     Eigen::VectorXd* out = nullptr,
                                     long long max_iter = 20000000) {
  const Eigen::Index k = b.size();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(k + 1);  // last = slack
  x[k] = budget;
  Eigen::VectorXd g = Eigen::VectorXd::Zero(k + 1);
  g.head(k) = b;
  for (long long it = 0; it < max_iter; ++it) {
    Eigen::Index s = 0;
    g.maxCoeff(&s);
    Eigen::Index v = -1;
    for (Eigen::Index t = 0; t <= k; ++t) {
      if (x[t] > 0.0 && (v < 0 || g[t] < g[v])) v = t;
    }
    const double gap = budget * g[s] - g.dot(x);
    if (gap <= gap_tol || s == v) break;
    const double jss = s < k ? j(s, s) : 0.0;
    const double jvv = v < k ? j(v, v) : 0.0;
    const double jsv = (s < k && v < k) ? j(s, v) : 0.0;
    const double curv = jss + jvv - 2.0 * jsv;
    const double slope = g[s] - g[v];
    double step = x[v];
    if (curv > 0.0) step = std::min(step, slope / curv);
    x[s] += step;
    x[v] -= step;
    if (x[v] < 1e-300) x[v] = 0.0;
    if (s < k) g.head(k) -= step * j.col(s);
    if (v < k) g.head(k) += step * j.col(v);
    if (it % 1000 == 999) g.head(k) = b - j * x.head(k);
  }
  const Eigen::VectorXd a = x.head(k);
  if (out != nullptr) *out = a;
  return -0.5 * a.dot(j * a) + b.dot(a);
}

/// All 2^m bit vectors' Gram block J_cc' = (1/m^2) (c o y)^T K (c' o y) and
/// offsets b_c = |c|/m, with c indexed by its integer value.
inline void enumerate_structural_dual(const Eigen::MatrixXd& k, const Eigen::VectorXd& y,
                                      Eigen::MatrixXd& j, Eigen::VectorXd& b) {
  const Eigen::Index m = y.size();
  const Eigen::Index n = Eigen::Index{1} << m;
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, m);
  b.resize(n);
  for (Eigen::Index c = 0; c < n; ++c) {
    int ones = 0;
    for (Eigen::Index i = 0; i < m; ++i) {
      if ((c >> i) & 1) {
        g(c, i) = y[i] / static_cast<double>(m);
        ++ones;
      }
    }
    b[c] = static_cast<double>(ones) / static_cast<double>(m);
  }
  j = g * k * g.transpose();
}

/// Coarse-to-fine grid maximization of -1/2 a^T J a + b^T a over
/// {a >= 0, sum a <= budget}; the finest level has spacing `resolution`.
/// One coordinate at a time is solved in closed form given the others, so
/// faces of the feasible set are hit exactly; the best over all choices wins.
inline double grid_optimum(const Eigen::MatrixXd& j, const Eigen::VectorXd& b, double budget,
                           double resolution = 1e-3) {
  const int k = static_cast<int>(b.size());
  auto value = [&](const Eigen::VectorXd& a) { return -0.5 * a.dot(j * a) + b.dot(a); };
  double best = 0.0;  // a = 0
  for (int free = 0; free < k; ++free) {
    std::vector<int> grid_idx;
    for (int i = 0; i < k; ++i) {
      if (i != free) grid_idx.push_back(i);
    }
    const int d = static_cast<int>(grid_idx.size());
    auto complete = [&](Eigen::VectorXd& a) {
      double used = 0.0;
      for (int i : grid_idx) used += a[i];
      const double cap = budget - used;
      if (cap < -1e-12) return -std::numeric_limits<double>::infinity();
      double lin = b[free];
      for (int i : grid_idx) lin -= j(free, i) * a[i];
      double t = j(free, free) > 0.0 ? lin / j(free, free) : (lin > 0 ? cap : 0.0);
      a[free] = std::clamp(t, 0.0, std::max(cap, 0.0));
      return value(a);
    };
    Eigen::VectorXd center = Eigen::VectorXd::Zero(k);
    double step = std::max(budget / 50.0, resolution);
    double half_width = budget;
    double level_best = -std::numeric_limits<double>::infinity();
    while (true) {
      const Eigen::VectorXd c0 = center;
      std::vector<std::vector<double>> axes(static_cast<std::size_t>(d));
      for (int q = 0; q < d; ++q) {
        const double lo = std::max(0.0, c0[grid_idx[static_cast<std::size_t>(q)]] - half_width);
        const double hi =
            std::min(budget, c0[grid_idx[static_cast<std::size_t>(q)]] + half_width);
        const double start = std::ceil(lo / step - 1e-9) * step;
        for (double v = start; v <= hi + 1e-12; v += step) axes[static_cast<std::size_t>(q)].push_back(v);
        if (axes[static_cast<std::size_t>(q)].empty()) axes[static_cast<std::size_t>(q)].push_back(lo);
      }
      std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
      Eigen::VectorXd a = Eigen::VectorXd::Zero(k);
      while (true) {
        for (int q = 0; q < d; ++q) {
          a[grid_idx[static_cast<std::size_t>(q)]] =
              axes[static_cast<std::size_t>(q)][idx[static_cast<std::size_t>(q)]];
        }
        const double v = complete(a);
        if (v > level_best) {
          level_best = v;
          center = a;
        }
        int q = 0;
        for (; q < d; ++q) {
          if (++idx[static_cast<std::size_t>(q)] < axes[static_cast<std::size_t>(q)].size()) break;
          idx[static_cast<std::size_t>(q)] = 0;
        }
        if (q == d) break;
      }
      if (step <= resolution * (1.0 + 1e-9)) break;
      half_width = 2.0 * step;
      step = std::max(step / 10.0, resolution);
    }
    best = std::max(best, level_best);
  }
  return best;
}

}  // namespace qsvm_test
