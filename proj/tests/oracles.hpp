// Copyright (c) 2026 sgep contributors
// Licensed under Apache 2.0
//
// Test-only reference oracles: dense (generalized) eigendecompositions,
// brute-force maximizers, finite differences. These deliberately use
// factorizations so they stay independent of the factorization-free
// implementation paths they check.
#pragma once

#include "sgep/types.hpp"

#include <Eigen/Dense>

#include <random>
#include <vector>

namespace oracle {

using sgep::Matrix;
using sgep::Vector;

// Largest generalized eigenvalue of (A, B), B SPD, via dense decomposition.
inline double leading_gen_eigenvalue(const Matrix& a, const Matrix& b) {
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver{Eigen::MatrixXd(a),
                                                                   Eigen::MatrixXd(b)};
  return solver.eigenvalues().maxCoeff();
}

inline Vector leading_gen_eigenvector(const Matrix& a, const Matrix& b) {
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver{Eigen::MatrixXd(a),
                                                                   Eigen::MatrixXd(b)};
  Eigen::Index best;
  solver.eigenvalues().maxCoeff(&best);
  Vector x = solver.eigenvectors().col(best);
  return x / std::sqrt(x.dot(b * x));
}

inline Vector all_gen_eigenvalues_sorted(const Matrix& a, const Matrix& b) {
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver{Eigen::MatrixXd(a),
                                                                   Eigen::MatrixXd(b)};
  Vector v = solver.eigenvalues();
  std::sort(v.data(), v.data() + v.size());
  return v;
}

inline double min_eigenvalue(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver{Eigen::MatrixXd(a)};
  return solver.eigenvalues().minCoeff();
}

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline Vector random_vector(int n, std::mt19937_64& gen) {
  std::normal_distribution<double> normal;
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = normal(gen);
  return v;
}

inline Matrix random_matrix(int rows, int cols, std::mt19937_64& gen) {
  std::normal_distribution<double> normal;
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = normal(gen);
  return m;
}

// Random symmetric pair: A = C + C', B = D'D + n*I (well inside SPD).
inline std::pair<Matrix, Matrix> random_pair(int n, std::uint64_t seed) {
  auto gen = rng(seed);
  Matrix c = random_matrix(n, n, gen);
  Matrix d = random_matrix(n, n, gen);
  Matrix a = c + Matrix(c.transpose());
  Matrix b = d.transpose() * d + static_cast<double>(n) * Matrix::Identity(n, n);
  return {a, b};
}

inline Vector random_feasible(const Matrix& b, std::mt19937_64& gen) {
  Vector x = random_vector(static_cast<int>(b.rows()), gen);
  return x / std::sqrt(x.dot(b * x));
}

// Brute-force maximum of a'x - rho*||x||_0 on the unit sphere: the support
// maximum is ||a_S||_2 - rho*|S| (or -rho for a zero block), enumerated over
// all supports.
inline double l0_sphere_brute_force(const Vector& a, double rho) {
  const int n = static_cast<int>(a.size());
  double best = -std::numeric_limits<double>::infinity();
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    double norm2 = 0;
    int size = 0;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) {
        norm2 += a[i] * a[i];
        ++size;
      }
    best = std::max(best, std::sqrt(norm2) - rho * size);
  }
  return best;
}

}  // namespace oracle
