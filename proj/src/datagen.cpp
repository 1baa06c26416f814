// Copyright (c) 2026 sgep contributors
// Licensed under Apache 2.0

#include "sgep/datagen.hpp"

#include <Eigen/LU>

#include <cmath>
#include <random>
#include <sstream>

namespace sgep::datagen {

std::uint64_t stream_seed(std::uint64_t base, std::uint64_t index) {
  // splitmix64 of base + (index+1) * golden ratio increment.
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

// Row-by-row fill; the traversal order is part of the reproducibility
// contract within this implementation.
void fill_normal(Matrix& m, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = normal(rng);
}

}  // namespace

ProblemInstance gen_random_pair(int n, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::DimensionMismatch, "n must be >= 1");
  std::mt19937_64 rng(seed);
  Matrix c(n, n);
  fill_normal(c, rng);
  const int rows_d = static_cast<int>(std::ceil(1.2 * n));
  Matrix d(rows_d, n);
  fill_normal(d, rng);
  Matrix a = c + Matrix(c.transpose());
  Matrix b = d.transpose() * d;
  return ProblemInstance::validate_and_symmetrize(a, b);
}

PlantedSpec PlantedSpec::defaults(std::uint64_t seed, int n) {
  PlantedSpec spec;
  spec.n = n;
  spec.seed = seed;
  const double v = 1.0 / std::sqrt(5.0);
  spec.sparse_cols = {{{0, 1, 2, 3, 4}, v}, {{5, 6, 7, 8, 9}, v}};
  spec.fixed_d = {10.0, 8.0, 12.0, 12.0, 12.0};
  return spec;
}

PlantedInstance gen_planted_gep(const PlantedSpec& spec) {
  const int n = spec.n;
  const int k = static_cast<int>(spec.sparse_cols.size());
  if (n < 1 || k > n)
    throw Error(ErrorCode::DimensionMismatch, "invalid planted spec dimensions");
  if (static_cast<int>(spec.fixed_d.size()) > n)
    throw Error(ErrorCode::DimensionMismatch, "more fixed eigenvalues than dimensions");

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal;

  Matrix v = Matrix::Zero(n, n);
  for (int j = 0; j < k; ++j) {
    const auto& [indices, value] = spec.sparse_cols[j];
    for (int idx : indices) {
      if (idx < 0 || idx >= n)
        throw Error(ErrorCode::DimensionMismatch, "sparse column index out of range");
      v(idx, j) = value;
    }
  }

  Matrix v_inv;
  bool ok = false;
  for (int attempt = 0; attempt < 5 && !ok; ++attempt) {
    // Random columns are standard normal projected onto the orthogonal
    // complement of the planted sparse columns. The projection keeps every
    // planted vector an exact stationary point of the penalized problem
    // (B V_(:,j) stays supported on the planted pattern), which is what
    // makes exact recovery under the 0.01 rule attainable at all.
    for (Eigen::Index j = k; j < n; ++j) {
      for (Eigen::Index i = 0; i < n; ++i) v(i, j) = normal(rng);
      for (int pass = 0; pass < 2; ++pass)
        for (int l = 0; l < k; ++l) {
          const double proj = v.col(l).dot(v.col(j)) / v.col(l).squaredNorm();
          v.col(j) -= proj * v.col(l);
        }
    }
    Eigen::PartialPivLU<Matrix> lu(v);
    v_inv = lu.solve(Matrix::Identity(n, n));
    ok = (v * v_inv - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-6;
  }
  if (!ok) throw Error(ErrorCode::SingularV, "could not complete V to a well-conditioned basis");

  Vector d(n);
  for (int i = 0; i < n; ++i)
    d[i] = i < static_cast<int>(spec.fixed_d.size()) ? spec.fixed_d[i] : normal(rng);

  Matrix b_raw = v_inv.transpose() * v_inv;
  Matrix a_raw = v_inv.transpose() * d.asDiagonal() * v_inv;

  PlantedInstance out{ProblemInstance::validate_and_symmetrize(a_raw, b_raw), std::move(v),
                      std::move(d)};
  return out;
}

SparsePcaSpec SparsePcaSpec::defaults(std::uint64_t seed, int n, int m) {
  SparsePcaSpec spec;
  spec.n = n;
  spec.m = m;
  spec.seed = seed;
  const double v = 1.0 / std::sqrt(10.0);
  spec.sparse_cols = {{{0, 1, 2, 3, 4, 5, 6, 7, 8, 9}, v},
                      {{10, 11, 12, 13, 14, 15, 16, 17, 18, 19}, v}};
  spec.d_leading = {400.0, 300.0};
  spec.d_fill = 1.0;
  return spec;
}

SparsePcaData gen_sparse_pca_data(const SparsePcaSpec& spec) {
  const int n = spec.n;
  const int m = spec.m;
  const int k = static_cast<int>(spec.sparse_cols.size());
  if (n < 1 || m < 1 || k > n)
    throw Error(ErrorCode::DimensionMismatch, "invalid sparse-PCA spec dimensions");

  Matrix v = Matrix::Zero(n, n);
  for (int j = 0; j < k; ++j) {
    const auto& [indices, value] = spec.sparse_cols[j];
    for (int idx : indices) {
      if (idx < 0 || idx >= n)
        throw Error(ErrorCode::DimensionMismatch, "sparse column index out of range");
      v(idx, j) = value;
    }
  }
  Matrix gram = v.leftCols(k).transpose() * v.leftCols(k);
  if ((gram - Matrix::Identity(k, k)).cwiseAbs().maxCoeff() > 1e-10)
    throw Error(ErrorCode::NotOrthonormal, "specified sparse columns are not orthonormal");

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal;

  // Random orthonormal completion: Gaussian columns, two Gram-Schmidt passes
  // against everything accepted so far.
  for (int j = k; j < n; ++j) {
    for (int attempt = 0;; ++attempt) {
      Vector col(n);
      for (int i = 0; i < n; ++i) col[i] = normal(rng);
      for (int pass = 0; pass < 2; ++pass)
        for (int l = 0; l < j; ++l) col -= v.col(l).dot(col) * v.col(l);
      const double norm = col.norm();
      if (norm > 1e-8) {
        v.col(j) = col / norm;
        break;
      }
      if (attempt >= 4)
        throw Error(ErrorCode::SingularV, "orthonormal completion failed");
    }
  }

  Vector d(n);
  for (int i = 0; i < n; ++i)
    d[i] = i < static_cast<int>(spec.d_leading.size()) ? spec.d_leading[i] : spec.d_fill;
  if (d.minCoeff() < 0)
    throw Error(ErrorCode::InvalidConfig, "covariance eigenvalues must be nonnegative");
  const Vector d_sqrt = d.array().sqrt();

  // Rows iid N(0, Sigma) via Sigma^{1/2} z = V Diag(sqrt(d)) V' z.
  Matrix c(m, n);
  Vector z(n), t(n);
  for (int row = 0; row < m; ++row) {
    for (int i = 0; i < n; ++i) z[i] = normal(rng);
    t.noalias() = v.transpose() * z;
    t.array() *= d_sqrt.array();
    c.row(row).noalias() = (v * t).transpose();
  }

  SparsePcaData out;
  out.c = std::move(c);
  out.v_leading = v.leftCols(k);
  out.d = std::move(d);
  return out;
}

}  // namespace sgep::datagen
