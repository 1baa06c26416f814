// Copyright (c) 2026 sgep contributors
// Licensed under Apache 2.0
//
// Seeded synthetic instance generators for the three experiment data models:
// random pairs A = C + C', B = D'D; planted generalized eigenstructure
// A = V^{-T} Diag(d) V^{-1}, B = V^{-T} V^{-1} with sparse leading columns
// of V; and sparse-PCA samples drawn from a covariance with sparse leading
// eigenvectors.
//
// Randomness: every generator is a pure function of (spec, seed) using
// std::mt19937_64. Independent streams for trials are derived with
// stream_seed (a splitmix64 mix), so concurrent trial generation never
// shares generator state. Draws are bitwise reproducible within one
// implementation; across implementations only the distributions are pinned.
#pragma once

#include "sgep/types.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace sgep::datagen {

/// Derived seed for sub-stream `index` of `base` (splitmix64 of base + index).
std::uint64_t stream_seed(std::uint64_t base, std::uint64_t index);

/// A = C + C' with C n x n, B = D'D with D ceil(1.2 n) x n, entries iid
/// standard normal. B is positive definite with probability one.
ProblemInstance gen_random_pair(int n, std::uint64_t seed);

/// Planted model spec. `sparse_cols` gives (index set, value) patterns for
/// the leading columns of V; `fixed_d` the leading generalized eigenvalues;
/// the remaining d_i are resampled N(0,1) per call.
struct PlantedSpec {
  int n = 100;
  std::vector<std::pair<std::vector<int>, double>> sparse_cols;
  std::vector<double> fixed_d;
  std::uint64_t seed = 0;

  /// n=100, V_{1..5,1} = V_{6..10,2} = 1/sqrt(5), d = (10, 8, 12, 12, 12),
  /// remaining d_i ~ N(0,1).
  static PlantedSpec defaults(std::uint64_t seed, int n = 100);
};

struct PlantedInstance {
  ProblemInstance problem;
  Matrix v;  // full n x n matrix whose columns are the generalized eigenvectors
  Vector d;  // generalized eigenvalues, d_i for column i
};

/// Builds V (specified sparse leading columns, random remaining columns) and
/// forms the pair by linear solves against V. Throws SingularV after bounded
/// retries if the random completion is numerically singular.
PlantedInstance gen_planted_gep(const PlantedSpec& spec);

struct SparsePcaSpec {
  int n = 500;
  int m = 50;
  std::vector<std::pair<std::vector<int>, double>> sparse_cols;
  std::vector<double> d_leading;
  double d_fill = 1.0;
  std::uint64_t seed = 0;

  /// n=500, m=50, V_{1..10,1} = V_{11..20,2} = 1/sqrt(10), d1=400, d2=300,
  /// d_i = 1 otherwise.
  static SparsePcaSpec defaults(std::uint64_t seed, int n = 500, int m = 50);
};

struct SparsePcaData {
  Matrix c;          // m x n data matrix, rows iid N(0, Sigma)
  Matrix v_leading;  // n x k specified eigenvectors
  Vector d;          // full eigenvalue vector of Sigma
};

/// Sigma = V Diag(d) V' with the specified orthonormal sparse leading
/// columns and a random orthonormal completion; rows are drawn via
/// Sigma^{1/2} = V Diag(sqrt(d)) V'. Throws NotOrthonormal if the given
/// columns are not orthonormal within 1e-10.
SparsePcaData gen_sparse_pca_data(const SparsePcaSpec& spec);

}  // namespace sgep::datagen
