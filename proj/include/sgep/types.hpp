// Copyright (c) 2026 sgep contributors
// Licensed under Apache 2.0
//
// Core value types for sparse generalized eigenvalue problems: the matrix
// pair, penalty and solver configurations, solve reports, and the structural
// transformations (complex-to-real embedding, PSD diagonal shift).
#pragma once

#include <Eigen/Core>

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sgep {

// Dense row-major storage throughout; the design envelope is n up to ~5000.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexMatrix =
    Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

enum class ErrorCode {
  DimensionMismatch,
  NonFiniteEntry,
  ExcessiveAsymmetry,
  NotHermitian,
  NonPositiveB,
  NotDiagonalB,
  NotOrthonormal,
  InfeasibleStart,
  ZeroResidual,
  SingularV,
  LinearSolveFailure,
  InvalidConfig,
  IoError,
  ParseError,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

enum class Family { Lp, Log, Exp };

const char* family_name(Family f);
Family family_from_name(const std::string& name);

/// Penalty configuration: surrogate family, shape parameter p, regularization
/// weight rho and smoothing parameter epsilon. Ranges are checked on
/// validate(): 0 < p <= 1 for Lp, p > 0 otherwise, rho >= 0, epsilon > 0.
/// (rho = 0 is accepted and reduces the solvers to the plain GEP.)
struct PenaltyConfig {
  Family family = Family::Log;
  double p = 1.0;
  double rho = 0.1;
  double epsilon = 1e-8;

  PenaltyConfig() = default;
  PenaltyConfig(Family f, double p_, double rho_, double eps_)
      : family(f), p(p_), rho(rho_), epsilon(eps_) {
    validate();
  }
  void validate() const;

  PenaltyConfig with_epsilon(double eps) const {
    return PenaltyConfig(family, p, rho, eps);
  }
};

struct ContinuationSchedule {
  int steps = 5;               // number of decreasing steps T
  double epsilon_final = 1e-8; // smoothing parameter of the last stage
};

struct SolverConfig {
  double tol_outer = 1e-5; // relative objective change stopping rule
  int max_outer = 1000;
  double tol_inner = 1e-10; // eigensolver stopping rule
  int max_inner = 5000;
  double precond_ratio_threshold = 100.0;
  std::optional<ContinuationSchedule> continuation;

  void validate() const;
};

/// Result of a solve. `x` satisfies x'Bx = 1 within 1e-10; `objective_trace`
/// holds the per-outer-iteration objective values (non-decreasing up to a
/// -1e-9 slack per step for the fixed-epsilon solvers).
struct SolveReport {
  Vector x;
  double objective = 0.0;
  std::vector<double> objective_trace;
  int cardinality = 0;
  int outer_iters = 0;
  bool converged = false;
  double wall_time_ms = 0.0;

  // Diagnostics.
  double min_scaled_discriminant = 0.0; // most negative (b^2-4ac)/scale seen in line searches
  double max_ascent_violation = 0.0;    // largest per-step objective drop observed (>= 0)
  std::vector<int> stage_offsets;       // trace indices where continuation stages begin
};

/// Count of entries with |x_i| above the reporting hard-threshold.
int cardinality(const Vector& x, double threshold = 1e-6);

struct DefinitenessProbe {
  bool passed = true;
  double min_rayleigh_estimate = 0.0;
};

/// A validated symmetric pair (A, B). Construction symmetrizes the inputs;
/// positive definiteness of B is the caller's responsibility (the library is
/// factorization-free and never verifies it exactly; see probe_b()).
class ProblemInstance {
 public:
  /// Symmetrizes (M + M')/2 and stores the pair. Rejects non-square or
  /// mismatched dimensions, non-finite entries, and asymmetry exceeding
  /// 1e-8 relative to the matrix max-norm.
  static ProblemInstance validate_and_symmetrize(const Matrix& a_raw, const Matrix& b_raw);

  /// Real 2n x 2n embedding [[Re, -Im], [Im, Re]] of a Hermitian pair.
  /// Eigenvalues of the embedded pair are those of the complex pair, each
  /// with doubled multiplicity.
  static ProblemInstance embed_complex(const ComplexMatrix& a_c, const ComplexMatrix& b_c);

  const Matrix& a() const { return a_; }
  const Matrix& b() const { return b_; }
  int dim() const { return static_cast<int>(a_.rows()); }

  bool b_is_identity(double tol = 1e-12) const;
  /// Returns the diagonal of B if B is diagonal within 1e-12 relative to its
  /// max-norm, std::nullopt otherwise.
  std::optional<Vector> b_diagonal(double tol = 1e-12) const;

  /// Optional sanity probe for positive definiteness of B: 20 random
  /// quadratic forms plus a steepest-descent estimate of the minimum
  /// Rayleigh quotient. Advisory only; never throws.
  DefinitenessProbe probe_b(std::uint64_t seed = 0) const;

 private:
  ProblemInstance(Matrix a, Matrix b) : a_(std::move(a)), b_(std::move(b)) {}
  Matrix a_;
  Matrix b_;
};

/// Diagonal shift A_alpha = A + alpha*Diag(b) with
/// alpha = max(0, -lambda_min(A)/b_min + margin), margin = 1e-8*max|A_ii|.
/// lambda_min(A) is estimated by the module's own steepest-descent Rayleigh
/// minimizer (no factorization). On the constraint set x'Diag(b)x = 1 the
/// shifted objective equals the original plus exactly alpha.
struct PsdShift {
  Matrix a_alpha;
  double alpha = 0.0;
};
PsdShift psd_shift(const Matrix& a, const Vector& b);

}  // namespace sgep
