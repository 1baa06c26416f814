// Copyright (c) 2026 sgep contributors
// Licensed under Apache 2.0

#include "sgep/types.hpp"

#include "sgep/eigensolver.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace sgep {

const char* family_name(Family f) {
  switch (f) {
    case Family::Lp:
      return "lp";
    case Family::Log:
      return "log";
    case Family::Exp:
      return "exp";
  }
  return "?";
}

Family family_from_name(const std::string& name) {
  if (name == "lp") return Family::Lp;
  if (name == "log") return Family::Log;
  if (name == "exp") return Family::Exp;
  throw Error(ErrorCode::InvalidConfig, "unknown surrogate family '" + name + "'");
}

void PenaltyConfig::validate() const {
  if (!std::isfinite(p) || p <= 0)
    throw Error(ErrorCode::InvalidConfig, "penalty p must be positive");
  if (family == Family::Lp && p > 1)
    throw Error(ErrorCode::InvalidConfig, "Lp surrogate requires 0 < p <= 1");
  if (!std::isfinite(rho) || rho < 0)
    throw Error(ErrorCode::InvalidConfig, "rho must be nonnegative");
  if (!std::isfinite(epsilon) || epsilon <= 0)
    throw Error(ErrorCode::InvalidConfig, "epsilon must be positive");
}

void SolverConfig::validate() const {
  if (!(tol_outer > 0) || !(tol_inner > 0))
    throw Error(ErrorCode::InvalidConfig, "tolerances must be strictly positive");
  if (max_outer < 1 || max_inner < 1)
    throw Error(ErrorCode::InvalidConfig, "iteration caps must be >= 1");
  if (!(precond_ratio_threshold > 0))
    throw Error(ErrorCode::InvalidConfig, "preconditioner threshold must be positive");
  if (continuation) {
    if (continuation->steps < 0)
      throw Error(ErrorCode::InvalidConfig, "continuation steps must be >= 0");
    if (!(continuation->epsilon_final > 0))
      throw Error(ErrorCode::InvalidConfig, "continuation epsilon_final must be positive");
  }
}

int cardinality(const Vector& x, double threshold) {
  int count = 0;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (std::abs(x[i]) > threshold) ++count;
  return count;
}

namespace {

void check_square_finite(const Matrix& m, const char* name) {
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << name << " is " << m.rows() << "x" << m.cols() << ", expected square";
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  if (!m.allFinite())
    throw Error(ErrorCode::NonFiniteEntry, std::string(name) + " contains a non-finite entry");
}

Matrix symmetrize_checked(const Matrix& m, const char* name) {
  const double max_norm = m.cwiseAbs().maxCoeff();
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-8 * std::max(max_norm, 1e-300)) {
    std::ostringstream os;
    os << name << " asymmetry " << asym << " exceeds 1e-8 relative to max-norm " << max_norm;
    throw Error(ErrorCode::ExcessiveAsymmetry, os.str());
  }
  return 0.5 * (m + Matrix(m.transpose()));
}

}  // namespace

ProblemInstance ProblemInstance::validate_and_symmetrize(const Matrix& a_raw,
                                                         const Matrix& b_raw) {
  check_square_finite(a_raw, "A");
  check_square_finite(b_raw, "B");
  if (a_raw.rows() != b_raw.rows()) {
    std::ostringstream os;
    os << "A is " << a_raw.rows() << "x" << a_raw.cols() << " but B is " << b_raw.rows() << "x"
       << b_raw.cols();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  if (a_raw.rows() == 0) throw Error(ErrorCode::DimensionMismatch, "empty matrices");
  return ProblemInstance(symmetrize_checked(a_raw, "A"), symmetrize_checked(b_raw, "B"));
}

ProblemInstance ProblemInstance::embed_complex(const ComplexMatrix& a_c, const ComplexMatrix& b_c) {
  auto check_hermitian = [](const ComplexMatrix& m, const char* name) {
    if (m.rows() != m.cols())
      throw Error(ErrorCode::DimensionMismatch, std::string(name) + " is not square");
    const double max_norm = m.cwiseAbs().maxCoeff();
    const double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (dev > 1e-12 * std::max(max_norm, 1.0))
      throw Error(ErrorCode::NotHermitian, std::string(name) + " is not Hermitian within 1e-12");
  };
  check_hermitian(a_c, "A");
  check_hermitian(b_c, "B");
  if (a_c.rows() != b_c.rows())
    throw Error(ErrorCode::DimensionMismatch, "complex pair dimensions differ");

  auto embed = [](const ComplexMatrix& m) {
    const Eigen::Index n = m.rows();
    ComplexMatrix h = 0.5 * (m + ComplexMatrix(m.adjoint()));
    Matrix out(2 * n, 2 * n);
    out.topLeftCorner(n, n) = h.real();
    out.bottomRightCorner(n, n) = h.real();
    out.topRightCorner(n, n) = -h.imag();
    out.bottomLeftCorner(n, n) = h.imag();
    return out;
  };
  return validate_and_symmetrize(embed(a_c), embed(b_c));
}

bool ProblemInstance::b_is_identity(double tol) const {
  return (b_ - Matrix::Identity(dim(), dim())).cwiseAbs().maxCoeff() <= tol;
}

std::optional<Vector> ProblemInstance::b_diagonal(double tol) const {
  const double max_norm = std::max(b_.cwiseAbs().maxCoeff(), 1e-300);
  Matrix off = b_;
  off.diagonal().setZero();
  if (off.cwiseAbs().maxCoeff() > tol * max_norm) return std::nullopt;
  return Vector(b_.diagonal());
}

DefinitenessProbe ProblemInstance::probe_b(std::uint64_t seed) const {
  DefinitenessProbe probe;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const int n = dim();
  Vector x(n);
  for (int trial = 0; trial < 20; ++trial) {
    for (int i = 0; i < n; ++i) x[i] = normal(rng);
    x.normalize();
    if (x.dot(b_ * x) <= 0) probe.passed = false;
  }
  // Minimum Rayleigh quotient estimate: 50 steepest-descent steps on B,
  // phrased as ascent on -B with the Euclidean metric.
  for (int i = 0; i < n; ++i) x[i] = normal(rng);
  x.normalize();
  Matrix neg_b = -b_;
  Matrix identity = Matrix::Identity(n, n);
  eigensolver::AscentOptions opts;
  opts.max_iter = 50;
  opts.tol = 1e-12;
  auto state = eigensolver::leading_gev(neg_b, identity, x, Vector(), opts);
  probe.min_rayleigh_estimate = -state.rayleigh;
  if (probe.min_rayleigh_estimate <= 0) probe.passed = false;
  return probe;
}

PsdShift psd_shift(const Matrix& a, const Vector& b) {
  check_square_finite(a, "A");
  if (b.size() != a.rows())
    throw Error(ErrorCode::DimensionMismatch, "shift vector length does not match A");
  if (b.size() == 0 || b.minCoeff() <= 0)
    throw Error(ErrorCode::NonPositiveB, "shift vector must be strictly positive");

  const int n = static_cast<int>(a.rows());
  // lambda_min(A) = -lambda_max(-A), estimated factorization-free.
  std::mt19937_64 rng(0x5eed5eedULL);
  std::normal_distribution<double> normal;
  Vector x0(n);
  for (int i = 0; i < n; ++i) x0[i] = normal(rng);
  x0.normalize();
  Matrix neg_a = -a;
  Matrix identity = Matrix::Identity(n, n);
  eigensolver::AscentOptions opts;
  opts.tol = 1e-12;
  opts.max_iter = 10000;
  const double lambda_min = -eigensolver::leading_gev(neg_a, identity, x0, Vector(), opts).rayleigh;

  const double margin = 1e-8 * a.diagonal().cwiseAbs().maxCoeff();
  const double alpha = std::max(0.0, -lambda_min / b.minCoeff() + margin);

  PsdShift result;
  result.alpha = alpha;
  result.a_alpha = a;
  result.a_alpha.diagonal() += alpha * b;
  return result;
}

}  // namespace sgep
