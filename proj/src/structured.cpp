// Copyright (c) 2026 sgep contributors
// Licensed under Apache 2.0

#include "sgep/structured.hpp"

#include "sgep/surrogate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

namespace sgep {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void check_vector_inputs(const Vector& a, const Vector& w, const Vector& b, double rho) {
  if (a.size() != w.size() || a.size() != b.size() || a.size() == 0)
    throw Error(ErrorCode::DimensionMismatch, "a, w, b must share a positive length");
  if (!(w.minCoeff() > 0) || !(b.minCoeff() > 0))
    throw Error(ErrorCode::InvalidConfig, "w and b must be strictly positive");
  if (!std::isfinite(rho) || rho < 0)
    throw Error(ErrorCode::InvalidConfig, "rho must be nonnegative");
}

}  // namespace

Vector solve_diag_qcqp(const Vector& a, const Vector& w, const Vector& b, double rho) {
  check_vector_inputs(a, w, b, rho);
  const Eigen::Index n = a.size();

  // ratio_i = rho*w_i / b_i; mu_min = -min(ratio).
  Vector ratio(n);
  for (Eigen::Index i = 0; i < n; ++i) ratio[i] = rho * w[i] / b[i];
  const double min_ratio = ratio.minCoeff();
  const double mu_min = -min_ratio;
  const double tie_tol = 1e-12 * (1.0 + std::abs(min_ratio));

  // Membership of the minimizing set, the out-of-set sum s, and the interior
  // trigger (some a_i != 0 on I_min).
  bool active_a_on_min = false;
  double s = 0.0;
  Eigen::Index last_min_index = -1;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (ratio[i] <= min_ratio + tie_tol) {
      last_min_index = i;
      if (a[i] != 0.0) active_a_on_min = true;
    } else {
      const double denom = b[i] * (ratio[i] - min_ratio);
      const double t = a[i] / denom;
      s += b[i] * t * t;
    }
  }

  Vector x = Vector::Zero(n);
  if (!active_a_on_min && s <= 1.0) {
    // Boundary case mu = mu_min: the deterministic choice places the free
    // mass on the largest index of I_min.
    for (Eigen::Index i = 0; i < n; ++i) {
      if (ratio[i] <= min_ratio + tie_tol) continue;
      x[i] = a[i] / (b[i] * (ratio[i] - min_ratio));
    }
    x[last_min_index] = std::sqrt(std::max(1.0 - s, 0.0) / b[last_min_index]);
    return x;
  }

  // Interior case: phi(mu) = sum b_i a_i^2 / (mu b_i + rho w_i)^2 is
  // monotone decreasing on (mu_min, inf); phi -> +inf or s > 1 at mu_min and
  // phi <= 1 at mu_min + sqrt(sum a_i^2 / b_i).
  const auto phi = [&](double mu) {
    double value = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (a[i] == 0.0) continue;
      const double t = a[i] / (mu * b[i] + rho * w[i]);
      value += b[i] * t * t;
    }
    return value;
  };
  const auto phi_deriv = [&](double mu) {
    double value = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (a[i] == 0.0) continue;
      const double d = mu * b[i] + rho * w[i];
      value -= 2.0 * b[i] * b[i] * a[i] * a[i] / (d * d * d);
    }
    return value;
  };

  double lo = mu_min;
  double hi = mu_min + std::sqrt((a.array().square() / b.array()).sum());
  for (int guard = 0; guard < 8 && phi(hi) > 1.0; ++guard) hi = mu_min + 2.0 * (hi - mu_min);
  double mu = hi;
  for (int it = 0; it < 200; ++it) {
    mu = 0.5 * (lo + hi);
    const double value = phi(mu);
    if (std::abs(value - 1.0) <= 1e-12) break;
    if (value > 1.0)
      lo = mu;
    else
      hi = mu;
    if (hi - lo <= 1e-15 * (1.0 + std::abs(mu))) break;
  }
  // Newton polish (stays inside the bracket).
  for (int it = 0; it < 2; ++it) {
    const double value = phi(mu) - 1.0;
    const double slope = phi_deriv(mu);
    if (slope == 0.0) break;
    const double next = mu - value / slope;
    if (next > mu_min && std::isfinite(next)) mu = next;
  }

  for (Eigen::Index i = 0; i < n; ++i) x[i] = a[i] / (mu * b[i] + rho * w[i]);
  const double norm2 = (b.array() * x.array().square()).sum();
  x /= std::sqrt(norm2);
  return x;
}

Vector solve_l0_sphere(const Vector& a, double rho) {
  if (a.size() == 0) throw Error(ErrorCode::DimensionMismatch, "a must be non-empty");
  if (!a.allFinite()) throw Error(ErrorCode::NonFiniteEntry, "a contains a non-finite entry");
  if (!std::isfinite(rho) || rho < 0)
    throw Error(ErrorCode::InvalidConfig, "rho must be nonnegative");
  const Eigen::Index n = a.size();

  // Stable sort by |a_i| descending; ties keep the lower original index.
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return std::abs(a[i]) > std::abs(a[j]);
  });

  Vector x = Vector::Zero(n);
  const Eigen::Index top = order[0];
  if (std::abs(a[top]) <= rho) {
    // sgn(0) is taken as +1 so the output stays on the sphere.
    x[top] = a[top] >= 0 ? 1.0 : -1.0;
    return x;
  }

  // Largest s with sqrt(S_s) > sqrt(S_{s-1}) + rho; |a_p| > rho is necessary
  // and the condition only gets harder, so stop at the first failure.
  Eigen::Index s = 1;
  double cum = a[top] * a[top];
  for (Eigen::Index p = 1; p < n; ++p) {
    const double v = std::abs(a[order[p]]);
    if (v <= rho) break;
    const double next = cum + v * v;
    if (std::sqrt(next) > std::sqrt(cum) + rho) {
      cum = next;
      s = p + 1;
    } else {
      break;
    }
  }

  const double norm = std::sqrt(cum);
  for (Eigen::Index i = 0; i < s; ++i) x[order[i]] = a[order[i]] / norm;
  return x;
}

DiagonalProblem DiagonalProblem::make(Matrix a, Vector b) {
  if (a.rows() != a.cols() || a.rows() != b.size() || b.size() == 0)
    throw Error(ErrorCode::DimensionMismatch, "A must be square and match b");
  if (!a.allFinite() || !b.allFinite())
    throw Error(ErrorCode::NonFiniteEntry, "non-finite entry in A or b");
  if (!(b.minCoeff() > 0)) throw Error(ErrorCode::NonPositiveB, "b must be strictly positive");
  DiagonalProblem problem;
  problem.a = 0.5 * (a + Matrix(a.transpose()));
  problem.b = std::move(b);
  return problem;
}

DiagonalProblem DiagonalProblem::make_shifted(const Matrix& a, const Vector& b,
                                              double* alpha_out) {
  auto shifted = psd_shift(0.5 * (a + Matrix(a.transpose())), b);
  if (alpha_out) *alpha_out = shifted.alpha;
  return make(std::move(shifted.a_alpha), b);
}

namespace {

void require_diag_feasible(const DiagonalProblem& problem, const Vector& x0) {
  if (x0.size() != problem.b.size())
    throw Error(ErrorCode::DimensionMismatch, "x0 length does not match the problem dimension");
  const double norm2 = (problem.b.array() * x0.array().square()).sum();
  if (!std::isfinite(norm2) || std::abs(norm2 - 1.0) > 1e-8)
    throw Error(ErrorCode::InfeasibleStart, "x0'Diag(b)x0 must equal 1");
}

int exact_l0(const Vector& x) {
  int count = 0;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (x[i] != 0.0) ++count;
  return count;
}

}  // namespace

SolveReport mm_diag_surrogate(const DiagonalProblem& problem, const PenaltyConfig& penalty,
                              const SolverConfig& config, const Vector& x0) {
  penalty.validate();
  config.validate();
  require_diag_feasible(problem, x0);
  const auto start = Clock::now();

  Vector x = x0 / std::sqrt((problem.b.array() * x0.array().square()).sum());
  const auto objective = [&](const Vector& v) {
    return v.dot(problem.a * v) - penalty.rho * surrogate::penalty_value(penalty, v);
  };

  SolveReport report;
  double f = objective(x);
  report.objective_trace.push_back(f);
  Vector a_vec(x.size());
  for (int k = 0; k < config.max_outer; ++k) {
    a_vec.noalias() = problem.a * x;
    const Vector w = surrogate::penalty_vector_ops(penalty, x).weights;
    x = solve_diag_qcqp(a_vec, w, problem.b, penalty.rho);

    const double f_new = objective(x);
    report.objective_trace.push_back(f_new);
    if (f_new < f) report.max_ascent_violation = std::max(report.max_ascent_violation, f - f_new);
    report.outer_iters = k + 1;
    const bool done = std::abs(f_new - f) <= config.tol_outer * std::max(1.0, std::abs(f));
    f = f_new;
    if (done) {
      report.converged = true;
      break;
    }
  }

  report.x = std::move(x);
  report.objective = f;
  report.cardinality = cardinality(report.x);
  report.wall_time_ms = elapsed_ms(start);
  return report;
}

SolveReport mm_diag_l0(const DiagonalProblem& problem, double rho, const SolverConfig& config,
                       const Vector& x0) {
  config.validate();
  if (!std::isfinite(rho) || rho < 0)
    throw Error(ErrorCode::InvalidConfig, "rho must be nonnegative");
  require_diag_feasible(problem, x0);
  const auto start = Clock::now();
  const Eigen::Index n = problem.b.size();

  // Whitened problem: xt = Diag(b)^{1/2} x, At = Diag(b)^{-1/2} A Diag(b)^{-1/2}.
  const Vector b_sqrt = problem.b.array().sqrt();
  const Vector b_inv_sqrt = b_sqrt.cwiseInverse();
  Matrix a_tilde = b_inv_sqrt.asDiagonal() * problem.a * b_inv_sqrt.asDiagonal();

  Vector xt = (b_sqrt.array() * x0.array()).matrix();
  xt.normalize();
  const auto objective = [&](const Vector& v) {
    return v.dot(a_tilde * v) - rho * exact_l0(v);
  };

  SolveReport report;
  double f = objective(xt);
  report.objective_trace.push_back(f);
  Vector a_vec(n);
  for (int k = 0; k < config.max_outer; ++k) {
    a_vec.noalias() = 2.0 * (a_tilde * xt);
    xt = solve_l0_sphere(a_vec, rho);

    const double f_new = objective(xt);
    report.objective_trace.push_back(f_new);
    if (f_new < f) report.max_ascent_violation = std::max(report.max_ascent_violation, f - f_new);
    report.outer_iters = k + 1;
    const bool done = std::abs(f_new - f) <= config.tol_outer * std::max(1.0, std::abs(f));
    f = f_new;
    if (done) {
      report.converged = true;
      break;
    }
  }

  report.x = (b_inv_sqrt.array() * xt.array()).matrix();
  report.objective = f;
  report.cardinality = cardinality(report.x);
  report.wall_time_ms = elapsed_ms(start);
  return report;
}

}  // namespace sgep
