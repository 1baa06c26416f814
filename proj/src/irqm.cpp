// Copyright (c) 2026 sgep contributors
// Licensed under Apache 2.0

#include "sgep/irqm.hpp"

#include "sgep/eigensolver.hpp"
#include "sgep/surrogate.hpp"

#include <chrono>
#include <cmath>
#include <random>

namespace sgep {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void require_feasible(const ProblemInstance& problem, const Vector& x0) {
  if (x0.size() != problem.dim())
    throw Error(ErrorCode::DimensionMismatch, "x0 length does not match the problem dimension");
  const double norm2 = x0.dot(problem.b() * x0);
  if (!std::isfinite(norm2) || std::abs(norm2 - 1.0) > 1e-8)
    throw Error(ErrorCode::InfeasibleStart, "x0'Bx0 must equal 1");
}

}  // namespace

Vector random_feasible_x0(const ProblemInstance& problem, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Vector x(problem.dim());
  for (int i = 0; i < problem.dim(); ++i) x[i] = normal(rng);
  const double norm2 = x.dot(problem.b() * x);
  return x / std::sqrt(norm2);
}

double smoothed_objective(const ProblemInstance& problem, const PenaltyConfig& penalty,
                          const Vector& x) {
  return x.dot(problem.a() * x) - penalty.rho * surrogate::penalty_value(penalty, x);
}

SolveReport irqm_solve(const ProblemInstance& problem, const PenaltyConfig& penalty,
                       const SolverConfig& config, const Vector& x0) {
  penalty.validate();
  config.validate();
  require_feasible(problem, x0);
  const auto start = Clock::now();

  const Matrix& a = problem.a();
  const Matrix& b = problem.b();
  const int n = problem.dim();
  const Vector a_diag = a.diagonal();
  const double rho = penalty.rho;

  Vector x = x0 / std::sqrt(x0.dot(b * x0));

  SolveReport report;
  double f = smoothed_objective(problem, penalty, x);
  report.objective_trace.push_back(f);
  report.min_scaled_discriminant = std::numeric_limits<double>::infinity();

  // Tight inner solves approximate the exact-eigenvector assumption of the
  // convergence analysis.
  eigensolver::AscentOptions inner;
  inner.tol = std::min(config.tol_inner, 1e-2 * config.tol_outer);
  inner.max_iter = config.max_inner;

  Vector w;
  for (int k = 0; k < config.max_outer; ++k) {
    w = surrogate::penalty_vector_ops(penalty, x).weights;
    const Vector precond =
        eigensolver::preconditioner(a_diag, w, rho, config.precond_ratio_threshold);

    auto apply_a = [&](const Vector& in, Vector& out) {
      out.noalias() = a * in;
      if (rho != 0.0) out.array() -= rho * w.array() * in.array();
    };
    auto apply_b = [&](const Vector& in, Vector& out) { out.noalias() = b * in; };
    auto inner_state = eigensolver::leading_gev(apply_a, apply_b, n, x, precond, inner);
    if (k == 0 && inner_state.iters == 0) {
      // The start was already an exact eigenvector of the first subproblem
      // (possibly a non-leading one, where ascent has no direction). One
      // fresh start resolves it; the better Rayleigh value keeps the ascent
      // chain intact.
      auto retry = eigensolver::leading_gev(apply_a, apply_b, n,
                                            random_feasible_x0(problem, 0x5add1eULL), precond,
                                            inner);
      if (retry.rayleigh > inner_state.rayleigh) inner_state = std::move(retry);
    }
    x = std::move(inner_state.x);
    report.min_scaled_discriminant =
        std::min(report.min_scaled_discriminant, inner_state.min_scaled_discriminant);

    const double f_new = smoothed_objective(problem, penalty, x);
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
  if (std::isinf(report.min_scaled_discriminant)) report.min_scaled_discriminant = 0.0;

  report.x = std::move(x);
  report.objective = f;
  report.cardinality = cardinality(report.x);
  report.wall_time_ms = elapsed_ms(start);
  return report;
}

std::vector<double> continuation_epsilons(double x0_inf_norm, int steps, double epsilon_final) {
  const double eps0 = x0_inf_norm / 4.0;
  if (steps <= 0 || !(eps0 > epsilon_final)) return {epsilon_final};
  std::vector<double> eps(static_cast<std::size_t>(steps) + 1);
  const double gamma = std::pow(epsilon_final / eps0, 1.0 / steps);
  eps[0] = eps0;
  for (int t = 1; t <= steps; ++t) eps[t] = eps[t - 1] * gamma;
  eps[steps] = epsilon_final;
  return eps;
}

SolveReport irqm_continuation(const ProblemInstance& problem, const PenaltyConfig& penalty,
                              const SolverConfig& config, const Vector& x0) {
  penalty.validate();
  config.validate();
  require_feasible(problem, x0);
  const auto start = Clock::now();

  const ContinuationSchedule schedule =
      config.continuation.value_or(ContinuationSchedule{5, penalty.epsilon});
  const auto epsilons =
      continuation_epsilons(x0.cwiseAbs().maxCoeff(), schedule.steps, schedule.epsilon_final);

  SolveReport report;
  report.min_scaled_discriminant = std::numeric_limits<double>::infinity();
  Vector x = x0;
  SolverConfig stage_config = config;
  stage_config.continuation.reset();
  for (std::size_t t = 0; t < epsilons.size(); ++t) {
    const bool last = t + 1 == epsilons.size();
    // Intermediate stages are solved loosely, the last one to full accuracy.
    stage_config.tol_outer = last ? config.tol_outer : std::sqrt(epsilons[t]) / 10.0;
    auto stage = irqm_solve(problem, penalty.with_epsilon(epsilons[t]), stage_config, x);
    x = stage.x;
    report.stage_offsets.push_back(static_cast<int>(report.objective_trace.size()));
    report.objective_trace.insert(report.objective_trace.end(), stage.objective_trace.begin(),
                                  stage.objective_trace.end());
    report.outer_iters += stage.outer_iters;
    report.min_scaled_discriminant =
        std::min(report.min_scaled_discriminant, stage.min_scaled_discriminant);
    report.max_ascent_violation =
        std::max(report.max_ascent_violation, stage.max_ascent_violation);
    report.converged = stage.converged;
    report.objective = stage.objective;
  }
  if (std::isinf(report.min_scaled_discriminant)) report.min_scaled_discriminant = 0.0;

  report.x = std::move(x);
  report.cardinality = cardinality(report.x);
  report.wall_time_ms = elapsed_ms(start);
  return report;
}

namespace {

// Conjugate gradients for B y = g; B symmetric positive definite.
Vector cg_solve(const Matrix& b, const Vector& g, double rel_tol, int max_iter) {
  Vector y = Vector::Zero(g.size());
  Vector r = g;
  Vector p = r;
  Vector bp(g.size());
  const double target = rel_tol * std::max(g.norm(), 1e-300);
  double rr = r.squaredNorm();
  for (int it = 0; it < max_iter; ++it) {
    if (std::sqrt(rr) <= target) return y;
    bp.noalias() = b * p;
    const double alpha = rr / p.dot(bp);
    y += alpha * p;
    r -= alpha * bp;
    const double rr_new = r.squaredNorm();
    p = r + (rr_new / rr) * p;
    rr = rr_new;
  }
  if (std::sqrt(rr) <= target) return y;
  throw Error(ErrorCode::LinearSolveFailure, "conjugate gradient did not reach tolerance");
}

}  // namespace

double stationarity_gap(const ProblemInstance& problem, const PenaltyConfig& penalty, double alpha,
                        const Vector& x) {
  penalty.validate();
  if (x.size() != problem.dim())
    throw Error(ErrorCode::DimensionMismatch, "x length does not match the problem dimension");

  Vector pen_grad;
  surrogate::penalty_gradient(penalty, x, pen_grad);
  Vector g = 2.0 * (problem.a() * x + alpha * (problem.b() * x)) - penalty.rho * pen_grad;
  const double gnorm = g.norm();
  if (gnorm == 0.0) return 0.0;

  const Vector y = cg_solve(problem.b(), g, 1e-10, 10 * problem.dim() + 50);
  const double quad = std::max(g.dot(y), 0.0);
  return std::sqrt(quad) - g.dot(x);
}

double default_stationarity_alpha(const ProblemInstance& problem, const PenaltyConfig& penalty) {
  const double lipschitz =
      surrogate::lipschitz_constant(penalty.family, penalty.p, penalty.epsilon);
  // Factorization-free lambda_min(B) estimate.
  std::mt19937_64 rng(0xb0b0b0b0ULL);
  std::normal_distribution<double> normal;
  Vector x0(problem.dim());
  for (int i = 0; i < problem.dim(); ++i) x0[i] = normal(rng);
  x0.normalize();
  Matrix neg_b = -problem.b();
  Matrix identity = Matrix::Identity(problem.dim(), problem.dim());
  eigensolver::AscentOptions opts;
  opts.tol = 1e-10;
  opts.max_iter = 5000;
  const double lambda_min =
      std::max(-eigensolver::leading_gev(neg_b, identity, x0, Vector(), opts).rayleigh, 1e-12);
  return penalty.rho * lipschitz / (2.0 * lambda_min) + problem.a().norm();
}

}  // namespace sgep
