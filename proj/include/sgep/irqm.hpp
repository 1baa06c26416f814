// Copyright (c) 2026 sgep contributors
// Licensed under Apache 2.0
//
// IRQM: iteratively reweighted quadratic minorization for
//   maximize  x'Ax - rho * sum_i g_p^eps(x_i)   s.t.  x'Bx = 1.
// Each outer iteration majorizes the penalty by a separable quadratic with
// weights w from the smoothed surrogate, which reduces the step to the
// leading generalized eigenvector of (A - rho*Diag(w), B), solved by the
// preconditioned steepest ascent engine warm-started at the previous
// iterate. Any inner ascent preserves the outer ascent chain, so the
// objective trace is non-decreasing regardless of inner convergence.
#pragma once

#include "sgep/types.hpp"

#include <cstdint>

namespace sgep {

/// Random feasible starting point: standard normal entries, normalized to
/// x'Bx = 1. Deterministic in `seed`.
Vector random_feasible_x0(const ProblemInstance& problem, std::uint64_t seed);

/// One IRQM solve at fixed epsilon. x0 must satisfy x0'B x0 = 1 within 1e-8
/// (error InfeasibleStart otherwise). Stops when
/// |f(x+) - f(x)| / max(1, |f(x)|) <= tol_outer.
SolveReport irqm_solve(const ProblemInstance& problem, const PenaltyConfig& penalty,
                       const SolverConfig& config, const Vector& x0);

/// Continuation over a decreasing epsilon schedule: eps_0 = ||x0||_inf / 4,
/// eps_{t+1} = gamma * eps_t with gamma = (eps_T/eps_0)^{1/T}; stage t is
/// solved to tolerance sqrt(eps_t)/10 warm-started at the previous stage's
/// solution, and the final stage runs at epsilon_final with the standard
/// tol_outer. The report concatenates the stage traces (stage_offsets marks
/// the boundaries).
SolveReport irqm_continuation(const ProblemInstance& problem, const PenaltyConfig& penalty,
                              const SolverConfig& config, const Vector& x0);

/// The epsilon sequence used by irqm_continuation (exposed for tests and
/// reporting). Degenerates to {epsilon_final} when steps == 0 or when
/// ||x0||_inf / 4 <= epsilon_final.
std::vector<double> continuation_epsilons(double x0_inf_norm, int steps, double epsilon_final);

/// Stationarity gap of the convexified problem at a feasible point:
///   max over {z : z'Bz <= 1} of  g'(z - x)  =  sqrt(g'B^{-1}g) - g'x,
/// with g = grad of x'(A + alpha*B)x - rho*sum g_p^eps(x_i). B^{-1}g is
/// obtained by conjugate gradients to 1e-10 relative residual. alpha must be
/// large enough to convexify (see default_stationarity_alpha); the gap is a
/// diagnostic, never a stopping rule.
double stationarity_gap(const ProblemInstance& problem, const PenaltyConfig& penalty, double alpha,
                        const Vector& x);

/// alpha = rho*L / (2*lambda_min_estimate(B)) + ||A||_F with L the smoothed
/// surrogate's gradient Lipschitz constant.
double default_stationarity_alpha(const ProblemInstance& problem, const PenaltyConfig& penalty);

/// The smoothed objective f_eps(x) = x'Ax - rho * sum_i g_p^eps(x_i).
double smoothed_objective(const ProblemInstance& problem, const PenaltyConfig& penalty,
                          const Vector& x);

}  // namespace sgep
