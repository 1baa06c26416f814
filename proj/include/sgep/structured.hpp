// Copyright (c) 2026 sgep contributors
// Licensed under Apache 2.0
//
// Closed-form subproblem solvers and MM loops for the structured case
// A PSD, B = Diag(b) with b > 0 (sparse PCA when b = 1):
//  - solve_diag_qcqp: global maximizer of 2a'x - rho*x'Diag(w)x on the
//    ellipsoid x'Diag(b)x = 1 (two-case recipe with a bisected multiplier);
//  - solve_l0_sphere: global maximizer of a'x - rho*||x||_0 on the unit
//    sphere (support truncation by a sorted inequality chain);
//  - mm_diag_surrogate: MM on the smoothed-penalty objective, one QCQP per
//    iteration;
//  - mm_diag_l0: MM on the exact l0-penalized objective in the whitened
//    variable xt = Diag(b)^{1/2} x.
#pragma once

#include "sgep/types.hpp"

namespace sgep {

/// The structured problem data. `a` must be PSD within -1e-10 on its minimum
/// eigenvalue (apply psd_shift first otherwise; the shift adds the constant
/// alpha to the objective on the constraint set).
struct DiagonalProblem {
  Matrix a;
  Vector b;

  /// Validates shapes and b > 0; does not verify PSD-ness (caller contract).
  static DiagonalProblem make(Matrix a, Vector b);

  /// Applies psd_shift when needed and records the shift that was added.
  static DiagonalProblem make_shifted(const Matrix& a, const Vector& b, double* alpha_out);
};

/// Global maximizer of 2a'x - rho*x'Diag(w)x subject to x'Diag(b)x = 1,
/// w, b > 0 elementwise, rho > 0. Interior case: x_i = a_i/(mu b_i + rho w_i)
/// with mu > mu_min the root of sum_i b_i a_i^2/(mu b_i + rho w_i)^2 = 1,
/// found by safeguarded bisection. Boundary case (mu = mu_min): the free
/// coordinate mass sqrt((1-s)/b_i) goes to i = max(I_min).
Vector solve_diag_qcqp(const Vector& a, const Vector& w, const Vector& b, double rho);

/// Global maximizer of a'x - rho*||x||_0 subject to ||x||_2 = 1, rho > 0.
/// If max|a_i| <= rho the solution is the signed unit vector at the largest
/// |a_i| (sgn(0) taken as +1 to stay feasible). Otherwise the support is the
/// s largest |a_i| where s is the largest integer satisfying
/// sqrt(sum_{i<=s} a_i^2) > sqrt(sum_{i<=s-1} a_i^2) + rho; sorting is
/// stable with ties broken by lower original index.
Vector solve_l0_sphere(const Vector& a, double rho);

/// MM with the smoothed surrogate penalty. Each iteration linearizes x'Ax at
/// x_k (a = A x_k), reweights the penalty, and solves the diagonal QCQP.
/// The smoothed objective x'Ax - rho*sum g_p^eps(x_i) is non-decreasing.
SolveReport mm_diag_surrogate(const DiagonalProblem& problem, const PenaltyConfig& penalty,
                              const SolverConfig& config, const Vector& x0);

/// MM with the exact l0 penalty in the whitened variable. Each iteration
/// sets a = 2*At*xt and applies solve_l0_sphere; the exact objective
/// xt'At*xt - rho*||xt||_0 is non-decreasing. Returns x = Diag(b)^{-1/2} xt.
SolveReport mm_diag_l0(const DiagonalProblem& problem, double rho, const SolverConfig& config,
                       const Vector& x0);

}  // namespace sgep
