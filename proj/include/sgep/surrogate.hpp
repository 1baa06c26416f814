// Copyright (c) 2026 sgep contributors
// Licensed under Apache 2.0
//
// The three sparsity surrogates g_p (Lp, log, exp), their epsilon-smoothed
// versions g_p^eps, the quadratic majorization weights, and the analytic
// diagnostics attached to the smoothing (Lipschitz constant, suboptimality
// bound).
//
// Smoothing replaces the kink of g_p at 0 by a quadratic cap on [-eps, eps]:
//   g_p^eps(x) = (g_p'(eps)/(2 eps)) x^2                 for |x| <= eps
//              = g_p(x) - g_p(eps) + (g_p'(eps)/2) eps   for |x| >  eps
// which is continuously differentiable and even. The majorization weight at
// x_k is g_p'(eps)/(2 eps) on the inner branch and g_p'(|x_k|)/(2|x_k|)
// outside; both are finite and strictly positive for eps > 0, so the
// singularity issue of plain reweighting at x_k = 0 cannot arise.
#pragma once

#include "sgep/types.hpp"

namespace sgep::surrogate {

/// Raw surrogate g_p: |x|^p, log(1+|x|/p)/log(1+1/p), or 1-exp(-|x|/p).
/// Even, zero at zero, monotone increasing in |x|.
double eval(Family family, double p, double x);

/// First derivative g_p'(t) for t > 0.
double deriv(Family family, double p, double t);

/// Second derivative g_p''(t) for t > 0.
double second_deriv(Family family, double p, double t);

/// Smoothed surrogate g_p^eps (see file header). Ties |x| == eps go to the
/// quadratic branch; the branches agree there.
double eval_smoothed(Family family, double p, double epsilon, double x);

/// Derivative of the smoothed surrogate.
double smoothed_deriv(Family family, double p, double epsilon, double x);

/// Majorization weight w at expansion point x_k (finite, > 0).
double weight(Family family, double p, double epsilon, double x_k);

/// Offset c such that w*x^2 + c touches g_p^eps at x_k.
double majorizer_offset(Family family, double p, double epsilon, double x_k);

/// u(x, x_k) - g_p^eps(x) with u = w*x^2 + c. Nonnegative everywhere,
/// zero at x = x_k.
double majorizer_gap(Family family, double p, double epsilon, double x_k, double x);

/// Lipschitz constant of (g_p^eps)': max{g_p'(eps)/eps, |g_p''(eps)|}.
double lipschitz_constant(Family family, double p, double epsilon);

/// Bound on the optimality loss of the smoothed problem:
/// rho * n * (g_p(eps) - g_p'(eps)*eps/2). Nonnegative, -> 0 as eps -> 0.
double suboptimality_bound(Family family, double p, double epsilon, double rho, int n);

struct SurrogateEval {
  double value = 0.0;  // g_p^eps(x_k)
  double weight = 0.0; // majorization coefficient
  double offset = 0.0; // majorization constant c
};
SurrogateEval eval_at(const PenaltyConfig& penalty, double x_k);

struct PenaltyEval {
  double value = 0.0; // sum_i g_p^eps(x_i)
  Vector weights;     // per-coordinate majorization weights
};
/// Batch form used by the solvers every iteration.
PenaltyEval penalty_vector_ops(const PenaltyConfig& penalty, const Vector& x);

/// sum_i g_p^eps(x_i) alone.
double penalty_value(const PenaltyConfig& penalty, const Vector& x);

/// Per-coordinate derivative of the smoothed penalty, written into `grad`.
void penalty_gradient(const PenaltyConfig& penalty, const Vector& x, Vector& grad);

}  // namespace sgep::surrogate
