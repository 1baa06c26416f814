// Copyright (c) 2026 sgep contributors
// Licensed under Apache 2.0

#include "sgep/surrogate.hpp"

#include <cmath>

namespace sgep::surrogate {

namespace {

// log(1 + 1/p), the normalization of the log family.
inline double log_norm(double p) { return std::log1p(1.0 / p); }

}  // namespace

double eval(Family family, double p, double x) {
  const double t = std::abs(x);
  switch (family) {
    case Family::Lp:
      return std::pow(t, p);
    case Family::Log:
      return std::log1p(t / p) / log_norm(p);
    case Family::Exp:
      return -std::expm1(-t / p);
  }
  return 0.0;
}

double deriv(Family family, double p, double t) {
  switch (family) {
    case Family::Lp:
      return p * std::pow(t, p - 1.0);
    case Family::Log:
      return 1.0 / (log_norm(p) * (p + t));
    case Family::Exp:
      return std::exp(-t / p) / p;
  }
  return 0.0;
}

double second_deriv(Family family, double p, double t) {
  switch (family) {
    case Family::Lp:
      return p * (p - 1.0) * std::pow(t, p - 2.0);
    case Family::Log:
      return -1.0 / (log_norm(p) * (p + t) * (p + t));
    case Family::Exp:
      return -std::exp(-t / p) / (p * p);
  }
  return 0.0;
}

double eval_smoothed(Family family, double p, double epsilon, double x) {
  const double t = std::abs(x);
  if (t <= epsilon) return 0.5 * deriv(family, p, epsilon) / epsilon * x * x;
  return eval(family, p, t) - eval(family, p, epsilon) +
         0.5 * deriv(family, p, epsilon) * epsilon;
}

double smoothed_deriv(Family family, double p, double epsilon, double x) {
  const double t = std::abs(x);
  if (t <= epsilon) return deriv(family, p, epsilon) / epsilon * x;
  const double sign = x > 0 ? 1.0 : -1.0;
  return sign * deriv(family, p, t);
}

double weight(Family family, double p, double epsilon, double x_k) {
  const double t = std::abs(x_k);
  if (t <= epsilon) return 0.5 * deriv(family, p, epsilon) / epsilon;
  return 0.5 * deriv(family, p, t) / t;
}

double majorizer_offset(Family family, double p, double epsilon, double x_k) {
  return eval_smoothed(family, p, epsilon, x_k) -
         weight(family, p, epsilon, x_k) * x_k * x_k;
}

double majorizer_gap(Family family, double p, double epsilon, double x_k, double x) {
  const double u = weight(family, p, epsilon, x_k) * x * x +
                   majorizer_offset(family, p, epsilon, x_k);
  return u - eval_smoothed(family, p, epsilon, x);
}

double lipschitz_constant(Family family, double p, double epsilon) {
  return std::max(deriv(family, p, epsilon) / epsilon,
                  std::abs(second_deriv(family, p, epsilon)));
}

double suboptimality_bound(Family family, double p, double epsilon, double rho, int n) {
  return rho * n * (eval(family, p, epsilon) - 0.5 * deriv(family, p, epsilon) * epsilon);
}

SurrogateEval eval_at(const PenaltyConfig& penalty, double x_k) {
  SurrogateEval out;
  out.value = eval_smoothed(penalty.family, penalty.p, penalty.epsilon, x_k);
  out.weight = weight(penalty.family, penalty.p, penalty.epsilon, x_k);
  out.offset = out.value - out.weight * x_k * x_k;
  return out;
}

PenaltyEval penalty_vector_ops(const PenaltyConfig& penalty, const Vector& x) {
  PenaltyEval out;
  out.weights.resize(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    out.value += eval_smoothed(penalty.family, penalty.p, penalty.epsilon, x[i]);
    out.weights[i] = weight(penalty.family, penalty.p, penalty.epsilon, x[i]);
  }
  return out;
}

double penalty_value(const PenaltyConfig& penalty, const Vector& x) {
  double value = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    value += eval_smoothed(penalty.family, penalty.p, penalty.epsilon, x[i]);
  return value;
}

void penalty_gradient(const PenaltyConfig& penalty, const Vector& x, Vector& grad) {
  grad.resize(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i)
    grad[i] = smoothed_deriv(penalty.family, penalty.p, penalty.epsilon, x[i]);
}

}  // namespace sgep::surrogate
