// Copyright (c) 2026 sgep contributors
// Licensed under Apache 2.0

#include "sgep/eigensolver.hpp"

#include <algorithm>
#include <cmath>

namespace sgep::eigensolver {

LineSearchCoeffs line_search_coeffs(const QuadForms& q) {
  LineSearchCoeffs c;
  c.a = q.rAr * q.xBr - q.rBr * q.xAr;
  c.b = q.rAr * q.xBx - q.rBr * q.xAx;
  c.c = q.xAr * q.xBx - q.xBr * q.xAx;
  return c;
}

namespace {

QuadForms forms_from(const Matrix& a_tilde, const Matrix& b, const Vector& x, const Vector& r) {
  QuadForms q;
  Vector ax = a_tilde * x;
  Vector ar = a_tilde * r;
  Vector bx = b * x;
  Vector br = b * r;
  q.xAx = x.dot(ax);
  q.xAr = x.dot(ar);
  q.rAr = r.dot(ar);
  q.xBx = x.dot(bx);
  q.xBr = x.dot(br);
  q.rBr = r.dot(br);
  return q;
}

// Rayleigh quotient along the line, R(x + tau*r), from the cached forms.
double rayleigh_at(const QuadForms& q, double tau) {
  const double num = q.xAx + 2.0 * tau * q.xAr + tau * tau * q.rAr;
  const double den = q.xBx + 2.0 * tau * q.xBr + tau * tau * q.rBr;
  if (!(den > 0) || !std::isfinite(den) || !std::isfinite(num))
    return -std::numeric_limits<double>::infinity();
  return num / den;
}

}  // namespace

LineSearchCoeffs line_search_coeffs(const Matrix& a_tilde, const Matrix& b, const Vector& x,
                                    const Vector& r) {
  return line_search_coeffs(forms_from(a_tilde, b, x, r));
}

LineSearchResult exact_line_search(const QuadForms& q) {
  if (!(q.rBr > 1e-300))
    throw Error(ErrorCode::ZeroResidual, "line search requires a nonzero direction");

  const auto [a, b, c] = line_search_coeffs(q);
  const double coeff_scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
  if (coeff_scale == 0.0)
    throw Error(ErrorCode::ZeroResidual, "degenerate line: all stationarity coefficients vanish");

  const double disc = b * b - 4.0 * a * c;
  const double disc_scale = std::max(b * b, std::abs(4.0 * a * c));
  LineSearchResult out;
  out.scaled_discriminant = disc_scale > 0 ? disc / disc_scale : 0.0;

  double roots[2];
  int n_roots = 0;
  if (std::abs(a) > 1e-14 * std::max(std::abs(b), std::abs(c))) {
    const double sq = std::sqrt(std::max(disc, 0.0));
    const double qq = -0.5 * (b + (b >= 0 ? sq : -sq));
    roots[n_roots++] = qq / a;
    if (qq != 0.0) roots[n_roots++] = c / qq;
  } else if (std::abs(b) > 1e-14 * std::abs(c)) {
    roots[n_roots++] = -c / b;
  }

  // Candidates: the real roots and the tau -> infinity limit R(r).
  const double r_inf = q.rAr / q.rBr;
  double best = r_inf;
  bool best_inf = true;
  double best_tau = 0.0;
  for (int i = 0; i < n_roots; ++i) {
    if (!std::isfinite(roots[i])) continue;
    const double val = rayleigh_at(q, roots[i]);
    if (!std::isfinite(val)) continue;
    const double tie = 1e-14 * std::max(1.0, std::abs(best));
    if (val > best + tie) {
      best = val;
      best_inf = false;
      best_tau = roots[i];
    } else if (val >= best - tie) {
      // Tie: prefer finite tau, then the smaller |tau|.
      if (best_inf || std::abs(roots[i]) < std::abs(best_tau)) {
        best = std::max(best, val);
        best_inf = false;
        best_tau = roots[i];
      }
    }
  }

  out.rayleigh = best;
  out.to_infinity = best_inf;
  out.tau = best_inf ? std::numeric_limits<double>::infinity() : best_tau;
  return out;
}

LineSearchResult exact_line_search(const Matrix& a_tilde, const Matrix& b, const Vector& x,
                                   const Vector& r) {
  return exact_line_search(forms_from(a_tilde, b, x, r));
}

Vector preconditioner(const Vector& a_diag, const Vector& w, double rho, double threshold) {
  const double num = rho * w.norm();
  if (num == 0.0) return Vector();
  const double den = a_diag.norm();
  const double ratio = den > 0 ? num / den : std::numeric_limits<double>::infinity();
  if (!(ratio > threshold)) return Vector();
  Vector p(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i)
    p[i] = 1.0 / std::max(rho * w[i] + std::abs(a_diag[i]), detail::kTiny);
  return p;
}

AscentState leading_gev(const Matrix& a_tilde, const Matrix& b, const Vector& x0,
                        const Vector& precond, const AscentOptions& opts) {
  auto apply_a = [&](const Vector& in, Vector& out) { out.noalias() = a_tilde * in; };
  auto apply_b = [&](const Vector& in, Vector& out) { out.noalias() = b * in; };
  return leading_gev(apply_a, apply_b, static_cast<int>(a_tilde.rows()), x0, precond, opts);
}

}  // namespace sgep::eigensolver
