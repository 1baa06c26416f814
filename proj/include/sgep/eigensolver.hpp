// Copyright (c) 2026 sgep contributors
// Licensed under Apache 2.0
//
// Factorization-free preconditioned steepest ascent for the leading
// generalized eigenvector: maximize R(x) = x'Ax / x'Bx by line searches
// along the (optionally preconditioned) gradient residual r = Ax - R(x)Bx.
// The step maximizing R(x + tau*r) is found exactly: stationarity in tau is
// a quadratic a*tau^2 + b*tau + c = 0 whose coefficients are inner products,
// and the tau -> infinity limit (Rayleigh quotient of r itself) competes as
// a candidate. Everything is matrix-vector products and inner products; no
// factorization is ever taken.
#pragma once

#include "sgep/types.hpp"

#include <cmath>
#include <limits>

namespace sgep::eigensolver {

/// The six quadratic forms a line search needs. A is the (symmetric) matrix
/// whose Rayleigh quotient is being maximized, B the metric.
struct QuadForms {
  double xAx = 0, xBx = 0, xAr = 0, xBr = 0, rAr = 0, rBr = 0;
};

struct LineSearchCoeffs {
  double a = 0, b = 0, c = 0;
};

/// Coefficients of the stationarity quadratic in tau:
///   a = (r'Ar)(x'Br) - (r'Br)(x'Ar)
///   b = (r'Ar)(x'Bx) - (r'Br)(x'Ax)
///   c = (x'Ar)(x'Bx) - (x'Br)(x'Ax)
LineSearchCoeffs line_search_coeffs(const QuadForms& q);

/// Convenience wrapper computing the forms from dense matrices.
LineSearchCoeffs line_search_coeffs(const Matrix& a_tilde, const Matrix& b, const Vector& x,
                                    const Vector& r);

struct LineSearchResult {
  double tau = 0.0;
  bool to_infinity = false;  // the tau -> inf candidate won; next iterate is r
  double rayleigh = 0.0;     // R at the chosen point
  double scaled_discriminant = 0.0;  // (b^2-4ac)/max(b^2, |4ac|); >= 0 up to roundoff
};

/// Exact single-line maximization of R(x + tau*r) given the quadratic forms.
/// Throws ZeroResidual when every coefficient vanishes together with x'Ar and
/// x'Br scales (r = 0 up to roundoff); callers should have stopped before.
LineSearchResult exact_line_search(const QuadForms& q);

/// Matrix-level wrapper matching the operation contract.
LineSearchResult exact_line_search(const Matrix& a_tilde, const Matrix& b, const Vector& x,
                                   const Vector& r);

/// Diagonal preconditioner rule: P = Diag(rho*w + |diag(A)|)^{-1} when
/// rho*||w||_2 / ||diag(A)||_2 > threshold (strictly), identity otherwise.
/// `a_diag` is the diagonal of the *original* A (before the -rho*Diag(w)
/// shift). An empty vector means identity.
Vector preconditioner(const Vector& a_diag, const Vector& w, double rho, double threshold);

struct AscentOptions {
  double tol = 1e-10;
  int max_iter = 5000;
};

struct AscentState {
  Vector x;
  double rayleigh = 0.0;
  double residual_norm = 0.0;  // ||Ax - R Bx||_2 at exit (unpreconditioned)
  int iters = 0;
  bool converged = false;
  double min_scaled_discriminant = 0.0;
  double max_rayleigh_drop = 0.0;  // largest per-step Rayleigh decrease seen (>= 0)
};

namespace detail {
constexpr double kTiny = 1e-300;
}

/// Steepest ascent with exact line search. `apply_a` / `apply_b` compute
/// y = Ax and y = Bx; `precond` is a positive diagonal or empty for identity.
/// x0 must satisfy x0'B x0 = 1 (renormalized defensively). Stops when the
/// relative Rayleigh change or the relative residual norm drops below
/// opts.tol, or when the residual B-norm falls below 1e-14, or at max_iter
/// (returned as converged = false; the ascent property still holds).
template <class OpA, class OpB>
AscentState leading_gev(OpA&& apply_a, OpB&& apply_b, int n, const Vector& x0,
                        const Vector& precond, const AscentOptions& opts) {
  AscentState st;
  st.min_scaled_discriminant = std::numeric_limits<double>::infinity();

  Vector x = x0;
  Vector bx(n), ax(n), r(n), ar(n), br(n);
  apply_b(x, bx);
  double xbx = x.dot(bx);
  if (!(xbx > 0) || !std::isfinite(xbx))
    throw Error(ErrorCode::InfeasibleStart, "x0 has non-positive or non-finite B-norm");
  x /= std::sqrt(xbx);
  apply_a(x, ax);
  apply_b(x, bx);
  double rayleigh = x.dot(ax);

  const bool use_precond = precond.size() > 0;
  int since_refresh = 0;

  for (st.iters = 0; st.iters < opts.max_iter; ++st.iters) {
    r = ax - rayleigh * bx;
    const double rnorm = r.norm();
    const double axnorm = ax.norm();
    if (rnorm <= opts.tol * std::max(axnorm, detail::kTiny)) {
      st.converged = true;
      break;
    }
    if (use_precond) r = precond.cwiseProduct(r);

    apply_a(r, ar);
    apply_b(r, br);
    QuadForms q{rayleigh, 1.0, x.dot(ar), x.dot(br), r.dot(ar), r.dot(br)};
    // Stationary point of the Rayleigh quotient: residual B-norm ~ 0.
    if (q.rBr <= 1e-28) {
      st.converged = true;
      break;
    }

    LineSearchResult ls;
    try {
      ls = exact_line_search(q);
    } catch (const Error&) {
      st.converged = true;  // degenerate line: all coefficients vanished
      break;
    }
    st.min_scaled_discriminant = std::min(st.min_scaled_discriminant, ls.scaled_discriminant);
    if (!(ls.rayleigh > rayleigh)) {
      // No ascent available along this line; x is stationary for us.
      st.converged = true;
      break;
    }

    if (ls.to_infinity) {
      x = r;
      ax = ar;
      bx = br;
    } else {
      x += ls.tau * r;
      ax += ls.tau * ar;
      bx += ls.tau * br;
    }
    double nrm2 = x.dot(bx);
    double inv = 1.0 / std::sqrt(nrm2);
    x *= inv;
    ax *= inv;
    bx *= inv;
    // The cached products drift over many linear updates; refresh periodically.
    if (++since_refresh >= 64) {
      apply_a(x, ax);
      apply_b(x, bx);
      double xbx2 = x.dot(bx);
      double s = 1.0 / std::sqrt(xbx2);
      x *= s;
      ax *= s;
      bx *= s;
      since_refresh = 0;
    }
    double new_rayleigh = x.dot(ax);
    if (new_rayleigh < rayleigh)
      st.max_rayleigh_drop = std::max(st.max_rayleigh_drop, rayleigh - new_rayleigh);
    bool small_change =
        std::abs(new_rayleigh - rayleigh) <= opts.tol * std::max(1.0, std::abs(new_rayleigh));
    rayleigh = new_rayleigh;
    if (small_change) {
      ++st.iters;
      st.converged = true;
      break;
    }
  }

  if (std::isinf(st.min_scaled_discriminant)) st.min_scaled_discriminant = 0.0;
  // Exact feasibility and exit diagnostics from fresh products.
  apply_b(x, bx);
  x /= std::sqrt(x.dot(bx));
  apply_a(x, ax);
  apply_b(x, bx);
  st.rayleigh = x.dot(ax);
  st.residual_norm = (ax - st.rayleigh * bx).norm();
  st.x = std::move(x);
  return st;
}

/// Dense-pair convenience overload.
AscentState leading_gev(const Matrix& a_tilde, const Matrix& b, const Vector& x0,
                        const Vector& precond, const AscentOptions& opts);

}  // namespace sgep::eigensolver
