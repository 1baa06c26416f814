// Copyright (c) 2026 sgep contributors
// Licensed under Apache 2.0

#include "sgep/surrogate.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

using namespace sgep;
namespace sg = sgep::surrogate;

namespace {

// (family, p) pairs spanning the configured ranges.
std::vector<std::pair<Family, double>> param_grid() {
  return {{Family::Lp, 1.0},  {Family::Lp, 0.5},  {Family::Lp, 0.1},
          {Family::Log, 1.0}, {Family::Log, 0.3}, {Family::Log, 5.0},
          {Family::Exp, 1.0}, {Family::Exp, 0.2}, {Family::Exp, 3.0}};
}

}  // namespace

TEST_CASE("raw surrogate values") {
  CHECK(sg::eval(Family::Lp, 0.5, 4.0) == doctest::Approx(2.0).epsilon(1e-14));
  for (double p : {0.2, 1.0, 7.0})
    CHECK(sg::eval(Family::Log, p, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sg::eval(Family::Exp, 0.2, 1.0) == doctest::Approx(-std::expm1(-5.0)).epsilon(1e-14));

  for (auto [family, p] : param_grid()) {
    CHECK(sg::eval(family, p, 0.0) == 0.0);
    double prev = 0.0;
    // Strict growth checked below the exp family's saturation range.
    for (double x = 0.125; x < 6; x += 0.125) {
      CHECK(sg::eval(family, p, x) == sg::eval(family, p, -x));
      const double value = sg::eval(family, p, x);
      CHECK(value > prev);
      prev = value;
    }
  }
}

TEST_CASE("smoothed surrogate branches agree at the boundary") {
  // Closed form at |x| = eps for Lp: both branches give (p/2) eps^p.
  const double eps = 0.05;
  CHECK(sg::eval_smoothed(Family::Lp, 0.5, eps, 0.05) ==
        doctest::Approx(0.25 * std::pow(0.05, 0.5)).epsilon(1e-14));
  CHECK(sg::eval_smoothed(Family::Lp, 0.5, eps, 1.0) ==
        doctest::Approx(1.0 - 0.75 * std::sqrt(0.05)).epsilon(1e-14));

  for (auto [family, p] : param_grid()) {
    for (double e : {1e-8, 1e-4, 0.05, 0.5}) {
      CHECK(sg::eval_smoothed(family, p, e, 0.0) == 0.0);
      // Quadratic branch at x = e equals the outer-branch limit.
      const double quad = 0.5 * sg::deriv(family, p, e) * e;
      const double outer_limit = 0.5 * sg::deriv(family, p, e) * e;
      CHECK(quad == doctest::Approx(outer_limit));
      CHECK(sg::eval_smoothed(family, p, e, 2 * e) == sg::eval_smoothed(family, p, e, -2 * e));
      const double just_out = std::nextafter(e, 1e300);
      CHECK(sg::eval_smoothed(family, p, e, just_out) ==
            doctest::Approx(sg::eval_smoothed(family, p, e, e)).epsilon(1e-9));
    }
  }
}

TEST_CASE("sandwich bounds of the smoothing") {
  for (auto [family, p] : param_grid()) {
    for (double eps : {1e-6, 1e-3, 0.1}) {
      const double slack = sg::eval(family, p, eps) - 0.5 * sg::deriv(family, p, eps) * eps;
      CHECK(slack >= -1e-15);
      for (double x = -3.0; x <= 3.0; x += 0.01) {
        const double smooth = sg::eval_smoothed(family, p, eps, x);
        const double raw = sg::eval(family, p, x);
        CHECK(smooth <= raw + 1e-12);
        CHECK(raw <= smooth + slack + 1e-12);
      }
    }
  }
}

TEST_CASE("smoothed gradient matches central differences") {
  // At |x| = eps the second derivative jumps, so the central-difference
  // error is O(h * |jump|); h = 2e-9 keeps it below 1e-6 for p >= 0.3.
  for (auto [family, p] : param_grid()) {
    if (p < 0.3) continue;
    const double eps = 0.01;
    const double h = 2e-9;
    for (double x : {0.0, eps, -eps, 0.5 * eps, 2 * eps, 0.3, -1.7}) {
      const double fd = (sg::eval_smoothed(family, p, eps, x + h) -
                         sg::eval_smoothed(family, p, eps, x - h)) /
                        (2 * h);
      CHECK(std::abs(sg::smoothed_deriv(family, p, eps, x) - fd) <= 1e-6);
    }
  }
}

TEST_CASE("majorization weights") {
  CHECK(sg::weight(Family::Lp, 0.5, 0.01, 2.0) ==
        doctest::Approx(0.25 * std::pow(2.0, -1.5)).epsilon(1e-14));
  CHECK(sg::weight(Family::Lp, 1.0, 0.1, 0.0) == doctest::Approx(5.0).epsilon(1e-14));

  // Branch continuity at |x_k| = eps, positivity, monotone decay beyond.
  for (auto [family, p] : param_grid()) {
    for (double eps : {1e-6, 0.01, 0.2}) {
      const double inner = sg::weight(family, p, eps, eps);
      const double outer = 0.5 * sg::deriv(family, p, eps) / eps;
      CHECK(inner == doctest::Approx(outer).epsilon(1e-12));

      double prev = inner;
      CHECK(prev > 0);
      for (double t = eps; t < 10; t *= 1.37) {
        const double w = sg::weight(family, p, eps, t);
        CHECK(w > 0);
        CHECK(w <= prev * (1 + 1e-12));
        prev = w;
      }
    }
  }
}

TEST_CASE("quadratic majorizer touches and dominates") {
  // Spec'd value at Lp p=0.5, eps=1e-8, x_k=2, x=1. The smoothing offsets
  // cancel in the gap, leaving the raw-majorizer number.
  const double w = 0.25 * std::pow(2.0, -1.5);
  const double gap_expected = w + 0.75 * std::sqrt(2.0) - 1.0;  // 0.14904851942...
  CHECK(sg::majorizer_gap(Family::Lp, 0.5, 1e-8, 2.0, 1.0) ==
        doctest::Approx(gap_expected).epsilon(1e-10));

  for (auto [family, p] : param_grid()) {
    for (double eps : {1e-8, 1e-3, 0.1}) {
      for (double xk : {0.0, 0.3 * eps, 2.0, -0.7}) {
        CHECK(std::abs(sg::majorizer_gap(family, p, eps, xk, xk)) <= 1e-12);
        for (double x = -10; x <= 10; x += 0.05)
          CHECK(sg::majorizer_gap(family, p, eps, xk, x) >= -1e-12);
      }
    }
  }
}

TEST_CASE("Lipschitz constant of the smoothed gradient") {
  CHECK(sg::lipschitz_constant(Family::Lp, 1.0, 0.01) == doctest::Approx(100.0).epsilon(1e-14));
  CHECK(sg::lipschitz_constant(Family::Lp, 0.5, 1.0) == doctest::Approx(0.5).epsilon(1e-14));

  // Finite-difference slopes of the gradient never exceed L.
  for (auto [family, p] : param_grid()) {
    const double eps = 0.05;
    const double lipschitz = sg::lipschitz_constant(family, p, eps);
    const double h = 1e-6;
    for (double x = -2.0; x <= 2.0; x += 0.001) {
      const double slope = std::abs(sg::smoothed_deriv(family, p, eps, x + h) -
                                    sg::smoothed_deriv(family, p, eps, x)) /
                           h;
      CHECK(slope <= lipschitz * (1 + 1e-6) + 1e-9);
    }
  }
}

TEST_CASE("suboptimality bound") {
  CHECK(sg::suboptimality_bound(Family::Lp, 1.0, 1e-4, 1.0, 10) ==
        doctest::Approx(5e-4).epsilon(1e-14));
  CHECK(sg::suboptimality_bound(Family::Lp, 0.5, 1e-4, 0.1, 100) ==
        doctest::Approx(0.075).epsilon(1e-12));

  for (auto [family, p] : param_grid()) {
    double prev = std::numeric_limits<double>::infinity();
    for (double eps : {1e-2, 1e-4, 1e-6}) {
      const double bound = sg::suboptimality_bound(family, p, eps, 0.7, 13);
      CHECK(bound >= 0);
      CHECK(bound < prev);
      prev = bound;
    }
  }
}

TEST_CASE("penalty vector ops match scalar evaluations") {
  PenaltyConfig penalty(Family::Log, 0.3, 0.5, 1e-3);

  auto at_zero = sg::penalty_vector_ops(penalty, Vector::Zero(4));
  CHECK(at_zero.value == 0.0);
  const double inner_weight = sg::weight(penalty.family, penalty.p, penalty.epsilon, 0.0);
  for (int i = 0; i < 4; ++i) CHECK(at_zero.weights[i] == inner_weight);

  Vector single(1);
  single << -0.77;
  auto one = sg::penalty_vector_ops(penalty, single);
  CHECK(one.value == sg::eval_smoothed(penalty.family, penalty.p, penalty.epsilon, -0.77));
  CHECK(one.weights[0] == sg::weight(penalty.family, penalty.p, penalty.epsilon, -0.77));

  Vector x(5);
  x << 0.3, -1.2, 0.0, 4.5, -0.0007;
  auto batch = sg::penalty_vector_ops(penalty, x);
  double sum = 0;
  for (int i = 0; i < 5; ++i) {
    sum += sg::eval_smoothed(penalty.family, penalty.p, penalty.epsilon, x[i]);
    CHECK(batch.weights[i] == sg::weight(penalty.family, penalty.p, penalty.epsilon, x[i]));
  }
  CHECK(batch.value == doctest::Approx(sum).epsilon(1e-14));
  CHECK(sg::penalty_value(penalty, x) == doctest::Approx(sum).epsilon(1e-14));
}

TEST_CASE("majorizer offset reproduces eval_at") {
  PenaltyConfig penalty(Family::Exp, 0.2, 1.0, 1e-2);
  for (double xk : {0.0, 0.004, 0.3, -2.0}) {
    auto eval = sg::eval_at(penalty, xk);
    CHECK(eval.value == sg::eval_smoothed(penalty.family, penalty.p, penalty.epsilon, xk));
    CHECK(eval.weight == sg::weight(penalty.family, penalty.p, penalty.epsilon, xk));
    // u(xk) = w xk^2 + c equals the smoothed value at the touch point.
    CHECK(eval.weight * xk * xk + eval.offset == doctest::Approx(eval.value).epsilon(1e-12));
  }
}
