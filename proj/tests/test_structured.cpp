// Copyright (c) 2026 sgep contributors
// Licensed under Apache 2.0

#include "sgep/structured.hpp"

#include "oracles.hpp"
#include "sgep/surrogate.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace sgep;

namespace {

double qcqp_objective(const Vector& a, const Vector& w, double rho, const Vector& x) {
  return 2.0 * a.dot(x) - rho * (w.array() * x.array().square()).sum();
}

// KKT residual ||(mu Diag(b) + rho Diag(w))x - a|| with mu recovered from
// the strongest coordinate.
double kkt_residual(const Vector& a, const Vector& w, const Vector& b, double rho,
                    const Vector& x) {
  // mu solves (mu b_i + rho w_i) x_i = a_i at the largest |x_i|.
  Eigen::Index imax;
  x.cwiseAbs().maxCoeff(&imax);
  const double mu = (a[imax] / x[imax] - rho * w[imax]) / b[imax];
  Vector residual = (mu * b.array() * x.array() + rho * w.array() * x.array() - a.array());
  return residual.norm();
}

}  // namespace

TEST_CASE("diag QCQP: one dimensional") {
  Vector a(1), w(1), b(1);
  a << -3.0;
  w << 2.0;
  b << 4.0;
  Vector x = solve_diag_qcqp(a, w, b, 1.0);
  CHECK(x[0] == doctest::Approx(-0.5).epsilon(1e-12));  // sgn(a)/sqrt(b)
}

TEST_CASE("diag QCQP: symmetric two dimensional") {
  Vector a(2), w(2), b(2);
  a << 1, 1;
  w << 1, 1;
  b << 1, 1;
  Vector x = solve_diag_qcqp(a, w, b, 1.0);
  // mu = sqrt(2) - 1, x = (1/sqrt 2, 1/sqrt 2).
  CHECK(x[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-10));
  CHECK(x[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-10));
}

TEST_CASE("diag QCQP: boundary case places mass on max index of I_min") {
  Vector a(2), w(2), b(2);
  a << 0, 1;
  w << 1, 2;
  b << 1, 1;
  Vector x = solve_diag_qcqp(a, w, b, 1.0);
  CHECK(x[0] == doctest::Approx(0.0).scale(1));
  CHECK(x[1] == doctest::Approx(1.0).epsilon(1e-12));

  // Brute-force check on the circle that (0, 1) is optimal.
  double best = -1e300;
  for (double theta = 0; theta < 2 * M_PI; theta += 1e-4) {
    Vector candidate(2);
    candidate << std::cos(theta), std::sin(theta);
    best = std::max(best, qcqp_objective(a, w, 1.0, candidate));
  }
  CHECK(qcqp_objective(a, w, 1.0, x) >= best - 1e-7);

  // Ties in I_min: the free coordinate goes to the largest index.
  Vector a3(3), w3(3), b3(3);
  a3 << 0, 0, 1;
  w3 << 1, 1, 2;
  b3 << 1, 1, 1;
  Vector x3 = solve_diag_qcqp(a3, w3, b3, 1.0);
  CHECK(x3[0] == 0.0);
  CHECK(x3[1] == doctest::Approx(0.0).scale(1));
  CHECK(x3[2] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("diag QCQP: random oracle suite") {
  auto gen = oracle::rng(37);
  std::uniform_int_distribution<int> dim(1, 6);
  std::uniform_real_distribution<double> unit(0.05, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = dim(gen);
    Vector a = oracle::random_vector(n, gen);
    if (trial % 7 == 0) a[trial % n] = 0.0;
    Vector w(n), b(n);
    for (int i = 0; i < n; ++i) {
      w[i] = unit(gen);
      b[i] = unit(gen);
    }
    const double rho = unit(gen);

    Vector x = solve_diag_qcqp(a, w, b, rho);
    CHECK(std::abs((b.array() * x.array().square()).sum() - 1.0) <= 1e-10);
    CHECK(kkt_residual(a, w, b, rho, x) <= 1e-8 * std::max(a.norm(), 1e-8));

    const double value = qcqp_objective(a, w, rho, x);
    for (int sample = 0; sample < 2000; ++sample) {
      Vector y = oracle::random_vector(n, gen);
      y /= std::sqrt((b.array() * y.array().square()).sum());
      CHECK(value >= qcqp_objective(a, w, rho, y) - 1e-8);
    }
  }
}

TEST_CASE("diag QCQP: rho = 0 reduces to the scaled direction") {
  Vector a(3), w(3), b(3);
  a << 1, -2, 0.5;
  w << 1, 1, 1;
  b << 1, 4, 0.25;
  Vector x = solve_diag_qcqp(a, w, b, 0.0);
  // max 2a'x on the ellipsoid: x = Diag(b)^{-1} a / sqrt(a' Diag(b)^{-1} a).
  Vector expected = (a.array() / b.array()).matrix();
  expected /= std::sqrt((b.array() * expected.array().square()).sum());
  CHECK((x - expected).norm() <= 1e-10);
}

TEST_CASE("l0 sphere: spec examples") {
  Vector a(2);
  a << 0.5, 0.2;
  Vector x = solve_l0_sphere(a, 1.0);
  CHECK(x[0] == 1.0);
  CHECK(x[1] == 0.0);

  Vector a2(3);
  a2 << 2, 0, 0;
  Vector x2 = solve_l0_sphere(a2, 1.0);
  CHECK(x2[0] == 1.0);
  CHECK(x2[1] == 0.0);
  CHECK(x2[2] == 0.0);

  Vector a3(3);
  a3 << 3, 2, 1;
  Vector x3 = solve_l0_sphere(a3, 0.5);
  CHECK(x3[0] == doctest::Approx(3.0 / std::sqrt(13.0)).epsilon(1e-14));
  CHECK(x3[1] == doctest::Approx(2.0 / std::sqrt(13.0)).epsilon(1e-14));
  CHECK(x3[2] == 0.0);
}

TEST_CASE("l0 sphere: tie break and zero input") {
  Vector zero = Vector::Zero(3);
  Vector x = solve_l0_sphere(zero, 0.5);
  CHECK(x[0] == 1.0);  // sgn(0) mapped to +1, lowest index wins ties
  CHECK(x.norm() == 1.0);

  Vector ties(4);
  ties << -2, 2, 2, 1;  // stable sort keeps index 0 first
  Vector xt = solve_l0_sphere(ties, 10.0);
  CHECK(xt[0] == -1.0);
}

TEST_CASE("l0 sphere: support enumeration oracle") {
  auto gen = oracle::rng(41);
  std::uniform_int_distribution<int> dim(1, 8);
  std::uniform_real_distribution<double> rho_draw(0.05, 3.0);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = dim(gen);
    Vector a = oracle::random_vector(n, gen);
    const double rho = rho_draw(gen);
    Vector x = solve_l0_sphere(a, rho);
    CHECK(std::abs(x.norm() - 1.0) <= 1e-12);
    int nnz = 0;
    for (int i = 0; i < n; ++i)
      if (x[i] != 0.0) ++nnz;
    const double value = a.dot(x) - rho * nnz;
    CHECK(std::abs(value - oracle::l0_sphere_brute_force(a, rho)) <= 1e-10);
  }
}

TEST_CASE("mm_diag_surrogate: rho -> 0 recovers the plain eigenvector") {
  auto gen = oracle::rng(43);
  Matrix r = oracle::random_matrix(12, 12, gen);
  Matrix a = r.transpose() * r;  // PSD
  Vector b = oracle::random_vector(12, gen).cwiseAbs() + Vector::Constant(12, 0.5);
  auto problem = DiagonalProblem::make(a, b);

  Vector x0 = oracle::random_vector(12, gen);
  x0 /= std::sqrt((b.array() * x0.array().square()).sum());
  PenaltyConfig penalty(Family::Lp, 1.0, 1e-12, 1e-8);
  SolverConfig config;
  config.tol_outer = 1e-12;
  auto report = mm_diag_surrogate(problem, penalty, config, x0);

  Matrix b_dense = Matrix(b.asDiagonal());
  const double reference = oracle::leading_gen_eigenvalue(a, b_dense);
  CHECK(report.objective == doctest::Approx(reference).epsilon(1e-6));
}

TEST_CASE("mm_diag_surrogate: two-dimensional brute force") {
  Matrix a(2, 2);
  a.setZero();
  a.diagonal() << 4, 1;
  Vector b = Vector::Ones(2);
  auto problem = DiagonalProblem::make(a, b);
  PenaltyConfig penalty(Family::Lp, 1.0, 0.5, 1e-8);
  SolverConfig config;

  auto gen = oracle::rng(47);
  Vector x0 = oracle::random_feasible(Matrix::Identity(2, 2), gen);
  auto report = mm_diag_surrogate(problem, penalty, config, x0);
  CHECK(std::abs(report.x[0]) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(std::abs(report.x[1]) <= 1e-6);

  double best = -1e300;
  for (double theta = 0; theta < 2 * M_PI; theta += 1e-5) {
    Vector candidate(2);
    candidate << std::cos(theta), std::sin(theta);
    best = std::max(best,
                    candidate.dot(a * candidate) -
                        penalty.rho * surrogate::penalty_value(penalty, candidate));
  }
  CHECK(report.objective >= best - 1e-8);
}

TEST_CASE("mm_diag_surrogate: ascent on random PSD instances") {
  auto gen = oracle::rng(53);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 15;
    Matrix r = oracle::random_matrix(n, n, gen);
    Matrix a = r.transpose() * r;
    Vector b = oracle::random_vector(n, gen).cwiseAbs() + Vector::Constant(n, 0.3);
    auto problem = DiagonalProblem::make(a, b);
    Vector x0 = oracle::random_vector(n, gen);
    x0 /= std::sqrt((b.array() * x0.array().square()).sum());
    PenaltyConfig penalty(trial % 2 ? Family::Log : Family::Exp, 0.5, 0.8, 1e-6);
    SolverConfig config;
    auto report = mm_diag_surrogate(problem, penalty, config, x0);
    CHECK(report.max_ascent_violation <= 1e-9);
    for (std::size_t k = 1; k < report.objective_trace.size(); ++k)
      CHECK(report.objective_trace[k] >= report.objective_trace[k - 1] - 1e-9);
  }
}

TEST_CASE("mm_diag_l0: sparse PCA toy") {
  Matrix a(3, 3);
  a.setZero();
  a.diagonal() << 9, 1, 1;
  auto problem = DiagonalProblem::make(a, Vector::Ones(3));
  SolverConfig config;
  auto gen = oracle::rng(59);
  Vector x0 = oracle::random_feasible(Matrix::Identity(3, 3), gen);
  auto report = mm_diag_l0(problem, 1.0, config, x0);
  CHECK(std::abs(report.x[0]) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(report.objective == doctest::Approx(8.0).epsilon(1e-12));
  // Support enumeration: value 9 - 1 = 8 beats any 2- or 3-sparse support.
}

TEST_CASE("mm_diag_l0: huge rho collapses to one coordinate") {
  auto gen = oracle::rng(61);
  Matrix r = oracle::random_matrix(6, 6, gen);
  Matrix a = 0.05 * (r.transpose() * r);
  auto problem = DiagonalProblem::make(a, Vector::Ones(6));
  const double rho = 2.5 * oracle::min_eigenvalue(-a) * -1.0 + 1.0;  // > 2 lambda_max
  SolverConfig config;
  Vector x0 = oracle::random_feasible(Matrix::Identity(6, 6), gen);
  auto report = mm_diag_l0(problem, rho, config, x0);
  int nnz = 0;
  for (int i = 0; i < 6; ++i)
    if (report.x[i] != 0.0) ++nnz;
  CHECK(nnz == 1);
}

TEST_CASE("mm_diag_l0: whitening invariance") {
  auto gen = oracle::rng(67);
  const int n = 8;
  Matrix r = oracle::random_matrix(n, n, gen);
  Matrix a = r.transpose() * r;
  Vector b = oracle::random_vector(n, gen).cwiseAbs() + Vector::Constant(n, 0.4);
  Vector x0 = oracle::random_vector(n, gen);
  x0 /= std::sqrt((b.array() * x0.array().square()).sum());

  SolverConfig config;
  auto direct = mm_diag_l0(DiagonalProblem::make(a, b), 0.3, config, x0);

  // Pre-whitened problem (At, ones) started at the transformed point.
  Vector b_sqrt = b.array().sqrt();
  Matrix a_tilde = b_sqrt.cwiseInverse().asDiagonal() * a *
                   b_sqrt.cwiseInverse().asDiagonal();
  Vector x0_t = (b_sqrt.array() * x0.array()).matrix();
  auto whitened = mm_diag_l0(DiagonalProblem::make(a_tilde, Vector::Ones(n)), 0.3, config, x0_t);

  Vector pulled_back = (whitened.x.array() / b_sqrt.array()).matrix();
  CHECK((direct.x - pulled_back).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(direct.objective == doctest::Approx(whitened.objective).epsilon(1e-12));
}

TEST_CASE("mm_diag_l0: exact objective is monotone") {
  auto gen = oracle::rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 12;
    Matrix r = oracle::random_matrix(n, n, gen);
    Matrix a = r.transpose() * r;
    Vector b = oracle::random_vector(n, gen).cwiseAbs() + Vector::Constant(n, 0.2);
    auto problem = DiagonalProblem::make(a, b);
    Vector x0 = oracle::random_vector(n, gen);
    x0 /= std::sqrt((b.array() * x0.array().square()).sum());
    SolverConfig config;
    auto report = mm_diag_l0(problem, 0.5 + 0.2 * trial, config, x0);
    CHECK(report.max_ascent_violation <= 1e-9);
  }
}

TEST_CASE("make_shifted delivers a PSD matrix and records alpha") {
  auto gen = oracle::rng(73);
  Matrix r = oracle::random_matrix(9, 9, gen);
  Matrix a = r + Matrix(r.transpose());  // indefinite
  Vector b = oracle::random_vector(9, gen).cwiseAbs() + Vector::Constant(9, 0.5);
  double alpha = -1;
  auto problem = DiagonalProblem::make_shifted(a, b, &alpha);
  CHECK(alpha >= 0);
  CHECK(oracle::min_eigenvalue(problem.a) >= -1e-10);
}

TEST_CASE("structured error paths") {
  Vector a(2), w(2), b(2);
  a << 1, 1;
  w << 1, -1;
  b << 1, 1;
  CHECK_THROWS_AS(solve_diag_qcqp(a, w, b, 1.0), Error);
  w << 1, 1;
  b << 1, 0;
  CHECK_THROWS_AS(solve_diag_qcqp(a, w, b, 1.0), Error);

  auto problem = DiagonalProblem::make(Matrix::Identity(3, 3), Vector::Ones(3));
  SolverConfig config;
  Vector bad_x0 = Vector::Ones(3);  // b-norm sqrt(3) != 1
  CHECK_THROWS_AS(mm_diag_l0(problem, 0.5, config, bad_x0), Error);
  CHECK_THROWS_AS(
      mm_diag_surrogate(problem, PenaltyConfig(Family::Log, 1, 0.5, 1e-8), config, bad_x0),
      Error);
}
