// Copyright (c) 2026 sgep contributors
// Licensed under Apache 2.0
//
// Exercises the shared-library surface exactly as an external client would.

#include <sgep.h>

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

namespace {

struct Problem {
  sgep_problem* ptr = nullptr;
  ~Problem() { sgep_problem_destroy(ptr); }
};

struct Report {
  sgep_report* ptr = nullptr;
  ~Report() { sgep_report_destroy(ptr); }
};

}  // namespace

TEST_CASE("problem creation and accessors") {
  const double a[4] = {4, 1, 1, 2};
  const double b[4] = {1, 0, 0, 1};
  Problem problem;
  REQUIRE(sgep_problem_create(2, a, b, &problem.ptr) == SGEP_OK);
  CHECK(sgep_problem_dim(problem.ptr) == 2);

  double a_out[4], b_out[4];
  REQUIRE(sgep_problem_get(problem.ptr, a_out, b_out) == SGEP_OK);
  CHECK(a_out[1] == 1.0);
  CHECK(b_out[3] == 1.0);
}

TEST_CASE("asymmetric input is rejected with a message") {
  const double a[4] = {1, 2, 2.1, 1};
  const double b[4] = {1, 0, 0, 1};
  sgep_problem* raw = nullptr;
  CHECK(sgep_problem_create(2, a, b, &raw) == SGEP_ERR_EXCESSIVE_ASYMMETRY);
  CHECK(std::strlen(sgep_last_error()) > 0);
  CHECK(sgep_problem_create(2, nullptr, b, &raw) == SGEP_ERR_NULL_ARGUMENT);
}

TEST_CASE("complex embedding through the C API") {
  // A = [[0, i], [-i, 0]] embeds into the known 4x4 pattern.
  const double a_re[4] = {0, 0, 0, 0};
  const double a_im[4] = {0, 1, -1, 0};
  const double b_re[4] = {1, 0, 0, 1};
  Problem problem;
  REQUIRE(sgep_problem_create_complex(2, a_re, a_im, b_re, nullptr, &problem.ptr) == SGEP_OK);
  CHECK(sgep_problem_dim(problem.ptr) == 4);
  double a_out[16];
  REQUIRE(sgep_problem_get(problem.ptr, a_out, nullptr) == SGEP_OK);
  CHECK(a_out[3] == -1.0);
  CHECK(a_out[6] == 1.0);
  CHECK(a_out[9] == 1.0);
  CHECK(a_out[12] == -1.0);

  const double bad_im[4] = {0.5, 1, -1, 0};
  sgep_problem* raw = nullptr;
  CHECK(sgep_problem_create_complex(2, a_re, bad_im, b_re, nullptr, &raw) ==
        SGEP_ERR_NOT_HERMITIAN);
}

TEST_CASE("solve and report accessors") {
  Problem problem;
  REQUIRE(sgep_gen_planted(100, 7, &problem.ptr, nullptr, nullptr) == SGEP_OK);

  sgep_penalty penalty;
  sgep_penalty_init(&penalty);
  penalty.rho = 0.1;
  sgep_options opts;
  sgep_options_init(&opts);
  CHECK(opts.tol_outer == 1e-5);
  CHECK(opts.max_outer == 1000);
  CHECK(opts.max_inner == 5000);
  CHECK(opts.precond_ratio_threshold == 100.0);

  Report report;
  REQUIRE(sgep_solve(problem.ptr, SGEP_SOLVER_IRQM, &penalty, &opts, nullptr, 3, &report.ptr) ==
          SGEP_OK);
  CHECK(sgep_report_converged(report.ptr) == 1);
  CHECK(sgep_report_dim(report.ptr) == 100);
  CHECK(sgep_report_cardinality(report.ptr) >= 1);
  CHECK(sgep_report_outer_iters(report.ptr) >= 1);
  CHECK(sgep_report_wall_ms(report.ptr) > 0);

  std::vector<double> x(100);
  REQUIRE(sgep_report_get_x(report.ptr, x.data()) == SGEP_OK);
  const long len = sgep_report_trace_len(report.ptr);
  REQUIRE(len == sgep_report_outer_iters(report.ptr) + 1);
  std::vector<double> trace(len);
  REQUIRE(sgep_report_get_trace(report.ptr, trace.data()) == SGEP_OK);
  for (long k = 1; k < len; ++k) CHECK(trace[k] >= trace[k - 1] - 1e-9);
  CHECK(trace[len - 1] == doctest::Approx(sgep_report_objective(report.ptr)));
}

TEST_CASE("explicit feasible and infeasible starts") {
  const double a[4] = {4, 0, 0, 1};
  const double b[4] = {1, 0, 0, 1};
  Problem problem;
  REQUIRE(sgep_problem_create(2, a, b, &problem.ptr) == SGEP_OK);

  sgep_penalty penalty;
  sgep_penalty_init(&penalty);
  penalty.rho = 0.0;

  const double x0[2] = {std::sqrt(0.5), std::sqrt(0.5)};
  Report report;
  REQUIRE(sgep_solve(problem.ptr, SGEP_SOLVER_IRQM, &penalty, nullptr, x0, 0, &report.ptr) ==
          SGEP_OK);
  CHECK(sgep_report_objective(report.ptr) == doctest::Approx(4.0).epsilon(1e-8));

  const double bad[2] = {2.0, 0.0};
  sgep_report* raw = nullptr;
  CHECK(sgep_solve(problem.ptr, SGEP_SOLVER_IRQM, &penalty, nullptr, bad, 0, &raw) ==
        SGEP_ERR_INFEASIBLE_START);
}

TEST_CASE("MM solvers require a diagonal B") {
  const double a[4] = {4, 1, 1, 2};
  const double b[4] = {2, 0.5, 0.5, 1};
  Problem problem;
  REQUIRE(sgep_problem_create(2, a, b, &problem.ptr) == SGEP_OK);
  sgep_penalty penalty;
  sgep_penalty_init(&penalty);
  sgep_report* raw = nullptr;
  CHECK(sgep_solve(problem.ptr, SGEP_SOLVER_MM_L0, &penalty, nullptr, nullptr, 0, &raw) ==
        SGEP_ERR_NOT_DIAGONAL_B);
}

TEST_CASE("MM solver reports the original objective after the PSD shift") {
  // Indefinite A with B = I: the library shifts internally but reports the
  // unshifted objective.
  const double a[4] = {-2, 0, 0, 1};
  const double b[4] = {1, 0, 0, 1};
  Problem problem;
  REQUIRE(sgep_problem_create(2, a, b, &problem.ptr) == SGEP_OK);
  sgep_penalty penalty;
  sgep_penalty_init(&penalty);
  penalty.family = SGEP_FAMILY_LP;
  penalty.p = 1.0;
  penalty.rho = 0.1;
  const double x0[2] = {0.0, 1.0};
  Report report;
  REQUIRE(sgep_solve(problem.ptr, SGEP_SOLVER_MM_L0, &penalty, nullptr, x0, 0, &report.ptr) ==
          SGEP_OK);
  // Optimum is e2: objective 1 - rho * 1.
  CHECK(sgep_report_objective(report.ptr) == doctest::Approx(0.9).epsilon(1e-9));
}

TEST_CASE("generators through the C API") {
  Problem random_pair;
  REQUIRE(sgep_gen_random_pair(25, 11, &random_pair.ptr) == SGEP_OK);
  CHECK(sgep_problem_dim(random_pair.ptr) == 25);

  std::vector<double> v1(100), d(100);
  Problem planted;
  REQUIRE(sgep_gen_planted(100, 5, &planted.ptr, v1.data(), d.data()) == SGEP_OK);
  CHECK(d[0] == 10.0);
  CHECK(d[2] == 12.0);
  CHECK(v1[0] == doctest::Approx(1.0 / std::sqrt(5.0)));
  CHECK(v1[99] == 0.0);

  std::vector<double> c(30 * 40), pc_v1(40);
  REQUIRE(sgep_gen_sparse_pca(40, 30, 3, c.data(), pc_v1.data()) == SGEP_OK);
  CHECK(pc_v1[0] == doctest::Approx(1.0 / std::sqrt(10.0)));

  CHECK(sgep_stream_seed(1, 2) == sgep_stream_seed(1, 2));
  CHECK(sgep_stream_seed(1, 2) != sgep_stream_seed(1, 3));
}

TEST_CASE("file I/O through the C API") {
  const char* path = "/tmp/sgep_capi_io.mtx";
  const double m[6] = {1, 2, 3, 4, 5, 6};
  REQUIRE(sgep_write_mtx(path, 2, 3, m, 0) == SGEP_OK);
  long rows = 0, cols = 0;
  double* data = nullptr;
  REQUIRE(sgep_read_mtx(path, &rows, &cols, &data) == SGEP_OK);
  CHECK(rows == 2);
  CHECK(cols == 3);
  CHECK(data[5] == 6.0);
  sgep_free(data);
  std::remove(path);

  const char* csv_path = "/tmp/sgep_capi_io.csv";
  {
    std::FILE* f = std::fopen(csv_path, "w");
    std::fputs("1,2\n3,4\n", f);
    std::fclose(f);
  }
  double* csv_data = nullptr;
  REQUIRE(sgep_read_csv(csv_path, 0, 0, &rows, &cols, &csv_data) == SGEP_OK);
  CHECK(rows == 2);
  CHECK(csv_data[3] == 4.0);
  sgep_free(csv_data);
  std::remove(csv_path);

  CHECK(sgep_read_mtx("/nonexistent.mtx", &rows, &cols, &data) == SGEP_ERR_IO);
}

TEST_CASE("stationarity gap through the C API") {
  Problem problem;
  REQUIRE(sgep_gen_random_pair(15, 2, &problem.ptr) == SGEP_OK);
  sgep_penalty penalty;
  sgep_penalty_init(&penalty);
  penalty.rho = 0.2;

  Report report;
  REQUIRE(sgep_solve(problem.ptr, SGEP_SOLVER_IRQM, &penalty, nullptr, nullptr, 1,
                     &report.ptr) == SGEP_OK);
  std::vector<double> x(15);
  REQUIRE(sgep_report_get_x(report.ptr, x.data()) == SGEP_OK);

  double gap = -1;
  REQUIRE(sgep_stationarity_gap(problem.ptr, &penalty, -1.0, x.data(), &gap) == SGEP_OK);
  CHECK(gap >= -1e-12);
  CHECK(gap < 1.0);
}

TEST_CASE("status messages") {
  CHECK(std::string(sgep_status_message(SGEP_OK)) == "ok");
  CHECK(std::string(sgep_status_message(SGEP_ERR_NOT_DIAGONAL_B)).find("diagonal") !=
        std::string::npos);
}
